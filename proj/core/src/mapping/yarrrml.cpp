#include <yaml-cpp/yaml.h>

#include <algorithm>

#include "chadkg/mapping/mapping.hpp"

namespace chadkg::mapping {

namespace {

// Expand a value that names an IRI: a registered CURIE or an absolute IRI.
rdf::Iri expand_iri(const std::string& text, const rdf::NamespaceTable& ns) {
    if (ns.can_expand(text)) return ns.expand(text);
    return rdf::Iri(text);
}

bool has_placeholder(const std::string& text) {
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == '$') {
            ++i;
            continue;
        }
        if (text[i] == '$' && i + 1 < text.size() && text[i + 1] == '(') return true;
    }
    return false;
}

// A string value becomes a column ref ($(col) alone), a template (embedded
// placeholders) or a constant.
SimpleSpec classify_string(const std::string& text) {
    if (!has_placeholder(text)) return Constant{text};
    auto cols = extract_placeholders(text);
    if (cols.size() == 1 && text == "$(" + cols[0] + ")") return ColumnRef{cols[0]};
    return Template{text, std::move(cols)};
}

class DocumentBuilder {
public:
    explicit DocumentBuilder(const YAML::Node& root) : root_(root) {}

    MappingDocument build() {
        if (!root_.IsMap()) throw MappingError("mapping document must be a YAML map");
        doc_.prefixes = rdf::NamespaceTable::builtins();
        for (const auto& entry : root_) {
            std::string key = entry.first.as<std::string>();
            if (key != "prefixes" && key != "sources" && key != "mappings")
                throw MappingError("unknown top-level key: " + key);
        }
        if (root_["prefixes"]) read_prefixes(root_["prefixes"]);
        if (root_["sources"]) read_sources(root_["sources"]);
        if (!root_["mappings"]) throw MappingError("document has no 'mappings' section");
        read_mappings(root_["mappings"]);
        check_invariants();
        return std::move(doc_);
    }

private:
    void read_prefixes(const YAML::Node& node) {
        if (!node.IsMap()) throw MappingError("'prefixes' must be a map");
        for (const auto& entry : node)
            doc_.prefixes.bind(entry.first.as<std::string>(), entry.second.as<std::string>());
    }

    void read_sources(const YAML::Node& node) {
        if (!node.IsMap()) throw MappingError("'sources' must be a map of named sources");
        for (const auto& entry : node) {
            SourceDecl src;
            src.id = entry.first.as<std::string>();
            const YAML::Node& body = entry.second;
            if (body.IsMap()) {
                if (body["access"]) src.path = body["access"].as<std::string>();
                else if (body["path"]) src.path = body["path"].as<std::string>();
                else throw MappingError("source '" + src.id + "' has no access/path");
                if (body["referenceFormulation"]) {
                    std::string rf = body["referenceFormulation"].as<std::string>();
                    if (rf != "csv")
                        throw MappingError("source '" + src.id + "': only csv sources are supported");
                }
            } else if (body.IsScalar()) {
                std::string v = body.as<std::string>();
                // shorthand "file.csv~csv"
                size_t tilde = v.rfind("~csv");
                src.path = tilde == std::string::npos ? v : v.substr(0, tilde);
            } else {
                throw MappingError("source '" + src.id + "' must be a map or string");
            }
            doc_.sources.push_back(std::move(src));
        }
    }

    void read_mappings(const YAML::Node& node) {
        if (!node.IsMap() || node.size() == 0)
            throw MappingError("'mappings' must be a non-empty map");
        for (const auto& entry : node) {
            TriplesMap map;
            map.id = entry.first.as<std::string>();
            const YAML::Node& body = entry.second;
            if (!body.IsMap()) throw MappingError("mapping '" + map.id + "' must be a map");

            const YAML::Node sources = body["sources"] ? body["sources"] : body["source"];
            if (sources) {
                if (sources.IsScalar()) map.source = sources.as<std::string>();
                else if (sources.IsSequence() && sources.size() >= 1)
                    map.source = sources[0].as<std::string>();
                else throw MappingError("mapping '" + map.id + "': malformed sources");
            } else if (doc_.sources.size() == 1) {
                map.source = doc_.sources[0].id;
            } else {
                throw MappingError("mapping '" + map.id + "' names no source");
            }

            const YAML::Node subject = body["s"] ? body["s"] : body["subjects"];
            if (!subject) throw MappingError("mapping '" + map.id + "' has no subject ('s')");
            map.subject = read_value_spec(subject, map.id + "/s", true);

            if (const YAML::Node po = body["po"]) {
                if (!po.IsSequence())
                    throw MappingError("mapping '" + map.id + "': 'po' must be a sequence");
                size_t idx = 0;
                for (const auto& po_node : po) read_po(map, po_node, idx++);
            }
            for (const auto& sub : body) {
                std::string key = sub.first.as<std::string>();
                if (key != "s" && key != "subjects" && key != "sources" && key != "source" &&
                    key != "po")
                    throw MappingError("mapping '" + map.id + "': unsupported key '" + key + "'");
            }
            doc_.maps.push_back(std::move(map));
        }
    }

    // po entry: [pred, obj], [pred, obj, tag~lang], or the long form with
    // predicates/objects keys.
    void read_po(TriplesMap& map, const YAML::Node& node, size_t idx) {
        std::string rule_id = map.id + "/po" + std::to_string(idx);
        if (node.IsSequence()) {
            if (node.size() < 2 || node.size() > 3)
                throw MappingError(rule_id + ": shorthand po needs 2 or 3 elements");
            std::string pred = node[0].as<std::string>();
            std::string obj = node[1].as<std::string>();
            if (pred == "a" || pred == "rdf:type") {
                if (has_placeholder(obj))
                    throw MappingError(rule_id + ": class must be a constant IRI");
                map.classes.push_back(expand_iri(obj, doc_.prefixes));
                return;
            }
            bool iri_kind = false;
            if (obj.size() >= 4 && obj.ends_with("~iri")) {
                obj.resize(obj.size() - 4);
                iri_kind = true;
            }
            PredicateObjectRule rule{.id = rule_id,
                                     .predicate = expand_iri(pred, doc_.prefixes)};
            rule.kind = iri_kind ? ObjectKind::iri : ObjectKind::literal;
            rule.object = to_value_spec(classify_string(obj), iri_kind);
            if (node.size() == 3) {
                std::string third = node[2].as<std::string>();
                if (third.ends_with("~lang")) {
                    rule.lang = third.substr(0, third.size() - 5);
                } else {
                    rule.datatype = expand_iri(third, doc_.prefixes);
                }
                if (iri_kind)
                    throw MappingError(rule_id + ": lang/datatype apply to literals only");
            }
            map.po.push_back(std::move(rule));
            return;
        }
        if (!node.IsMap()) throw MappingError(rule_id + ": po entry must be list or map");

        const YAML::Node preds = node["predicates"] ? node["predicates"] : node["p"];
        const YAML::Node objs = node["objects"] ? node["objects"] : node["o"];
        if (!preds || !objs) throw MappingError(rule_id + ": needs predicates and objects");
        std::string pred = preds.as<std::string>();
        if (pred == "a" || pred == "rdf:type") {
            std::string obj = objs.as<std::string>();
            map.classes.push_back(expand_iri(obj, doc_.prefixes));
            return;
        }

        PredicateObjectRule rule{.id = rule_id, .predicate = expand_iri(pred, doc_.prefixes)};

        YAML::Node obj_node = objs;
        if (objs.IsSequence()) {
            if (objs.size() != 1)
                throw MappingError(rule_id + ": exactly one object per rule in this subset");
            obj_node = objs[0];
        }
        if (obj_node.IsMap() && obj_node["function"]) {
            rule.object = read_function(obj_node, rule_id);
            read_literal_qualifiers(rule, obj_node, rule_id);
        } else if (obj_node.IsMap() && obj_node["value"]) {
            std::string v = obj_node["value"].as<std::string>();
            bool iri_kind = false;
            if (obj_node["type"]) {
                std::string t = obj_node["type"].as<std::string>();
                if (t == "iri") iri_kind = true;
                else if (t != "literal")
                    throw MappingError(rule_id + ": type must be iri or literal");
            }
            rule.kind = iri_kind ? ObjectKind::iri : ObjectKind::literal;
            rule.object = to_value_spec(classify_string(v), iri_kind);
            read_literal_qualifiers(rule, obj_node, rule_id);
        } else if (obj_node.IsScalar()) {
            std::string v = obj_node.as<std::string>();
            bool iri_kind = false;
            if (v.size() >= 4 && v.ends_with("~iri")) {
                v.resize(v.size() - 4);
                iri_kind = true;
            }
            rule.kind = iri_kind ? ObjectKind::iri : ObjectKind::literal;
            rule.object = to_value_spec(classify_string(v), iri_kind);
        } else {
            throw MappingError(rule_id + ": malformed objects entry");
        }
        map.po.push_back(std::move(rule));
    }

    void read_literal_qualifiers(PredicateObjectRule& rule, const YAML::Node& node,
                                 const std::string& rule_id) {
        const YAML::Node lang = node["language"];
        const YAML::Node dt = node["datatype"];
        if (lang && dt) throw MappingError(rule_id + ": language and datatype are exclusive");
        if (lang) {
            if (lang.IsMap() && lang["function"]) {
                rule.lang = read_function(lang, rule_id + "/language");
            } else {
                rule.lang = lang.as<std::string>();
            }
        }
        if (dt) rule.datatype = expand_iri(dt.as<std::string>(), doc_.prefixes);
        if ((lang || dt) && rule.kind == ObjectKind::iri)
            throw MappingError(rule_id + ": lang/datatype apply to literals only");
    }

    FunctionCall read_function(const YAML::Node& node, const std::string& where) {
        FunctionCall fc;
        fc.name = node["function"].as<std::string>();
        const YAML::Node params = node["parameters"];
        if (params) {
            if (!params.IsSequence())
                throw MappingError(where + ": parameters must be a sequence");
            for (const auto& p : params) {
                std::string pname;
                std::string pvalue;
                if (p.IsSequence() && p.size() == 2) {
                    pname = p[0].as<std::string>();
                    pvalue = p[1].as<std::string>();
                } else if (p.IsMap() && p["parameter"] && p["value"]) {
                    pname = p["parameter"].as<std::string>();
                    pvalue = p["value"].as<std::string>();
                } else {
                    throw MappingError(where + ": malformed parameter entry");
                }
                SimpleSpec spec = classify_string(pvalue);
                if (const auto* c = std::get_if<Constant>(&spec)) {
                    // CURIE-style constants (IRI bases like ex:person/) expand here;
                    // plain strings and file paths pass through untouched
                    if (doc_.prefixes.can_expand(c->text))
                        spec = Constant{doc_.prefixes.expand(c->text).str()};
                }
                fc.params.emplace(std::move(pname), std::move(spec));
            }
        }
        return fc;
    }

    // Subject and iri-kind objects given as strings: expand a leading CURIE
    // prefix so templates like `ex:item/$(id)` work.
    ValueSpec to_value_spec(SimpleSpec spec, bool iri_kind) {
        if (!iri_kind) return std::visit([](auto&& v) -> ValueSpec { return v; }, spec);
        if (auto* c = std::get_if<Constant>(&spec)) {
            if (doc_.prefixes.can_expand(c->text))
                return Constant{doc_.prefixes.expand(c->text).str()};
            return *c;
        }
        if (auto* t = std::get_if<Template>(&spec)) {
            size_t colon = t->text.find(':');
            size_t dollar = t->text.find('$');
            if (colon != std::string::npos && (dollar == std::string::npos || colon < dollar)) {
                std::string prefix = t->text.substr(0, colon);
                if (auto ns = doc_.prefixes.find(prefix)) {
                    t->text = *ns + t->text.substr(colon + 1);
                }
            }
            return *t;
        }
        return std::visit([](auto&& v) -> ValueSpec { return v; }, spec);
    }

    ValueSpec read_value_spec(const YAML::Node& node, const std::string& where, bool iri_kind) {
        if (node.IsMap() && node["function"]) return read_function(node, where);
        if (node.IsScalar()) return to_value_spec(classify_string(node.as<std::string>()), iri_kind);
        throw MappingError(where + ": expected string or function block");
    }

    void check_invariants() {
        std::set<std::string> source_ids;
        for (const auto& s : doc_.sources) {
            if (!source_ids.insert(s.id).second)
                throw MappingError("duplicate source id: " + s.id);
        }
        std::set<std::string> map_ids;
        for (const auto& m : doc_.maps) {
            if (!map_ids.insert(m.id).second)
                throw MappingError("duplicate mapping id: " + m.id);
            if (!source_ids.contains(m.source))
                throw MappingError("mapping '" + m.id + "' references unknown source '" +
                                   m.source + "'");
            for (const auto& rule : m.po) {
                if (rule.kind == ObjectKind::iri &&
                    (!std::holds_alternative<std::monostate>(rule.lang) || rule.datatype))
                    throw MappingError(rule.id + ": lang/datatype apply to literals only");
                if (!std::holds_alternative<std::monostate>(rule.lang) && rule.datatype)
                    throw MappingError(rule.id + ": language and datatype are exclusive");
            }
        }
    }

    const YAML::Node& root_;
    MappingDocument doc_;
};

void collect_columns(const SimpleSpec& spec, std::vector<std::string>& out) {
    if (const auto* c = std::get_if<ColumnRef>(&spec)) out.push_back(c->name);
    else if (const auto* t = std::get_if<Template>(&spec))
        out.insert(out.end(), t->columns.begin(), t->columns.end());
}

void collect_columns(const ValueSpec& spec, std::vector<std::string>& out) {
    if (const auto* c = std::get_if<ColumnRef>(&spec)) out.push_back(c->name);
    else if (const auto* t = std::get_if<Template>(&spec))
        out.insert(out.end(), t->columns.begin(), t->columns.end());
    else if (const auto* f = std::get_if<FunctionCall>(&spec))
        for (const auto& [pname, pspec] : f->params) collect_columns(pspec, out);
}

}  // namespace

std::vector<std::string> extract_placeholders(const std::string& text) {
    std::vector<std::string> out;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == '$') {
            ++i;
            continue;
        }
        if (text[i] != '$' || i + 1 >= text.size() || text[i + 1] != '(') continue;
        size_t close = text.find(')', i + 2);
        if (close == std::string::npos)
            throw MappingError("unclosed placeholder in template: " + text);
        std::string name = text.substr(i + 2, close - i - 2);
        if (name.empty()) throw MappingError("empty placeholder in template: " + text);
        out.push_back(name);
        i = close;
    }
    return out;
}

std::vector<std::string> MappingDocument::referenced_columns() const {
    std::vector<std::string> cols;
    for (const auto& m : maps) {
        collect_columns(m.subject, cols);
        for (const auto& rule : m.po) {
            collect_columns(rule.object, cols);
            if (const auto* fc = std::get_if<FunctionCall>(&rule.lang))
                for (const auto& [pname, pspec] : fc->params) collect_columns(pspec, cols);
        }
    }
    std::vector<std::string> unique;
    for (auto& c : cols)
        if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(c);
    return unique;
}

MappingDocument parse_mapping(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw MappingError(std::string("malformed mapping document: ") + e.what());
    }
    try {
        return DocumentBuilder(root).build();
    } catch (const rdf::UnknownPrefixError& e) {
        throw MappingError(e.what());
    } catch (const YAML::Exception& e) {
        throw MappingError(std::string("malformed mapping document: ") + e.what());
    }
}

std::vector<std::string> validate_mapping(const MappingDocument& doc,
                                          const std::set<std::string>& known_functions,
                                          const std::vector<std::string>& table_header) {
    for (const auto& m : doc.maps) {
        auto check_fn = [&](const ValueSpec& spec, const std::string& where) {
            if (const auto* fc = std::get_if<FunctionCall>(&spec)) {
                if (!known_functions.contains(fc->name))
                    throw MappingError(where + ": unknown function '" + fc->name + "'");
            }
        };
        check_fn(m.subject, m.id + "/s");
        for (const auto& rule : m.po) {
            check_fn(rule.object, rule.id);
            if (const auto* fc = std::get_if<FunctionCall>(&rule.lang)) {
                if (!known_functions.contains(fc->name))
                    throw MappingError(rule.id + "/language: unknown function '" + fc->name + "'");
            }
        }
    }
    std::vector<std::string> warnings;
    std::set<std::string> header(table_header.begin(), table_header.end());
    for (const std::string& col : doc.referenced_columns()) {
        if (!header.contains(col))
            warnings.push_back("column '" + col + "' is referenced by the mapping but missing "
                               "from the input table");
    }
    return warnings;
}

}  // namespace chadkg::mapping
