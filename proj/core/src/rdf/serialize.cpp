#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chadkg/rdf/io.hpp"

namespace chadkg::rdf {

namespace {

// Shared deterministic traversal: subjects sorted by canonical token, types
// first, remaining predicates sorted by IRI, objects sorted by token.
struct SubjectGroup {
    explicit SubjectGroup(Resource s) : subject(std::move(s)) {}
    Resource subject;
    std::vector<Iri> types;
    std::vector<std::pair<Iri, std::vector<Term>>> predicates;
};

std::vector<SubjectGroup> group_by_subject(const Graph& g) {
    std::map<std::string, std::vector<const Triple*>> by_subj;
    for (const Triple& t : g.triples()) by_subj[term_token(t.subject)].push_back(&t);
    std::vector<SubjectGroup> out;
    out.reserve(by_subj.size());
    for (auto& [key, ts] : by_subj) {
        SubjectGroup grp(ts.front()->subject);
        std::map<std::string, std::vector<Term>> preds;
        for (const Triple* t : ts) {
            if (t->predicate == vocab::rdf_type() && is_iri(t->object))
                grp.types.push_back(std::get<Iri>(t->object));
            else
                preds[t->predicate.str()].push_back(t->object);
        }
        std::sort(grp.types.begin(), grp.types.end());
        for (auto& [piri, objs] : preds) {
            std::sort(objs.begin(), objs.end(),
                      [](const Term& a, const Term& b) { return term_token(a) < term_token(b); });
            grp.predicates.emplace_back(Iri(piri), std::move(objs));
        }
        out.push_back(std::move(grp));
    }
    return out;
}

bool turtle_local_ok(const std::string& local) {
    if (local.empty() || local.back() == '.') return false;
    for (char c : local) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
        if (!ok) return false;
    }
    return true;
}

std::string escape_turtle_literal(const std::string& s) {
    std::string out;
    for (unsigned char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04X", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

// ---------------------------------------------------------------- N-Triples

std::string serialize_ntriples(const Graph& g) {
    std::vector<std::string> lines;
    lines.reserve(g.size());
    for (const Triple& t : g.triples()) lines.push_back(triple_line(t));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

// ------------------------------------------------------------------ Turtle

class TurtleWriter {
public:
    TurtleWriter(const Graph& g, const NamespaceTable& ns) : graph_(g), ns_(ns) {}

    std::string write() {
        auto groups = group_by_subject(graph_);
        std::ostringstream body;
        for (size_t i = 0; i < groups.size(); ++i) {
            if (i) body << "\n";
            write_group(body, groups[i]);
        }
        std::ostringstream out;
        for (const auto& prefix : used_prefixes_)
            out << "@prefix " << prefix << ": <" << *ns_.find(prefix) << "> .\n";
        if (!used_prefixes_.empty() && !groups.empty()) out << "\n";
        out << body.str();
        return out.str();
    }

private:
    std::string iri_ref(const Iri& iri) {
        if (auto c = ns_.compact(iri); c && turtle_local_ok(c->second)) {
            used_prefixes_.insert(c->first);
            return c->first + ":" + c->second;
        }
        return "<" + iri.str() + ">";
    }

    std::string object_ref(const Term& t) {
        if (const auto* iri = std::get_if<Iri>(&t)) return iri_ref(*iri);
        if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label();
        const Literal& l = std::get<Literal>(t);
        std::string out = "\"" + escape_turtle_literal(l.lexical()) + "\"";
        if (l.lang()) out += "@" + *l.lang();
        else if (l.datatype()) out += "^^" + iri_ref(*l.datatype());
        return out;
    }

    void write_group(std::ostringstream& out, const SubjectGroup& grp) {
        std::string subj = std::holds_alternative<Iri>(grp.subject)
                               ? iri_ref(std::get<Iri>(grp.subject))
                               : "_:" + std::get<BlankNode>(grp.subject).label();
        out << subj << " ";
        std::vector<std::string> clauses;
        if (!grp.types.empty()) {
            std::string c = "a ";
            for (size_t i = 0; i < grp.types.size(); ++i)
                c += (i ? ", " : "") + iri_ref(grp.types[i]);
            clauses.push_back(c);
        }
        for (const auto& [pred, objects] : grp.predicates) {
            std::string c = iri_ref(pred) + " ";
            for (size_t i = 0; i < objects.size(); ++i)
                c += (i ? ", " : "") + object_ref(objects[i]);
            clauses.push_back(c);
        }
        for (size_t i = 0; i < clauses.size(); ++i) {
            if (i) out << " ;\n    ";
            out << clauses[i];
        }
        out << " .\n";
    }

    const Graph& graph_;
    const NamespaceTable& ns_;
    std::set<std::string> used_prefixes_;
};

// ----------------------------------------------------------------- JSON-LD

nlohmann::ordered_json jsonld_object(const Term& t, const NamespaceTable& ns) {
    nlohmann::ordered_json o;
    if (const auto* iri = std::get_if<Iri>(&t)) {
        o["@id"] = iri->str();
    } else if (const auto* b = std::get_if<BlankNode>(&t)) {
        o["@id"] = "_:" + b->label();
    } else {
        const Literal& l = std::get<Literal>(t);
        o["@value"] = l.lexical();
        if (l.lang()) o["@language"] = *l.lang();
        else if (l.datatype()) o["@type"] = l.datatype()->str();
    }
    (void)ns;
    return o;
}

std::string serialize_jsonld(const Graph& g, const NamespaceTable& ns) {
    auto groups = group_by_subject(g);
    nlohmann::ordered_json ctx;
    for (const auto& [prefix, nsiri] : ns.entries()) ctx[prefix] = nsiri;
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto& grp : groups) {
        nlohmann::ordered_json node;
        node["@id"] = std::holds_alternative<Iri>(grp.subject)
                          ? std::get<Iri>(grp.subject).str()
                          : "_:" + std::get<BlankNode>(grp.subject).label();
        if (!grp.types.empty()) {
            nlohmann::ordered_json types = nlohmann::ordered_json::array();
            for (const Iri& t : grp.types) types.push_back(t.str());
            node["@type"] = types;
        }
        for (const auto& [pred, objects] : grp.predicates) {
            nlohmann::ordered_json values = nlohmann::ordered_json::array();
            for (const Term& o : objects) values.push_back(jsonld_object(o, ns));
            node[pred.str()] = values;
        }
        items.push_back(node);
    }
    nlohmann::ordered_json doc;
    doc["@context"] = ctx;
    doc["@graph"] = items;
    return doc.dump(2) + "\n";
}

// ----------------------------------------------------------------- RDF/XML

bool ncname_ok(const std::string& s) {
    if (s.empty()) return false;
    char c0 = s[0];
    if (!((c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z') || c0 == '_')) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
        if (!ok) return false;
    }
    return true;
}

std::string xml_escape(const std::string& s, bool attribute) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': if (attribute) { out += "&quot;"; break; } [[fallthrough]];
            default: out += c;
        }
    }
    return out;
}

class RdfXmlWriter {
public:
    RdfXmlWriter(const Graph& g, const NamespaceTable& ns) : graph_(g), ns_(ns) {}

    std::string write() {
        auto groups = group_by_subject(graph_);
        std::ostringstream body;
        for (const auto& grp : groups) write_group(body, grp);

        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<rdf:RDF xmlns:rdf=\"" << vocab::kRdfNs << "\"";
        for (const auto& [prefix, nsiri] : declared_)
            out << "\n         xmlns:" << prefix << "=\"" << xml_escape(nsiri, true) << "\"";
        out << ">\n" << body.str() << "</rdf:RDF>\n";
        return out.str();
    }

private:
    // RDF/XML needs a QName per predicate; fall back to a generated prefix
    // when the predicate does not sit under a registered namespace.
    std::string qname(const Iri& p) {
        if (p.str().starts_with(vocab::kRdfNs)) {
            std::string local = p.str().substr(std::string(vocab::kRdfNs).size());
            if (ncname_ok(local)) return "rdf:" + local;
        }
        if (auto c = ns_.compact(p); c && ncname_ok(c->second)) {
            declared_.emplace(c->first, *ns_.find(c->first));
            return c->first + ":" + c->second;
        }
        size_t pos = p.str().find_last_of("/#");
        if (pos != std::string::npos) {
            std::string local = p.str().substr(pos + 1);
            std::string nsiri = p.str().substr(0, pos + 1);
            if (ncname_ok(local)) {
                auto it = generated_.find(nsiri);
                std::string prefix;
                if (it == generated_.end()) {
                    prefix = "ns" + std::to_string(generated_.size() + 1);
                    generated_.emplace(nsiri, prefix);
                    declared_.emplace(prefix, nsiri);
                } else {
                    prefix = it->second;
                }
                return prefix + ":" + local;
            }
        }
        throw std::runtime_error("predicate IRI not expressible as RDF/XML QName: " + p.str());
    }

    void write_group(std::ostringstream& out, const SubjectGroup& grp) {
        out << "  <rdf:Description ";
        if (const auto* iri = std::get_if<Iri>(&grp.subject))
            out << "rdf:about=\"" << xml_escape(iri->str(), true) << "\"";
        else
            out << "rdf:nodeID=\"" << std::get<BlankNode>(grp.subject).label() << "\"";
        out << ">\n";
        for (const Iri& type : grp.types)
            out << "    <rdf:type rdf:resource=\"" << xml_escape(type.str(), true) << "\"/>\n";
        for (const auto& [pred, objects] : grp.predicates) {
            std::string q = qname(pred);
            for (const Term& o : objects) {
                if (const auto* iri = std::get_if<Iri>(&o)) {
                    out << "    <" << q << " rdf:resource=\"" << xml_escape(iri->str(), true) << "\"/>\n";
                } else if (const auto* b = std::get_if<BlankNode>(&o)) {
                    out << "    <" << q << " rdf:nodeID=\"" << b->label() << "\"/>\n";
                } else {
                    const Literal& l = std::get<Literal>(o);
                    out << "    <" << q;
                    if (l.lang()) out << " xml:lang=\"" << *l.lang() << "\"";
                    else if (l.datatype())
                        out << " rdf:datatype=\"" << xml_escape(l.datatype()->str(), true) << "\"";
                    out << ">" << xml_escape(l.lexical(), false) << "</" << q << ">\n";
                }
            }
        }
        out << "  </rdf:Description>\n";
    }

    const Graph& graph_;
    const NamespaceTable& ns_;
    std::map<std::string, std::string> declared_;   // prefix -> ns
    std::map<std::string, std::string> generated_;  // ns -> prefix
};

}  // namespace

std::optional<Format> format_from_name(std::string_view name) {
    if (name == "ntriples" || name == "nt") return Format::ntriples;
    if (name == "turtle" || name == "ttl") return Format::turtle;
    if (name == "jsonld" || name == "json-ld") return Format::jsonld;
    if (name == "rdfxml" || name == "rdf-xml" || name == "xml") return Format::rdfxml;
    return std::nullopt;
}

std::optional<Format> format_from_path(std::string_view path) {
    auto ends = [&](std::string_view suffix) { return path.ends_with(suffix); };
    if (ends(".nt")) return Format::ntriples;
    if (ends(".ttl")) return Format::turtle;
    if (ends(".jsonld")) return Format::jsonld;
    if (ends(".rdf") || ends(".rdfxml") || ends(".xml")) return Format::rdfxml;
    return std::nullopt;
}

const char* format_extension(Format f) {
    switch (f) {
        case Format::ntriples: return ".nt";
        case Format::turtle: return ".ttl";
        case Format::jsonld: return ".jsonld";
        case Format::rdfxml: return ".rdf";
    }
    return ".nt";
}

const char* format_media_type(Format f) {
    switch (f) {
        case Format::ntriples: return "application/n-triples";
        case Format::turtle: return "text/turtle";
        case Format::jsonld: return "application/ld+json";
        case Format::rdfxml: return "application/rdf+xml";
    }
    return "application/n-triples";
}

std::string serialize(const Graph& g, Format f, const NamespaceTable& ns) {
    switch (f) {
        case Format::ntriples: return serialize_ntriples(g);
        case Format::turtle: return TurtleWriter(g, ns).write();
        case Format::jsonld: return serialize_jsonld(g, ns);
        case Format::rdfxml: return RdfXmlWriter(g, ns).write();
    }
    return {};
}

}  // namespace chadkg::rdf
