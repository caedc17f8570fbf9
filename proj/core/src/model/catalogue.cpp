#include <algorithm>
#include <set>

#include "chadkg/csv.hpp"
#include "chadkg/model/model.hpp"
#include "chadkg/resources.hpp"

namespace chadkg::model {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Model membership follows the namespace of the term.
std::optional<std::string> model_for_iri(const rdf::Iri& iri, const rdf::NamespaceTable& ns) {
    static const std::vector<std::pair<std::string, std::string>> kModels = {
        {"crm", "CIDOC-CRM"}, {"lrmoo", "LRMoo"}, {"crmdig", "CRMdig"}, {"aat", "AAT"}};
    for (const auto& [prefix, name] : kModels) {
        auto base = ns.find(prefix);
        if (base && iri.str().starts_with(*base)) return name;
    }
    return std::nullopt;
}

}  // namespace

VocabularyCatalogue VocabularyCatalogue::from_csv(std::string_view text) {
    auto records = csv::read_records(text);
    if (records.empty()) throw ModelError("catalogue file is empty");
    auto ns = rdf::NamespaceTable::builtins();

    VocabularyCatalogue cat;
    std::set<std::string> seen;
    for (size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.size() < 4)
            throw ModelError("catalogue row " + std::to_string(i + 1) +
                             ": expected iri,kind,model,label");
        std::string iri_text = trim(rec[0]);
        rdf::Iri iri = ns.can_expand(iri_text) ? ns.expand(iri_text) : rdf::Iri(iri_text);
        if (!seen.insert(iri.str()).second)
            throw ModelError("catalogue lists term twice: " + iri.str());

        std::string kind_text = trim(rec[1]);
        TermKind kind;
        if (kind_text == "class") kind = TermKind::Class;
        else if (kind_text == "property") kind = TermKind::Property;
        else if (kind_text == "individual") kind = TermKind::Individual;
        else throw ModelError("catalogue row " + std::to_string(i + 1) +
                              ": kind must be class/property/individual");

        std::string declared_model = trim(rec[2]);
        auto derived = model_for_iri(iri, ns);
        if (!derived)
            throw ModelError("catalogue term outside the profile namespaces: " + iri.str());
        if (declared_model != *derived)
            throw ModelError("catalogue row " + std::to_string(i + 1) + ": model '" +
                             declared_model + "' does not match namespace of " + iri.str());

        cat.terms_.push_back({std::move(iri), kind, *derived, trim(rec[3])});
    }
    return cat;
}

VocabularyCatalogue VocabularyCatalogue::builtin() {
    return from_csv(resources::kCatalogueCsv);
}

const CatalogueTerm* VocabularyCatalogue::find(const rdf::Iri& iri) const {
    for (const auto& t : terms_)
        if (t.iri == iri) return &t;
    return nullptr;
}

// --------------------------------------------------------------- shapes

std::vector<ShapeRule> parse_shapes(std::string_view text) {
    auto ns = rdf::NamespaceTable::builtins();
    std::vector<ShapeRule> rules;
    std::set<std::string> ids;
    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string line(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;

        std::vector<std::string> cols;
        std::string cur;
        for (char c : t) {
            if (c == ' ' || c == '\t') {
                if (!cur.empty()) cols.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) cols.push_back(std::move(cur));
        if (cols.size() != 7)
            throw ModelError("shapes line " + std::to_string(lineno) +
                             ": expected 7 columns, got " + std::to_string(cols.size()));

        ShapeRule rule{
            .id = cols[0],
            .focus_class = ns.can_expand(cols[1]) ? ns.expand(cols[1]) : rdf::Iri(cols[1]),
            .path = ns.can_expand(cols[3]) ? ns.expand(cols[3]) : rdf::Iri(cols[3])};
        if (!ids.insert(rule.id).second)
            throw ModelError("duplicate shape rule id: " + rule.id);
        if (cols[2] == "outbound") rule.direction = Direction::outbound;
        else if (cols[2] == "inbound") rule.direction = Direction::inbound;
        else throw ModelError("shapes line " + std::to_string(lineno) +
                              ": direction must be outbound or inbound");
        rule.min = std::stoul(cols[4]);
        if (cols[5] != "*") rule.max = std::stoul(cols[5]);
        if (rule.max && rule.min > *rule.max)
            throw ModelError("shape rule " + rule.id + ": min exceeds max");
        if (cols[6] != "-")
            rule.object_class = ns.can_expand(cols[6]) ? ns.expand(cols[6]) : rdf::Iri(cols[6]);
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<ShapeRule> builtin_shapes() {
    return parse_shapes(resources::kDefaultShapes);
}

}  // namespace chadkg::model
