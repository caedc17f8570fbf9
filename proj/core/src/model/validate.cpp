#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "chadkg/model/model.hpp"

namespace chadkg::model {

namespace {

// Distinct nodes typed with the class, in deterministic (token) order.
std::vector<rdf::Resource> instances_of(const rdf::Graph& g, const rdf::Iri& cls) {
    std::vector<rdf::Resource> out;
    std::set<std::string> seen;
    for (const rdf::Triple* t : g.with_object(rdf::Term(cls))) {
        if (!(t->predicate == rdf::vocab::rdf_type())) continue;
        if (seen.insert(rdf::term_token(t->subject)).second) out.push_back(t->subject);
    }
    std::sort(out.begin(), out.end(), [](const rdf::Resource& a, const rdf::Resource& b) {
        return rdf::term_token(a) < rdf::term_token(b);
    });
    return out;
}

bool node_has_type(const rdf::Graph& g, const rdf::Term& node, const rdf::Iri& cls) {
    auto r = rdf::to_resource(node);
    if (!r) return false;
    for (const rdf::Triple* t : g.with_subject(*r)) {
        if (t->predicate == rdf::vocab::rdf_type() && t->object == rdf::Term(cls)) return true;
    }
    return false;
}

}  // namespace

ValidationReport validate(const rdf::Graph& g, const std::vector<ShapeRule>& rules) {
    ValidationReport report;
    for (const ShapeRule& rule : rules) {
        for (const rdf::Resource& focus : instances_of(g, rule.focus_class)) {
            size_t found = 0;
            if (rule.direction == Direction::outbound) {
                for (const rdf::Triple* t : g.with_subject(focus)) {
                    if (!(t->predicate == rule.path)) continue;
                    if (rule.object_class && !node_has_type(g, t->object, *rule.object_class))
                        continue;
                    ++found;
                }
            } else {
                for (const rdf::Triple* t : g.with_object(rdf::to_term(focus))) {
                    if (!(t->predicate == rule.path)) continue;
                    if (rule.object_class &&
                        !node_has_type(g, rdf::to_term(t->subject), *rule.object_class))
                        continue;
                    ++found;
                }
            }
            if (found < rule.min || (rule.max && found > *rule.max)) {
                std::string bound = found < rule.min
                                        ? "expected at least " + std::to_string(rule.min)
                                        : "expected at most " + std::to_string(*rule.max);
                report.violations.push_back(
                    {focus, rule.id, found,
                     rule.id + ": " + rdf::term_token(focus) + " has " + std::to_string(found) +
                         " '" + rule.path.str() + "' link(s), " + bound});
            }
        }
    }
    report.conforms = report.violations.empty();
    return report;
}

StatsReport compute_stats(const rdf::Graph& g) {
    StatsReport stats;
    stats.triple_count = g.size();

    std::set<std::string> entities;
    std::map<std::string, std::set<std::string>> class_members;
    for (const rdf::Triple& t : g.triples()) {
        ++stats.property_histogram[t.predicate.str()];
        if (const auto* iri = std::get_if<rdf::Iri>(&t.subject)) {
            entities.insert(iri->str());
            if (t.predicate == rdf::vocab::rdf_type() && is_iri(t.object))
                class_members[std::get<rdf::Iri>(t.object).str()].insert(iri->str());
        }
    }
    stats.entity_count = entities.size();
    for (const auto& [cls, members] : class_members)
        stats.class_histogram[cls] = members.size();
    stats.distinct_classes_used = stats.class_histogram.size();
    stats.distinct_properties_used = stats.property_histogram.size();
    if (stats.entity_count > 0) {
        double avg = static_cast<double>(stats.triple_count) / stats.entity_count;
        stats.avg_statements_per_entity = std::round(avg * 100.0) / 100.0;
    }
    stats.model_usage = model_usage(g, rdf::NamespaceTable::builtins());
    return stats;
}

std::map<std::string, size_t> model_usage(const rdf::Graph& g, const rdf::NamespaceTable& ns) {
    static const std::vector<std::pair<std::string, std::string>> kModels = {
        {"crm", "CIDOC-CRM"}, {"lrmoo", "LRMoo"}, {"crmdig", "CRMdig"}, {"aat", "AAT"}};
    std::vector<std::pair<std::string, std::string>> bases;  // ns iri -> model name
    std::map<std::string, size_t> usage;
    for (const auto& [prefix, name] : kModels) {
        if (auto base = ns.find(prefix)) {
            bases.emplace_back(*base, name);
            usage[name] = 0;
        }
    }
    auto model_of = [&](const std::string& iri) -> const std::string* {
        for (const auto& [base, name] : bases)
            if (iri.starts_with(base)) return &name;
        return nullptr;
    };
    for (const rdf::Triple& t : g.triples()) {
        if (const std::string* m = model_of(t.predicate.str())) ++usage[*m];
        if (const auto* iri = std::get_if<rdf::Iri>(&t.object))
            if (const std::string* m = model_of(iri->str())) ++usage[*m];
    }
    return usage;
}

std::string stats_to_json(const StatsReport& stats) {
    nlohmann::ordered_json j;
    j["triple_count"] = stats.triple_count;
    j["entity_count"] = stats.entity_count;
    j["distinct_classes_used"] = stats.distinct_classes_used;
    j["distinct_properties_used"] = stats.distinct_properties_used;
    j["avg_statements_per_entity"] = stats.avg_statements_per_entity;
    j["class_histogram"] = stats.class_histogram;
    j["property_histogram"] = stats.property_histogram;
    j["model_usage"] = stats.model_usage;
    return j.dump(2) + "\n";
}

std::string validation_to_json(const ValidationReport& report) {
    nlohmann::ordered_json j;
    j["conforms"] = report.conforms;
    nlohmann::ordered_json violations = nlohmann::ordered_json::array();
    for (const auto& v : report.violations) {
        nlohmann::ordered_json o;
        o["focus_node"] = rdf::term_token(v.focus);
        o["rule_id"] = v.rule_id;
        o["found_count"] = v.found_count;
        o["message"] = v.message;
        violations.push_back(o);
    }
    j["violations"] = violations;
    return j.dump(2) + "\n";
}

}  // namespace chadkg::model
