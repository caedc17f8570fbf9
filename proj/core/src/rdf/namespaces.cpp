#include "chadkg/rdf/namespaces.hpp"

namespace chadkg::rdf {

NamespaceTable NamespaceTable::builtins() {
    NamespaceTable t;
    t.bind("crm", "http://www.cidoc-crm.org/cidoc-crm/");
    t.bind("lrmoo", "http://iflastandards.info/ns/lrm/lrmoo/");
    t.bind("crmdig", "http://www.ics.forth.gr/isl/CRMdig/");
    t.bind("aat", "http://vocab.getty.edu/aat/");
    t.bind("rdf", vocab::kRdfNs);
    t.bind("rdfs", vocab::kRdfsNs);
    t.bind("xsd", vocab::kXsdNs);
    return t;
}

void NamespaceTable::bind(const std::string& prefix, const std::string& ns) {
    entries_[prefix] = ns;
}

std::optional<std::string> NamespaceTable::find(const std::string& prefix) const {
    auto it = entries_.find(prefix);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

Iri NamespaceTable::expand(const std::string& curie) const {
    size_t colon = curie.find(':');
    if (colon == std::string::npos)
        throw UnknownPrefixError(curie);
    std::string prefix = curie.substr(0, colon);
    auto ns = find(prefix);
    if (!ns) throw UnknownPrefixError(prefix);
    return Iri(*ns + curie.substr(colon + 1));
}

bool NamespaceTable::can_expand(const std::string& text) const {
    size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0) return false;
    return entries_.contains(text.substr(0, colon));
}

std::optional<std::pair<std::string, std::string>> NamespaceTable::compact(const Iri& iri) const {
    const std::string& v = iri.str();
    std::optional<std::pair<std::string, std::string>> best;
    size_t best_len = 0;
    for (const auto& [prefix, ns] : entries_) {
        if (ns.size() > best_len && ns.size() < v.size() && v.starts_with(ns)) {
            best = {prefix, v.substr(ns.size())};
            best_len = ns.size();
        }
    }
    return best;
}

}  // namespace chadkg::rdf
