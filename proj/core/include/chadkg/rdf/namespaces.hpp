#ifndef CHADKG_RDF_NAMESPACES_HPP
#define CHADKG_RDF_NAMESPACES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "chadkg/rdf/term.hpp"

namespace chadkg::rdf {

class UnknownPrefixError : public std::runtime_error {
public:
    explicit UnknownPrefixError(const std::string& prefix)
        : std::runtime_error("unknown prefix: " + prefix), prefix(prefix) {}
    std::string prefix;
};

/// Prefix -> namespace IRI table. The defaults carry the vocabularies the
/// CHAD-AP profile reuses plus the usual rdf/rdfs/xsd trio.
class NamespaceTable {
public:
    /// Table pre-populated with crm, lrmoo, crmdig, aat, rdf, rdfs, xsd.
    static NamespaceTable builtins();

    /// Binds or rebinds a prefix.
    void bind(const std::string& prefix, const std::string& ns);

    std::optional<std::string> find(const std::string& prefix) const;

    /// Expands "prefix:local". Throws UnknownPrefixError.
    Iri expand(const std::string& curie) const;

    /// True if the text has the shape of a CURIE this table can expand.
    bool can_expand(const std::string& text) const;

    /// Longest-namespace match; returns (prefix, local) when the IRI falls
    /// under a registered namespace.
    std::optional<std::pair<std::string, std::string>> compact(const Iri& iri) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace chadkg::rdf

#endif
