#ifndef CHADKG_RDF_GRAPH_HPP
#define CHADKG_RDF_GRAPH_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "chadkg/rdf/term.hpp"

namespace chadkg::rdf {

/// A deduplicated, indexed triple set. Triples keep insertion order in
/// triples(); lookups go through the subject/predicate/object indexes.
///
/// Concurrency: any number of concurrent readers, writers need exclusive
/// access. The container is a plain value and can be moved between threads.
class Graph {
public:
    /// Inserts t, returns true iff the triple was not already present.
    bool insert(Triple t);

    /// Set-union with other.
    void merge(const Graph& other);

    /// Removes t if present, returns true iff something was removed.
    bool erase(const Triple& t);

    bool contains(const Triple& t) const;
    size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    const std::vector<Triple>& triples() const { return triples_; }

    std::vector<const Triple*> with_subject(const Resource& s) const;
    std::vector<const Triple*> with_predicate(const Iri& p) const;
    std::vector<const Triple*> with_object(const Term& o) const;

    /// Distinct objects o of (s, p, o) triples.
    std::vector<Term> objects_of(const Resource& s, const Iri& p) const;

    /// Distinct subjects s of (s, p, o) triples.
    std::vector<Resource> subjects_of(const Iri& p, const Term& o) const;

    bool operator==(const Graph& other) const;

private:
    void reindex();

    std::vector<Triple> triples_;
    std::unordered_map<Triple, uint32_t, TripleHash> present_;
    std::unordered_map<Term, std::vector<uint32_t>, TermHash> by_subject_;
    std::unordered_map<Term, std::vector<uint32_t>, TermHash> by_predicate_;
    std::unordered_map<Term, std::vector<uint32_t>, TermHash> by_object_;
};

}  // namespace chadkg::rdf

#endif
