#include "chadkg/rdf/graph.hpp"

#include <algorithm>

namespace chadkg::rdf {

bool Graph::insert(Triple t) {
    if (present_.contains(t)) return false;
    uint32_t idx = static_cast<uint32_t>(triples_.size());
    by_subject_[to_term(t.subject)].push_back(idx);
    by_predicate_[Term(t.predicate)].push_back(idx);
    by_object_[t.object].push_back(idx);
    present_.emplace(t, idx);
    triples_.push_back(std::move(t));
    return true;
}

void Graph::merge(const Graph& other) {
    for (const Triple& t : other.triples_) insert(t);
}

bool Graph::erase(const Triple& t) {
    auto it = present_.find(t);
    if (it == present_.end()) return false;
    triples_.erase(triples_.begin() + it->second);
    reindex();
    return true;
}

void Graph::reindex() {
    present_.clear();
    by_subject_.clear();
    by_predicate_.clear();
    by_object_.clear();
    for (uint32_t i = 0; i < triples_.size(); ++i) {
        const Triple& t = triples_[i];
        present_.emplace(t, i);
        by_subject_[to_term(t.subject)].push_back(i);
        by_predicate_[Term(t.predicate)].push_back(i);
        by_object_[t.object].push_back(i);
    }
}

bool Graph::contains(const Triple& t) const {
    return present_.contains(t);
}

namespace {
std::vector<const Triple*> collect(const std::vector<Triple>& triples,
                                   const std::unordered_map<Term, std::vector<uint32_t>, TermHash>& index,
                                   const Term& key) {
    std::vector<const Triple*> out;
    auto it = index.find(key);
    if (it == index.end()) return out;
    out.reserve(it->second.size());
    for (uint32_t i : it->second) out.push_back(&triples[i]);
    return out;
}
}  // namespace

std::vector<const Triple*> Graph::with_subject(const Resource& s) const {
    return collect(triples_, by_subject_, to_term(s));
}

std::vector<const Triple*> Graph::with_predicate(const Iri& p) const {
    return collect(triples_, by_predicate_, Term(p));
}

std::vector<const Triple*> Graph::with_object(const Term& o) const {
    return collect(triples_, by_object_, o);
}

std::vector<Term> Graph::objects_of(const Resource& s, const Iri& p) const {
    std::vector<Term> out;
    for (const Triple* t : with_subject(s)) {
        if (t->predicate == p) out.push_back(t->object);
    }
    return out;
}

std::vector<Resource> Graph::subjects_of(const Iri& p, const Term& o) const {
    std::vector<Resource> out;
    for (const Triple* t : with_object(o)) {
        if (t->predicate == p) out.push_back(t->subject);
    }
    return out;
}

bool Graph::operator==(const Graph& other) const {
    if (size() != other.size()) return false;
    return std::all_of(triples_.begin(), triples_.end(),
                       [&](const Triple& t) { return other.contains(t); });
}

}  // namespace chadkg::rdf
