#include <algorithm>
#include <map>
#include <regex>

#include <nlohmann/json.hpp>

#include "chadkg/query/query.hpp"

namespace chadkg::query {

namespace {

using Binding = std::map<std::string, rdf::Term>;

bool term_matches(const PatternTerm& pt, const rdf::Term& value, Binding& binding) {
    if (const auto* v = std::get_if<Variable>(&pt)) {
        auto it = binding.find(v->name);
        if (it == binding.end()) {
            binding.emplace(v->name, value);
            return true;
        }
        return it->second == value;
    }
    return std::get<rdf::Term>(pt) == value;
}

size_t bound_positions(const TriplePattern& p, const Binding& binding) {
    auto is_bound = [&](const PatternTerm& t) {
        if (const auto* v = std::get_if<Variable>(&t)) return binding.contains(v->name);
        return true;
    };
    return (is_bound(p.s) ? 1 : 0) + (is_bound(p.p) ? 1 : 0) + (is_bound(p.o) ? 1 : 0);
}

// Candidate triples via the most selective available index.
std::vector<const rdf::Triple*> candidates(const rdf::Graph& g, const TriplePattern& p,
                                           const Binding& binding) {
    auto concrete = [&](const PatternTerm& t) -> std::optional<rdf::Term> {
        if (const auto* v = std::get_if<Variable>(&t)) {
            auto it = binding.find(v->name);
            if (it == binding.end()) return std::nullopt;
            return it->second;
        }
        return std::get<rdf::Term>(t);
    };
    if (auto s = concrete(p.s)) {
        if (auto r = rdf::to_resource(*s)) return g.with_subject(*r);
        return {};
    }
    if (auto o = concrete(p.o)) return g.with_object(*o);
    if (auto pr = concrete(p.p)) {
        if (const auto* iri = std::get_if<rdf::Iri>(&*pr)) return g.with_predicate(*iri);
        return {};
    }
    std::vector<const rdf::Triple*> all;
    all.reserve(g.size());
    for (const rdf::Triple& t : g.triples()) all.push_back(&t);
    return all;
}

const std::string& filter_text(const rdf::Term& t) {
    if (const auto* lit = std::get_if<rdf::Literal>(&t)) return lit->lexical();
    if (const auto* iri = std::get_if<rdf::Iri>(&t)) return iri->str();
    return std::get<rdf::BlankNode>(t).label();
}

bool passes_filters(const Binding& binding, const SelectQuery& q,
                    const std::vector<std::regex>& compiled) {
    size_t regex_idx = 0;
    for (const Filter& f : q.filters) {
        auto it = binding.find(f.var);
        bool pass = false;
        if (f.op == Filter::Op::equals) {
            pass = it != binding.end() && it->second == *f.operand;
        } else {
            const std::regex& re = compiled[regex_idx++];
            pass = it != binding.end() && std::regex_search(filter_text(it->second), re);
        }
        if (!pass) return false;
    }
    return true;
}

void solve(const rdf::Graph& g, const std::vector<TriplePattern>& patterns,
           std::vector<bool>& done, Binding& binding, std::vector<Binding>& out) {
    size_t best = patterns.size();
    size_t best_score = 0;
    for (size_t i = 0; i < patterns.size(); ++i) {
        if (done[i]) continue;
        size_t score = bound_positions(patterns[i], binding);
        if (best == patterns.size() || score > best_score) {
            best = i;
            best_score = score;
        }
    }
    if (best == patterns.size()) {
        out.push_back(binding);
        return;
    }
    done[best] = true;
    const TriplePattern& p = patterns[best];
    for (const rdf::Triple* t : candidates(g, p, binding)) {
        Binding next = binding;
        if (!term_matches(p.s, rdf::to_term(t->subject), next)) continue;
        if (!term_matches(p.p, rdf::Term(t->predicate), next)) continue;
        if (!term_matches(p.o, t->object, next)) continue;
        solve(g, patterns, done, next, out);
    }
    done[best] = false;
}

}  // namespace

ResultTable evaluate(const SelectQuery& q, const rdf::Graph& g) {
    std::vector<Binding> solutions;
    std::vector<bool> done(q.patterns.size(), false);
    Binding empty;
    solve(g, q.patterns, done, empty, solutions);

    std::vector<std::regex> compiled;
    for (const Filter& f : q.filters)
        if (f.op == Filter::Op::regex) compiled.emplace_back(f.pattern);

    std::vector<Binding> kept;
    for (Binding& b : solutions)
        if (passes_filters(b, q, compiled)) kept.push_back(std::move(b));

    // Deterministic order: projected tokens first, full binding as
    // tiebreaker so equal projections still order stably.
    struct Row {
        std::string projected_key;
        std::string full_key;
        std::vector<std::optional<rdf::Term>> cells;
    };
    std::vector<Row> rows;
    rows.reserve(kept.size());
    for (const Binding& b : kept) {
        Row row;
        for (const std::string& var : q.projection) {
            auto it = b.find(var);
            if (it == b.end()) {
                row.cells.push_back(std::nullopt);
                row.projected_key += "\x01";
            } else {
                row.cells.push_back(it->second);
                row.projected_key += rdf::term_token(it->second);
                row.projected_key += "\x01";
            }
        }
        for (const auto& [var, term] : b) {
            row.full_key += var;
            row.full_key += rdf::term_token(term);
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.projected_key != b.projected_key) return a.projected_key < b.projected_key;
        return a.full_key < b.full_key;
    });

    size_t begin = std::min(q.offset.value_or(0), rows.size());
    size_t end = q.limit ? std::min(begin + *q.limit, rows.size()) : rows.size();

    ResultTable table;
    table.columns = q.projection;
    for (size_t i = begin; i < end; ++i) table.rows.push_back(std::move(rows[i].cells));
    return table;
}

std::string results_to_json(const ResultTable& table) {
    nlohmann::ordered_json doc;
    doc["head"]["vars"] = table.columns;
    nlohmann::ordered_json bindings = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json b = nlohmann::ordered_json::object();
        for (size_t i = 0; i < table.columns.size(); ++i) {
            if (!row[i]) continue;
            nlohmann::ordered_json cell;
            if (const auto* iri = std::get_if<rdf::Iri>(&*row[i])) {
                cell["type"] = "uri";
                cell["value"] = iri->str();
            } else if (const auto* bn = std::get_if<rdf::BlankNode>(&*row[i])) {
                cell["type"] = "bnode";
                cell["value"] = bn->label();
            } else {
                const auto& lit = std::get<rdf::Literal>(*row[i]);
                cell["type"] = "literal";
                cell["value"] = lit.lexical();
                if (lit.lang()) cell["xml:lang"] = *lit.lang();
                else if (lit.datatype()) cell["datatype"] = lit.datatype()->str();
            }
            b[table.columns[i]] = cell;
        }
        bindings.push_back(b);
    }
    doc["results"]["bindings"] = bindings;
    return doc.dump(2) + "\n";
}

}  // namespace chadkg::query
