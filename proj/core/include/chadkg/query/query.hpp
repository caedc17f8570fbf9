#ifndef CHADKG_QUERY_QUERY_HPP
#define CHADKG_QUERY_QUERY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chadkg/rdf/graph.hpp"
#include "chadkg/rdf/namespaces.hpp"

namespace chadkg::query {

class QueryError : public std::runtime_error {
public:
    QueryError(size_t line, size_t column, const std::string& msg);
    size_t line;
    size_t column;
};

struct Variable {
    std::string name;
    bool operator==(const Variable&) const = default;
};

using PatternTerm = std::variant<Variable, rdf::Term>;

struct TriplePattern {
    PatternTerm s;
    PatternTerm p;
    PatternTerm o;
};

struct Filter {
    enum class Op { equals, regex };
    std::string var;
    Op op;
    std::optional<rdf::Term> operand;  // equals
    std::string pattern;               // regex
};

struct SelectQuery {
    rdf::NamespaceTable prefixes;
    bool star = false;
    std::vector<std::string> projection;  // resolved even for star
    std::vector<TriplePattern> patterns;
    std::vector<Filter> filters;
    std::optional<size_t> limit;
    std::optional<size_t> offset;
};

/// PREFIX* SELECT (vars | *) WHERE { pattern ("." pattern)* FILTER* }
/// [LIMIT n] [OFFSET n]. CURIEs expand at parse time; projecting a variable
/// absent from the patterns is an error.
SelectQuery parse_query(std::string_view text);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<rdf::Term>>> rows;
};

/// Solves the basic graph pattern by backtracking join (most-bound pattern
/// first), applies filters, orders rows deterministically, then offset and
/// limit.
ResultTable evaluate(const SelectQuery& q, const rdf::Graph& g);

/// Standard SPARQL JSON results document (head/vars, results/bindings).
std::string results_to_json(const ResultTable& table);

/// Validates the conservative regex subset (literals, classes, anchors,
/// quantifiers, groups, alternation). Throws QueryError on anything else.
void check_regex_subset(const std::string& pattern);

}  // namespace chadkg::query

#endif
