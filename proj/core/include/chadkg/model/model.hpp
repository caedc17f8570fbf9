#ifndef CHADKG_MODEL_MODEL_HPP
#define CHADKG_MODEL_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chadkg/rdf/graph.hpp"
#include "chadkg/rdf/namespaces.hpp"

namespace chadkg::model {

class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class TermKind { Class, Property, Individual };

struct CatalogueTerm {
    rdf::Iri iri;
    TermKind kind;
    std::string model;  // CIDOC-CRM | LRMoo | CRMdig | AAT
    std::string label;
};

/// The CHAD-AP term catalogue. The built-in content ships as a CSV data
/// file compiled into the library; user-supplied files use the same format
/// (iri,kind,model,label with CURIEs resolved against the built-in table).
class VocabularyCatalogue {
public:
    static VocabularyCatalogue builtin();
    static VocabularyCatalogue from_csv(std::string_view text);

    const std::vector<CatalogueTerm>& terms() const { return terms_; }
    const CatalogueTerm* find(const rdf::Iri& iri) const;

private:
    std::vector<CatalogueTerm> terms_;
};

enum class Direction { outbound, inbound };

/// Cardinality constraint on a property path from/to instances of a class.
struct ShapeRule {
    std::string id;
    rdf::Iri focus_class;
    rdf::Iri path;
    Direction direction = Direction::outbound;
    size_t min = 0;
    std::optional<size_t> max;
    std::optional<rdf::Iri> object_class;  // type of the far node, when constrained
};

/// The shipped OM/PM rule set.
std::vector<ShapeRule> builtin_shapes();

/// Parses the whitespace-separated shapes format (see shipped
/// default_shapes.txt for the grammar).
std::vector<ShapeRule> parse_shapes(std::string_view text);

struct Violation {
    rdf::Resource focus;
    std::string rule_id;
    size_t found_count;
    std::string message;
};

struct ValidationReport {
    bool conforms = true;
    std::vector<Violation> violations;
};

ValidationReport validate(const rdf::Graph& g, const std::vector<ShapeRule>& rules);

struct StatsReport {
    size_t triple_count = 0;
    size_t entity_count = 0;  // distinct IRI subjects
    std::map<std::string, size_t> class_histogram;     // class IRI -> entities
    std::map<std::string, size_t> property_histogram;  // predicate IRI -> occurrences
    std::map<std::string, size_t> model_usage;         // model name -> references
    size_t distinct_classes_used = 0;
    size_t distinct_properties_used = 0;
    double avg_statements_per_entity = 0.0;  // rounded to 2 decimals
};

StatsReport compute_stats(const rdf::Graph& g);

/// References per reused model: predicate occurrences plus object-IRI
/// occurrences falling under each model namespace (rdf:type objects and
/// plain object IRIs alike, each object counted once).
std::map<std::string, size_t> model_usage(const rdf::Graph& g, const rdf::NamespaceTable& ns);

std::string stats_to_json(const StatsReport& stats);
std::string validation_to_json(const ValidationReport& report);

}  // namespace chadkg::model

#endif
