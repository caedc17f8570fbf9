#ifndef CHADKG_MAPPING_MAPPING_HPP
#define CHADKG_MAPPING_MAPPING_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "chadkg/rdf/namespaces.hpp"
#include "chadkg/rdf/term.hpp"

namespace chadkg::mapping {

class MappingError : public std::runtime_error {
public:
    explicit MappingError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Reference to a single source column.
struct ColumnRef {
    std::string name;
};

/// Text with `$(column)` placeholders; `\$` escapes a literal dollar sign.
struct Template {
    std::string text;                  // raw template text
    std::vector<std::string> columns;  // placeholder names, in order
};

/// A fixed value (IRI text or literal text, decided by the enclosing rule).
struct Constant {
    std::string text;
};

using SimpleSpec = std::variant<ColumnRef, Template, Constant>;

/// Call of a registered transformation function. Parameters are simple
/// specs; nesting functions is not part of the subset.
struct FunctionCall {
    std::string name;
    std::map<std::string, SimpleSpec> params;
};

using ValueSpec = std::variant<ColumnRef, Template, Constant, FunctionCall>;

enum class ObjectKind { iri, literal };

/// Language of a literal object: absent, a fixed tag, or a function that
/// derives the tag from the row (none meaning "untagged").
using LangSpec = std::variant<std::monostate, std::string, FunctionCall>;

struct PredicateObjectRule {
    std::string id;
    rdf::Iri predicate;
    ValueSpec object;
    ObjectKind kind = ObjectKind::literal;
    LangSpec lang;
    std::optional<rdf::Iri> datatype;
};

struct SourceDecl {
    std::string id;
    std::string path;
};

struct TriplesMap {
    std::string id;
    std::string source;
    ValueSpec subject;
    std::vector<rdf::Iri> classes;
    std::vector<PredicateObjectRule> po;
};

struct MappingDocument {
    rdf::NamespaceTable prefixes;
    std::vector<SourceDecl> sources;
    std::vector<TriplesMap> maps;

    /// Every column referenced anywhere (column refs, template
    /// placeholders, function parameters), in first-use order.
    std::vector<std::string> referenced_columns() const;
};

/// Parses the YARRRML subset (prefixes, sources, mappings with s/po,
/// function blocks). Throws MappingError on malformed documents, unknown
/// top-level keys, missing subjects, or unknown CURIE prefixes.
MappingDocument parse_mapping(const std::string& text);

/// Extracts placeholder column names from template text. `\$` escapes a
/// literal dollar sign. Throws MappingError on empty or unclosed
/// placeholders.
std::vector<std::string> extract_placeholders(const std::string& text);

/// One warning per referenced column missing from the header. Unknown
/// function names are errors (MappingError) rather than warnings.
std::vector<std::string> validate_mapping(const MappingDocument& doc,
                                          const std::set<std::string>& known_functions,
                                          const std::vector<std::string>& table_header);

// ----------------------------------------------------------- run config

struct DatasetSection {
    std::string name;
    std::string mapping_path;
    std::string input_path;
};

struct RunConfig {
    std::string output_file;
    std::string output_format = "ntriples";  // or "turtle"
    std::vector<DatasetSection> datasets;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// INI-style run configuration: a [CONFIGURATION] section with
/// output_file/output_format, then one section per dataset carrying
/// `mappings` and `file_path`. Section order is preserved.
RunConfig parse_run_config(const std::string& text);

}  // namespace chadkg::mapping

#endif
