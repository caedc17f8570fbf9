#ifndef CHADKG_TRANSFORMS_UDF_HPP
#define CHADKG_TRANSFORMS_UDF_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chadkg/rdf/term.hpp"

namespace chadkg::transforms {

/// Value produced by a transformation function: a ready-made IRI, a typed
/// literal, or plain text the enclosing mapping rule shapes into a term.
using Produced = std::variant<rdf::Iri, rdf::Literal, std::string>;

class TransformError : public std::runtime_error {
public:
    explicit TransformError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Key -> AAT numeric code, loaded from a two-column CSV (header required).
/// Keys are lowercased and trimmed at load time.
class LookupTable {
public:
    static LookupTable from_csv(std::string_view text, const std::string& origin);
    static LookupTable load(const std::string& path);

    std::optional<std::string> find(const std::string& raw_key) const;
    size_t size() const { return entries_.size(); }
    const std::string& source_path() const { return source_path_; }

    /// Test convenience: build from (key, code) pairs.
    static LookupTable from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

private:
    std::map<std::string, std::string> entries_;
    std::string source_path_;
};

/// Resolves and caches lookup tables named by mapping parameters. Relative
/// paths are resolved against base_dir.
class UdfContext {
public:
    explicit UdfContext(std::string base_dir = ".");
    const LookupTable& table(const std::string& path);

private:
    std::string base_dir_;
    std::map<std::string, LookupTable> cache_;
};

using ParamMap = std::map<std::string, std::string>;

// --- the transformation functions -----------------------------------------

/// trim, Unicode-decompose (NFKD), strip combining marks, lowercase,
/// collapse non-[a-z0-9] runs to "-". Empty result -> nullopt.
std::optional<std::string> slugify(const std::string& text);

std::optional<rdf::Iri> normalize_and_convert_to_iri(const std::string& value,
                                                     const std::string& base);

std::vector<std::string> multiple_separator_split_explode(
    const std::string& value, const std::vector<std::string>& separators);

std::optional<rdf::Iri> assess_aat_tool_type(const std::string& value,
                                             const LookupTable& table);

std::optional<rdf::Literal> date_to_xs_datetime(const std::string& value);

enum class RangeSide { start, end };
std::optional<rdf::Literal> split_year_range_to_dates(const std::string& value,
                                                      RangeSide which);

std::vector<rdf::Iri> convert_to_aat(const std::string& value,
                                     const std::vector<std::string>& separators,
                                     const LookupTable& table);

std::optional<rdf::Iri> convert_documentary_type_to_aat(const std::string& value,
                                                        const LookupTable& table);

std::string extract_title(const std::string& value);

std::optional<std::string> extract_title_lang(const std::string& value);

std::optional<rdf::Iri> extract_documented_in_iri(const std::string& value);

std::optional<rdf::Iri> conditional_normalize_and_convert_to_iri(
    const std::string& value, const std::string& relation,
    const std::string& expected, const std::string& base);

// --- registry ---------------------------------------------------------------

/// Outcome of a registered function. No values means the enclosing triple
/// is skipped: with a warning when the emptiness signals a data problem,
/// silently when it is expected flow (a conditional that did not match).
/// warnings carries per-item messages (e.g. lookup misses during a
/// multi-value conversion) even when some values were produced.
struct UdfResult {
    std::vector<Produced> values;
    bool expected_empty = false;
    std::vector<std::string> warnings;
};

struct Udf {
    std::string name;
    std::vector<std::string> params;
    std::function<UdfResult(const ParamMap&, UdfContext&)> call;
};

class UdfRegistry {
public:
    /// Registry with every built-in transformation registered.
    static const UdfRegistry& builtins();

    const Udf* find(const std::string& name) const;
    bool contains(const std::string& name) const { return find(name) != nullptr; }
    std::vector<std::string> names() const;

    void add(Udf udf);

private:
    std::map<std::string, Udf> entries_;
};

/// "a; b |c" with separators {";", "|"} -> {"a", "b", "c"}; helper for the
/// whitespace-separated `separators` mapping parameter.
std::vector<std::string> parse_separator_tokens(const std::string& spec);

}  // namespace chadkg::transforms

#endif
