#ifndef CHADKG_RDF_TERM_HPP
#define CHADKG_RDF_TERM_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace chadkg::rdf {

/// Thrown when a term would violate one of its structural invariants.
class TermError : public std::runtime_error {
public:
    explicit TermError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An absolute IRI. Validation is syntactic: a scheme followed by ":",
/// and none of the characters a serialized IRI cannot carry
/// (whitespace, '<', '>', '"'). Equality is exact codepoint equality.
class Iri {
public:
    explicit Iri(std::string value);

    const std::string& str() const { return value_; }

    /// Text after the last '/' or '#', or the whole IRI if neither occurs.
    std::string local_name() const;

    bool operator==(const Iri& other) const { return value_ == other.value_; }
    auto operator<=>(const Iri& other) const { return value_ <=> other.value_; }

private:
    std::string value_;
};

/// A blank node label, restricted to [A-Za-z0-9_]+.
class BlankNode {
public:
    explicit BlankNode(std::string label);

    const std::string& label() const { return label_; }

    bool operator==(const BlankNode& other) const { return label_ == other.label_; }
    auto operator<=>(const BlankNode& other) const { return label_ <=> other.label_; }

private:
    std::string label_;
};

/// An RDF literal. A language tag and an explicit datatype are mutually
/// exclusive. An explicit xsd:string datatype is normalised away at
/// construction so that plain and explicitly-typed string literals compare
/// equal everywhere in the toolkit.
class Literal {
public:
    explicit Literal(std::string lexical,
                     std::optional<std::string> lang = std::nullopt,
                     std::optional<Iri> datatype = std::nullopt);

    const std::string& lexical() const { return lexical_; }
    const std::optional<std::string>& lang() const { return lang_; }
    const std::optional<Iri>& datatype() const { return datatype_; }

    /// rdf:langString when tagged, the explicit datatype when typed,
    /// xsd:string otherwise.
    Iri effective_datatype() const;

    bool operator==(const Literal& other) const = default;

private:
    std::string lexical_;
    std::optional<std::string> lang_;
    std::optional<Iri> datatype_;
};

/// Anything that can appear in subject position.
using Resource = std::variant<Iri, BlankNode>;

/// Any RDF term.
using Term = std::variant<Iri, BlankNode, Literal>;

Term to_term(const Resource& r);
std::optional<Resource> to_resource(const Term& t);

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }

struct Triple {
    Resource subject;
    Iri predicate;
    Term object;

    bool operator==(const Triple& other) const = default;
};

/// Canonical N-Triples token for a term; doubles as the toolkit's total
/// order over terms (lexicographic on the token).
std::string term_token(const Term& t);
std::string term_token(const Resource& r);

/// Canonical N-Triples line for a triple, without the trailing newline.
std::string triple_line(const Triple& t);

struct TermHash {
    size_t operator()(const Term& t) const;
    size_t operator()(const Resource& r) const;
    size_t operator()(const Iri& i) const;
};

struct TripleHash {
    size_t operator()(const Triple& t) const;
};

namespace vocab {
inline const char* kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const char* kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline const char* kXsdNs = "http://www.w3.org/2001/XMLSchema#";

const Iri& rdf_type();
const Iri& rdf_lang_string();
const Iri& rdfs_label();
const Iri& xsd_string();
const Iri& xsd_date_time();
}  // namespace vocab

}  // namespace chadkg::rdf

#endif
