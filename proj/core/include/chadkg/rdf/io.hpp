#ifndef CHADKG_RDF_IO_HPP
#define CHADKG_RDF_IO_HPP

#include <string>
#include <string_view>

#include "chadkg/rdf/graph.hpp"
#include "chadkg/rdf/namespaces.hpp"

namespace chadkg::rdf {

enum class Format { ntriples, turtle, jsonld, rdfxml };

/// "ntriples" / "turtle" / "jsonld" / "rdfxml".
std::optional<Format> format_from_name(std::string_view name);

/// From a file extension: .nt .ttl .jsonld .rdf (also .rdfxml).
std::optional<Format> format_from_path(std::string_view path);

const char* format_extension(Format f);
const char* format_media_type(Format f);

/// Serialises a graph. N-Triples output is canonical: one triple per line,
/// lines sorted lexicographically, LF endings, UTF-8. All four formats are
/// deterministic for a given triple set and namespace table.
std::string serialize(const Graph& g, Format f, const NamespaceTable& ns);

class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, size_t column, const std::string& msg);
    size_t line;
    size_t column;
};

/// Parses N-Triples or Turtle (the two read formats). Throws ParseError.
Graph parse(std::string_view text, Format f);

/// Convenience: read a graph from a file, format inferred from the
/// extension unless given. Throws std::runtime_error on I/O failure.
Graph load_graph_file(const std::string& path);

}  // namespace chadkg::rdf

#endif
