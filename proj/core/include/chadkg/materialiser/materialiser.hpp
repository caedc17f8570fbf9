#ifndef CHADKG_MATERIALISER_MATERIALISER_HPP
#define CHADKG_MATERIALISER_MATERIALISER_HPP

#include <optional>
#include <string>
#include <vector>

#include "chadkg/mapping/mapping.hpp"
#include "chadkg/rdf/graph.hpp"
#include "chadkg/transforms/udf.hpp"

namespace chadkg::mat {

/// A parsed CSV dataset. Header names are trimmed and unique; every row is
/// padded/truncated to header length; cells are trimmed and empty cells
/// stored as null.
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<std::string>>> rows;

    std::optional<size_t> column_index(const std::string& col) const;
};

class TableError : public std::runtime_error {
public:
    explicit TableError(const std::string& msg) : std::runtime_error(msg) {}
};

Table table_from_csv(std::string_view text, const std::string& name);
Table load_table(const std::string& path, const std::string& name);

/// One data-quality event. row_index is 0-based over data rows and absent
/// for table-level events (alignment, skipped sections).
struct Warning {
    std::optional<size_t> row_index;
    std::string rule_id;
    std::string message;
};

struct AlignResult {
    Table table;
    std::vector<Warning> warnings;
};

/// Appends missing expected columns as all-null (one warning each) and
/// flags unexpected columns; never drops data.
AlignResult align_table(Table t, const std::vector<std::string>& expected_columns);

struct MaterialisationReport {
    std::string dataset_name;
    size_t rows_in = 0;
    size_t triples_emitted = 0;
    size_t triples_skipped = 0;
    std::vector<Warning> warnings;
};

struct ExecuteResult {
    rdf::Graph graph;
    MaterialisationReport report;
};

/// Runs every triples map over every row. A subject that evaluates to none
/// skips the row for that map; an object that evaluates to none skips only
/// that triple; multi-valued results fan out. Data problems are warnings,
/// never errors.
ExecuteResult execute_mapping(const mapping::MappingDocument& doc, const Table& table,
                              const transforms::UdfRegistry& registry,
                              transforms::UdfContext& ctx);

class PipelineError : public std::runtime_error {
public:
    explicit PipelineError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PipelineResult {
    rdf::Graph graph;
    std::vector<MaterialisationReport> reports;
    std::string output_path;  // resolved; empty when writing was disabled
    size_t sections_materialised = 0;
};

struct PipelineOptions {
    std::string config_dir = ".";  // base for relative paths in the config
    bool write_output = true;
};

/// Materialises every dataset section independently, merges, and writes the
/// graph plus a `<output>.report.jsonl` warning log. A section whose input
/// file is missing is skipped with a warning; the pipeline fails only when
/// no section could be materialised.
PipelineResult run_pipeline(const mapping::RunConfig& config, const PipelineOptions& opts = {});

/// JSON-lines rendering of all warnings across reports (one object per
/// warning, pipeline/report order).
std::string report_jsonl(const std::vector<MaterialisationReport>& reports);

}  // namespace chadkg::mat

#endif
