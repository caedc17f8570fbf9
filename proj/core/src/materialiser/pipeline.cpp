#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "chadkg/csv.hpp"
#include "chadkg/errors.hpp"
#include "chadkg/materialiser/materialiser.hpp"
#include "chadkg/rdf/io.hpp"

namespace chadkg::mat {

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute() || base.empty()) return path;
    return (fs::path(base) / p).lexically_normal().string();
}

}  // namespace

std::string report_jsonl(const std::vector<MaterialisationReport>& reports) {
    std::string out;
    for (const auto& report : reports) {
        for (const auto& w : report.warnings) {
            nlohmann::ordered_json obj;
            obj["dataset"] = report.dataset_name;
            if (w.row_index) obj["row"] = *w.row_index;
            else obj["row"] = nullptr;
            obj["rule"] = w.rule_id;
            obj["message"] = w.message;
            out += obj.dump();
            out += '\n';
        }
    }
    return out;
}

PipelineResult run_pipeline(const mapping::RunConfig& config, const PipelineOptions& opts) {
    PipelineResult result;
    const auto& registry = transforms::UdfRegistry::builtins();
    std::set<std::string> known;
    for (const auto& n : registry.names()) known.insert(n);

    for (const auto& section : config.datasets) {
        MaterialisationReport report;
        report.dataset_name = section.name;

        std::string mapping_path = resolve(opts.config_dir, section.mapping_path);
        std::string input_path = resolve(opts.config_dir, section.input_path);

        if (!fs::exists(input_path)) {
            report.warnings.push_back(
                {std::nullopt, "pipeline",
                 "input file '" + section.input_path + "' is missing; section skipped"});
            result.reports.push_back(std::move(report));
            continue;
        }

        mapping::MappingDocument doc;
        try {
            doc = mapping::parse_mapping(csv::read_file(mapping_path));
        } catch (const std::exception& e) {
            report.warnings.push_back(
                {std::nullopt, "pipeline",
                 "mapping file '" + section.mapping_path + "' unusable (" + e.what() +
                     "); section skipped"});
            result.reports.push_back(std::move(report));
            continue;
        }

        Table table;
        try {
            table = load_table(input_path, section.name);
        } catch (const std::exception& e) {
            report.warnings.push_back(
                {std::nullopt, "pipeline",
                 "input file '" + section.input_path + "' unusable (" + e.what() +
                     "); section skipped"});
            result.reports.push_back(std::move(report));
            continue;
        }

        for (const std::string& w : mapping::validate_mapping(doc, known, table.header))
            report.warnings.push_back({std::nullopt, "validate", w});

        auto aligned = align_table(std::move(table), doc.referenced_columns());
        for (auto& w : aligned.warnings) report.warnings.push_back(std::move(w));

        transforms::UdfContext ctx(fs::path(mapping_path).parent_path().string());
        auto exec = execute_mapping(doc, aligned.table, registry, ctx);
        exec.report.warnings.insert(exec.report.warnings.begin(),
                                    std::make_move_iterator(report.warnings.begin()),
                                    std::make_move_iterator(report.warnings.end()));
        exec.report.dataset_name = section.name;

        result.graph.merge(exec.graph);
        result.reports.push_back(std::move(exec.report));
        ++result.sections_materialised;
    }

    if (result.sections_materialised == 0)
        throw PipelineError("no dataset section could be materialised");

    if (opts.write_output) {
        std::string out_path = resolve(opts.config_dir, config.output_file);
        auto fmt = rdf::format_from_name(config.output_format);
        if (!fmt) throw PipelineError("unsupported output format: " + config.output_format);

        fs::path parent = fs::path(out_path).parent_path();
        std::error_code ec;
        if (!parent.empty()) fs::create_directories(parent, ec);

        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("cannot write output file: " + out_path);
        out << rdf::serialize(result.graph, *fmt, rdf::NamespaceTable::builtins());
        out.close();

        std::string report_path = out_path + ".report.jsonl";
        std::ofstream rep(report_path, std::ios::binary);
        if (!rep) throw IoError("cannot write report file: " + report_path);
        rep << report_jsonl(result.reports);
        result.output_path = out_path;
    }
    return result;
}

}  // namespace chadkg::mat
