// chadkg: materialise tabular cultural-heritage metadata into an RDF graph,
// then validate, summarise, query, publish and serve it.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "chadkg/csv.hpp"
#include "chadkg/errors.hpp"
#include "chadkg/materialiser/materialiser.hpp"
#include "chadkg/model/model.hpp"
#include "chadkg/publisher/server.hpp"
#include "chadkg/publisher/site.hpp"
#include "chadkg/query/query.hpp"
#include "chadkg/rdf/io.hpp"

namespace fs = std::filesystem;
using namespace chadkg;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kDataError = 1, kUsageError = 2, kIoError = 3 };

int cmd_materialise(const std::string& config_path) {
    mapping::RunConfig config = mapping::parse_run_config(csv::read_file(config_path));
    mat::PipelineOptions opts;
    opts.config_dir = fs::path(config_path).parent_path().string();
    auto result = mat::run_pipeline(config, opts);

    for (const auto& report : result.reports) {
        for (const auto& w : report.warnings) {
            std::cerr << "warning [" << report.dataset_name << "] "
                      << (w.row_index ? "row " + std::to_string(*w.row_index) + " " : "")
                      << w.rule_id << ": " << w.message << "\n";
        }
    }

    nlohmann::ordered_json summary;
    summary["output"] = result.output_path;
    summary["report"] = result.output_path + ".report.jsonl";
    summary["triples"] = result.graph.size();
    nlohmann::ordered_json datasets = nlohmann::ordered_json::array();
    for (const auto& report : result.reports) {
        nlohmann::ordered_json d;
        d["dataset"] = report.dataset_name;
        d["rows_in"] = report.rows_in;
        d["triples_emitted"] = report.triples_emitted;
        d["triples_skipped"] = report.triples_skipped;
        d["warnings"] = report.warnings.size();
        datasets.push_back(d);
    }
    summary["datasets"] = datasets;
    std::cout << summary.dump(2) << "\n";
    return kOk;
}

std::vector<model::ShapeRule> load_shapes(const std::string& shapes_path) {
    if (shapes_path.empty()) return model::builtin_shapes();
    return model::parse_shapes(csv::read_file(shapes_path));
}

int cmd_validate(const std::string& graph_path, const std::string& shapes_path, bool warn_only) {
    rdf::Graph g = rdf::load_graph_file(graph_path);
    auto report = model::validate(g, load_shapes(shapes_path));
    std::cout << model::validation_to_json(report);
    if (!report.conforms) {
        for (const auto& v : report.violations) std::cerr << "violation: " << v.message << "\n";
        return warn_only ? kOk : kDataError;
    }
    return kOk;
}

int cmd_stats(const std::string& graph_path, const std::string& json_out) {
    rdf::Graph g = rdf::load_graph_file(graph_path);
    std::string json = model::stats_to_json(model::compute_stats(g));
    if (!json_out.empty()) {
        std::ofstream out(json_out, std::ios::binary);
        if (!out) throw IoError("cannot write " + json_out);
        out << json;
    }
    std::cout << json;
    return kOk;
}

int cmd_query(const std::string& graph_path, const std::string& query_file,
              const std::string& query_text) {
    rdf::Graph g = rdf::load_graph_file(graph_path);
    std::string text = query_text;
    if (!query_file.empty()) text = csv::read_file(query_file);
    auto q = query::parse_query(text);
    std::cout << query::results_to_json(query::evaluate(q, g));
    return kOk;
}

int cmd_publish(const std::string& graph_path, const std::string& out_dir,
                const std::string& base_iri, const std::string& title) {
    rdf::Graph g = rdf::load_graph_file(graph_path);
    publisher::SiteConfig cfg;
    cfg.base_iri = base_iri;
    cfg.output_dir = out_dir;
    if (!title.empty()) cfg.site_title = title;
    publisher::SiteBuilder builder(g, model::compute_stats(g), cfg);
    auto manifest = builder.build();
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& p : manifest) j.push_back(p);
    std::cout << j.dump(2) << "\n";
    std::cerr << "site written to " << out_dir << " (" << manifest.size() << " files)\n";
    return kOk;
}

int cmd_serve(const std::string& graph_path, int port, const std::string& base_iri,
              const std::string& title) {
    rdf::Graph g = rdf::load_graph_file(graph_path);
    publisher::SiteConfig cfg;
    cfg.base_iri = base_iri;
    cfg.output_dir = "";
    if (!title.empty()) cfg.site_title = title;
    auto stats = model::compute_stats(g);
    publisher::HttpService service(g, stats, cfg);
    std::cerr << "serving " << g.size() << " triples on http://127.0.0.1:" << port << "\n";
    if (!service.listen("0.0.0.0", port)) {
        std::cerr << "error: cannot bind port " << port << "\n";
        return kIoError;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CHAD-AP knowledge-graph toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path;
    auto* materialise = app.add_subcommand(
        "materialise", "Run the CSV-to-RDF pipeline described by a run configuration");
    materialise->add_option("-c,--config", config_path, "run configuration file")->required();

    std::string graph_path, shapes_path;
    bool warn_only = false;
    auto* validate = app.add_subcommand("validate", "Check a graph against the CHAD-AP shapes");
    validate->add_option("-g,--graph", graph_path, "graph file (.nt or .ttl)")->required();
    validate->add_option("--shapes", shapes_path, "shape rules file (defaults to built-ins)");
    validate->add_flag("--warn-only", warn_only, "report violations without failing");

    std::string stats_graph, stats_json;
    auto* stats = app.add_subcommand("stats", "Compute graph statistics");
    stats->add_option("-g,--graph", stats_graph, "graph file (.nt or .ttl)")->required();
    stats->add_option("--json", stats_json, "also write the JSON report to this path");

    std::string query_graph, query_file, query_text;
    auto* query_cmd = app.add_subcommand("query", "Evaluate a SELECT query against a graph");
    query_cmd->add_option("-g,--graph", query_graph, "graph file (.nt or .ttl)")->required();
    auto* qf = query_cmd->add_option("-q,--query-file", query_file, "file holding the query");
    auto* qe = query_cmd->add_option("-e,--query", query_text, "query text");
    qf->excludes(qe);

    std::string pub_graph, pub_dir, pub_base, pub_title;
    auto* publish = app.add_subcommand("publish", "Generate the static site for a graph");
    publish->add_option("-g,--graph", pub_graph, "graph file (.nt or .ttl)")->required();
    publish->add_option("-o,--output", pub_dir, "output directory")->required();
    publish->add_option("-b,--base-iri", pub_base, "base IRI of internal entities")->required();
    publish->add_option("--title", pub_title, "site title");

    std::string srv_graph, srv_base, srv_title;
    int srv_port = 8080;
    auto* serve = app.add_subcommand("serve", "Serve the query endpoint and entity pages");
    serve->add_option("-g,--graph", srv_graph, "graph file (.nt or .ttl)")->required();
    serve->add_option("-p,--port", srv_port, "TCP port")->required();
    serve->add_option("-b,--base-iri", srv_base, "base IRI of internal entities")->required();
    serve->add_option("--title", srv_title, "site title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help / --version
            return app.exit(e);
        }
        app.exit(e);
        return kUsageError;
    }

    try {
        if (app.got_subcommand(materialise)) return cmd_materialise(config_path);
        if (app.got_subcommand(validate)) return cmd_validate(graph_path, shapes_path, warn_only);
        if (app.got_subcommand(stats)) return cmd_stats(stats_graph, stats_json);
        if (app.got_subcommand(query_cmd)) {
            if (query_file.empty() && query_text.empty()) {
                std::cerr << "error: query needs -q <file> or -e <text>\n";
                return kUsageError;
            }
            return cmd_query(query_graph, query_file, query_text);
        }
        if (app.got_subcommand(publish)) return cmd_publish(pub_graph, pub_dir, pub_base, pub_title);
        if (app.got_subcommand(serve)) return cmd_serve(srv_graph, srv_port, srv_base, srv_title);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}
