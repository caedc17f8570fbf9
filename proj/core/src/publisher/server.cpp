#include <httplib.h>

#include <sstream>

#include "chadkg/publisher/server.hpp"
#include "chadkg/query/query.hpp"

namespace chadkg::publisher {

namespace {

struct MediaChoice {
    enum Kind { html, rdf } kind;
    rdf::Format format;  // meaningful when kind == rdf
};

// First supported entry of the Accept header wins; no header means HTML.
std::optional<MediaChoice> negotiate(const std::string& accept) {
    if (accept.empty()) return MediaChoice{MediaChoice::html, rdf::Format::ntriples};
    std::istringstream in(accept);
    std::string part;
    bool any = false;
    while (std::getline(in, part, ',')) {
        std::string type = part.substr(0, part.find(';'));
        size_t b = type.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        size_t e = type.find_last_not_of(" \t");
        type = type.substr(b, e - b + 1);
        any = true;
        if (type == "*/*" || type == "text/*" || type == "text/html" ||
            type == "application/xhtml+xml")
            return MediaChoice{MediaChoice::html, rdf::Format::ntriples};
        if (type == "application/n-triples") return MediaChoice{MediaChoice::rdf, rdf::Format::ntriples};
        if (type == "text/turtle") return MediaChoice{MediaChoice::rdf, rdf::Format::turtle};
        if (type == "application/ld+json") return MediaChoice{MediaChoice::rdf, rdf::Format::jsonld};
        if (type == "application/rdf+xml") return MediaChoice{MediaChoice::rdf, rdf::Format::rdfxml};
    }
    if (!any) return MediaChoice{MediaChoice::html, rdf::Format::ntriples};
    return std::nullopt;  // 406
}

const char* kConsolePage = R"HTML(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Query console</title>
<style>
body { font-family: Georgia, serif; max-width: 60rem; margin: 1rem auto; padding: 0 1.5rem; }
textarea { width: 100%; height: 10rem; font-family: monospace; font-size: 0.9rem; }
pre { background: #f6f6f6; padding: 0.8rem; overflow: auto; }
.examples a { display: block; font-size: 0.9rem; margin: 0.15rem 0; }
</style>
</head>
<body>
<h1>Query console</h1>
<p>SELECT queries over the loaded graph. Results use the SPARQL JSON format.</p>
<textarea id="q">SELECT ?s ?p ?o WHERE { ?s ?p ?o . } LIMIT 10</textarea>
<p><button id="run">Run</button></p>
<div class="examples">
<strong>Examples</strong>
<a href="#" data-q="SELECT ?work WHERE { ?work a lrmoo:F1_Work . }">All works</a>
<a href="#" data-q="SELECT ?title WHERE { ?w a lrmoo:F1_Work . ?w crm:P102_has_title ?t . ?t crm:P190_has_symbolic_content ?title . }">Work titles</a>
<a href="#" data-q="SELECT ?activity ?actor WHERE { ?activity crm:P14_carried_out_by ?actor . }">Who did what</a>
</div>
<pre id="out"></pre>
<script>
var prefixes = "PREFIX crm: <http://www.cidoc-crm.org/cidoc-crm/>\n" +
  "PREFIX lrmoo: <http://iflastandards.info/ns/lrm/lrmoo/>\n" +
  "PREFIX crmdig: <http://www.ics.forth.gr/isl/CRMdig/>\n";
document.querySelectorAll(".examples a").forEach(function (a) {
  a.addEventListener("click", function (ev) {
    ev.preventDefault();
    document.getElementById("q").value = a.getAttribute("data-q");
  });
});
document.getElementById("run").addEventListener("click", function () {
  var q = document.getElementById("q").value;
  if (q.indexOf("PREFIX") === -1) q = prefixes + q;
  fetch("/sparql?query=" + encodeURIComponent(q))
    .then(function (r) { return r.text(); })
    .then(function (t) { document.getElementById("out").textContent = t; });
});
</script>
</body>
</html>
)HTML";

}  // namespace

struct HttpService::Impl {
    Impl(const rdf::Graph& g, const model::StatsReport& stats, SiteConfig cfg)
        : graph(g), stats(stats), builder(g, stats, std::move(cfg)) {}

    const rdf::Graph& graph;
    model::StatsReport stats;
    SiteBuilder builder;
    httplib::Server server;

    void install_routes() {
        server.Get("/", [this](const httplib::Request&, httplib::Response& res) {
            res.set_content(kConsolePage, "text/html; charset=utf-8");
        });

        server.Get("/sparql", [this](const httplib::Request& req, httplib::Response& res) {
            if (!req.has_param("query")) {
                res.status = 400;
                res.set_content("missing 'query' parameter", "text/plain");
                return;
            }
            try {
                auto q = query::parse_query(req.get_param_value("query"));
                auto table = query::evaluate(q, graph);
                res.set_content(query::results_to_json(table),
                                "application/sparql-results+json");
            } catch (const query::QueryError& e) {
                res.status = 400;
                res.set_content(e.what(), "text/plain");
            }
        });

        server.Get("/stats", [this](const httplib::Request&, httplib::Response& res) {
            res.set_content(model::stats_to_json(stats), "application/json");
        });

        server.Get(R"(/entity/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
            std::string slug = req.matches[1];
            // direct format suffixes mirror the static site layout
            static const std::pair<const char*, rdf::Format> kSuffixes[] = {
                {".nt", rdf::Format::ntriples},
                {".ttl", rdf::Format::turtle},
                {".jsonld", rdf::Format::jsonld},
                {".rdf", rdf::Format::rdfxml},
            };
            for (const auto& [ext, fmt] : kSuffixes) {
                if (slug.ends_with(ext)) {
                    const EntityPage* e = builder.find_by_slug(
                        slug.substr(0, slug.size() - std::string(ext).size()));
                    if (!e) {
                        res.status = 404;
                        res.set_content("no such entity", "text/plain");
                        return;
                    }
                    res.set_content(builder.entity_data(*e, fmt), rdf::format_media_type(fmt));
                    return;
                }
            }
            if (slug.ends_with(".html")) slug.resize(slug.size() - 5);
            const EntityPage* e = builder.find_by_slug(slug);
            if (!e) {
                res.status = 404;
                res.set_content("no such entity", "text/plain");
                return;
            }
            auto choice = negotiate(req.get_header_value("Accept"));
            if (!choice) {
                res.status = 406;
                res.set_content(
                    "supported: text/html, application/n-triples, text/turtle, "
                    "application/ld+json, application/rdf+xml",
                    "text/plain");
                return;
            }
            if (choice->kind == MediaChoice::html) {
                res.set_content(builder.render_entity_page(*e), "text/html; charset=utf-8");
            } else {
                res.set_content(builder.entity_data(*e, choice->format),
                                rdf::format_media_type(choice->format));
            }
        });
    }
};

HttpService::HttpService(const rdf::Graph& g, const model::StatsReport& stats, SiteConfig cfg)
    : impl_(std::make_unique<Impl>(g, stats, std::move(cfg))) {
    impl_->install_routes();
}

HttpService::~HttpService() {
    stop();
}

bool HttpService::listen(const std::string& host, int port) {
    return impl_->server.listen(host, port);
}

bool HttpService::start_async(const std::string& host, int port) {
    if (!impl_->server.bind_to_port(host, port)) return false;
    worker_ = std::thread([this]() { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return true;
}

int HttpService::start_async_any(const std::string& host) {
    int port = impl_->server.bind_to_any_port(host);
    if (port < 0) return -1;
    worker_ = std::thread([this]() { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port;
}

void HttpService::stop() {
    if (impl_) impl_->server.stop();
    if (worker_.joinable()) worker_.join();
}

}  // namespace chadkg::publisher
