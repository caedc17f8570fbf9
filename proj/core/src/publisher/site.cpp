#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chadkg/errors.hpp"
#include "chadkg/publisher/site.hpp"
#include "chadkg/resources.hpp"
#include "chadkg/transforms/udf.hpp"

namespace chadkg::publisher {

namespace fs = std::filesystem;

namespace {

std::string html_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string page_shell(const std::string& title, const std::string& site_title,
                       const std::string& asset_prefix, const std::string& home_href,
                       const std::string& body) {
    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n"
        << "<meta charset=\"utf-8\">\n"
        << "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n"
        << "<title>" << html_escape(title) << "</title>\n"
        << "<link rel=\"stylesheet\" href=\"" << asset_prefix << "assets/style.css\">\n"
        << "</head>\n<body>\n"
        << "<header><a href=\"" << home_href << "\">" << html_escape(site_title)
        << "</a></header>\n<main>\n"
        << body << "</main>\n</body>\n</html>\n";
    return out.str();
}

// Horizontal bar chart as inline SVG; widths proportional to counts.
std::string svg_bar_chart(const std::vector<std::pair<std::string, size_t>>& bars) {
    const int row_h = 24, label_w = 260, bar_max = 340, count_w = 60;
    size_t max_count = 1;
    for (const auto& [label, count] : bars) max_count = std::max(max_count, count);
    std::ostringstream out;
    out << "<svg class=\"chart\" width=\"" << label_w + bar_max + count_w << "\" height=\""
        << bars.size() * row_h << "\" role=\"img\">\n";
    int y = 0;
    for (const auto& [label, count] : bars) {
        int w = static_cast<int>(
            std::lround(static_cast<double>(count) / static_cast<double>(max_count) * bar_max));
        out << "  <text x=\"" << label_w - 8 << "\" y=\"" << y + 16
            << "\" text-anchor=\"end\">" << html_escape(label) << "</text>\n";
        out << "  <rect x=\"" << label_w << "\" y=\"" << y + 4 << "\" width=\"" << w
            << "\" height=\"16\"></rect>\n";
        out << "  <text class=\"count\" x=\"" << label_w + w + 6 << "\" y=\"" << y + 16
            << "\">" << count << "</text>\n";
        y += row_h;
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<std::pair<std::string, size_t>> sorted_bars(
    const std::map<std::string, size_t>& histogram) {
    std::vector<std::pair<std::string, size_t>> bars(histogram.begin(), histogram.end());
    std::sort(bars.begin(), bars.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return bars;
}

}  // namespace

std::vector<rdf::Iri> SiteConfig::default_label_properties() {
    return {rdf::vocab::rdfs_label(),
            rdf::Iri("http://www.cidoc-crm.org/cidoc-crm/P190_has_symbolic_content"),
            rdf::Iri("http://www.cidoc-crm.org/cidoc-crm/P3_has_note")};
}

SiteBuilder::SiteBuilder(const rdf::Graph& g, const model::StatsReport& stats, SiteConfig cfg)
    : graph_(g), stats_(stats), cfg_(std::move(cfg)), ns_(rdf::NamespaceTable::builtins()) {
    if (cfg_.base_iri.empty() || cfg_.base_iri.back() != '/')
        throw std::invalid_argument("base IRI must end with '/'");
    if (cfg_.label_properties.empty())
        cfg_.label_properties = SiteConfig::default_label_properties();

    // internal entities: IRI subjects under the base, sorted for stable slugs
    std::vector<std::string> subjects;
    for (const rdf::Triple& t : graph_.triples()) {
        if (const auto* iri = std::get_if<rdf::Iri>(&t.subject)) {
            if (internal(*iri)) subjects.push_back(iri->str());
        }
    }
    std::sort(subjects.begin(), subjects.end());
    subjects.erase(std::unique(subjects.begin(), subjects.end()), subjects.end());

    for (const std::string& s : subjects) {
        rdf::Iri subject(s);
        std::string path = s.substr(cfg_.base_iri.size());
        std::string slug = transforms::slugify(path).value_or("entity");
        std::string candidate = slug;
        for (int n = 2; slug_index_.contains(candidate); ++n)
            candidate = slug + "-" + std::to_string(n);
        slug_index_.emplace(candidate, entities_.size());
        entities_.push_back({subject, label_for(subject), candidate});
    }
}

bool SiteBuilder::internal(const rdf::Iri& iri) const {
    return iri.str().size() > cfg_.base_iri.size() && iri.str().starts_with(cfg_.base_iri);
}

const EntityPage* SiteBuilder::find_by_slug(const std::string& slug) const {
    auto it = slug_index_.find(slug);
    if (it == slug_index_.end()) return nullptr;
    return &entities_[it->second];
}

std::string SiteBuilder::label_for(const rdf::Iri& iri) const {
    for (const rdf::Iri& prop : cfg_.label_properties) {
        std::vector<std::string> found;
        for (const rdf::Term& o : graph_.objects_of(rdf::Resource(iri), prop)) {
            if (const auto* lit = std::get_if<rdf::Literal>(&o)) found.push_back(lit->lexical());
        }
        if (!found.empty()) {
            std::sort(found.begin(), found.end());
            return found.front();
        }
    }
    std::string local = iri.local_name();
    if (internal(iri)) {
        // path-style local names read better with the base stripped
        std::string path = iri.str().substr(cfg_.base_iri.size());
        return path.empty() ? local : path;
    }
    return local;
}

std::string SiteBuilder::iri_display(const rdf::Iri& iri) const {
    if (auto c = ns_.compact(iri)) return c->first + ":" + c->second;
    return iri.str();
}

std::string SiteBuilder::term_html(const rdf::Term& t, const std::string& link_prefix) const {
    if (const auto* iri = std::get_if<rdf::Iri>(&t)) {
        if (internal(*iri)) {
            std::string path = iri->str().substr(cfg_.base_iri.size());
            std::string slug = transforms::slugify(path).value_or("entity");
            // resolve collisions through the authoritative index
            const EntityPage* page = find_by_slug(slug);
            for (int n = 2; page && !(page->subject == *iri); ++n) {
                slug = transforms::slugify(path).value_or("entity") + "-" + std::to_string(n);
                page = find_by_slug(slug);
            }
            if (page)
                return "<a href=\"" + link_prefix + slug + ".html\">" +
                       html_escape(page->label) + "</a>";
            // internal IRI that never appears as a subject: plain text
            return "<code>" + html_escape(iri->str()) + "</code>";
        }
        return "<a href=\"" + html_escape(iri->str()) + "\" rel=\"external\">" +
               html_escape(iri_display(*iri)) + "</a>";
    }
    if (const auto* b = std::get_if<rdf::BlankNode>(&t))
        return "<code>_:" + html_escape(b->label()) + "</code>";
    const auto& lit = std::get<rdf::Literal>(t);
    std::string out = "<span class=\"literal\">" + html_escape(lit.lexical()) + "</span>";
    if (lit.lang()) out += "<span class=\"termmeta\">@" + html_escape(*lit.lang()) + "</span>";
    else if (lit.datatype())
        out += "<span class=\"termmeta\">^^" + html_escape(iri_display(*lit.datatype())) +
               "</span>";
    return out;
}

std::string SiteBuilder::render_entity_page(const EntityPage& e) const {
    std::ostringstream body;
    body << "<h1>" << html_escape(e.label) << "</h1>\n";
    body << "<p class=\"iri\"><code>" << html_escape(e.subject.str()) << "</code></p>\n";
    body << "<p class=\"formats\">Data: "
         << "<a href=\"" << e.slug << ".nt\">N-Triples</a>"
         << "<a href=\"" << e.slug << ".ttl\">Turtle</a>"
         << "<a href=\"" << e.slug << ".jsonld\">JSON-LD</a>"
         << "<a href=\"" << e.slug << ".rdf\">RDF/XML</a></p>\n";

    body << "<h2>Properties</h2>\n<table>\n";
    std::vector<const rdf::Triple*> outbound = graph_.with_subject(rdf::Resource(e.subject));
    std::sort(outbound.begin(), outbound.end(), [](const rdf::Triple* a, const rdf::Triple* b) {
        if (!(a->predicate == b->predicate)) return a->predicate.str() < b->predicate.str();
        return rdf::term_token(a->object) < rdf::term_token(b->object);
    });
    for (const rdf::Triple* t : outbound) {
        body << "<tr><td class=\"pred\">" << html_escape(iri_display(t->predicate))
             << "</td><td>" << term_html(t->object, "") << "</td></tr>\n";
    }
    body << "</table>\n";

    std::vector<const rdf::Triple*> inbound = graph_.with_object(rdf::Term(e.subject));
    if (!inbound.empty()) {
        std::sort(inbound.begin(), inbound.end(), [](const rdf::Triple* a, const rdf::Triple* b) {
            std::string sa = rdf::term_token(a->subject), sb = rdf::term_token(b->subject);
            if (sa != sb) return sa < sb;
            return a->predicate.str() < b->predicate.str();
        });
        body << "<h2>Referenced by</h2>\n<table>\n";
        for (const rdf::Triple* t : inbound) {
            body << "<tr><td>" << term_html(rdf::to_term(t->subject), "")
                 << "</td><td class=\"pred\">" << html_escape(iri_display(t->predicate))
                 << "</td></tr>\n";
        }
        body << "</table>\n";
    }
    return page_shell(e.label + " — " + cfg_.site_title, cfg_.site_title, "../",
                      "../index.html", body.str());
}

std::string SiteBuilder::render_index() const {
    std::ostringstream body;
    body << "<h1>" << html_escape(cfg_.site_title) << "</h1>\n";
    body << "<p>" << entities_.size() << " entities, " << stats_.triple_count
         << " triples. <a href=\"stats.html\">Statistics</a></p>\n";
    body << "<input id=\"search-box\" type=\"search\" placeholder=\"Search entities...\" "
            "autocomplete=\"off\">\n";
    body << "<p id=\"search-count\"></p>\n";
    body << "<ul class=\"entities\" id=\"entity-list\">\n";
    for (const EntityPage& e : entities_) {
        std::vector<std::string> classes;
        for (const rdf::Term& o : graph_.objects_of(rdf::Resource(e.subject), rdf::vocab::rdf_type()))
            if (const auto* iri = std::get_if<rdf::Iri>(&o)) classes.push_back(iri_display(*iri));
        std::sort(classes.begin(), classes.end());
        std::string class_text;
        for (size_t i = 0; i < classes.size(); ++i)
            class_text += (i ? ", " : "") + classes[i];
        body << "<li data-search=\"" << html_escape(e.label + " " + e.slug + " " + class_text)
             << "\"><a href=\"entity/" << e.slug << ".html\">" << html_escape(e.label)
             << "</a>";
        if (!class_text.empty())
            body << "<span class=\"classes\">" << html_escape(class_text) << "</span>";
        body << "</li>\n";
    }
    body << "</ul>\n<script src=\"assets/search.js\"></script>\n";
    return page_shell(cfg_.site_title, cfg_.site_title, "", "index.html", body.str());
}

std::string SiteBuilder::render_stats_page() const {
    std::ostringstream body;
    body << "<h1>Statistics</h1>\n";
    body << "<table>\n"
         << "<tr><td class=\"pred\">Triples</td><td>" << stats_.triple_count << "</td></tr>\n"
         << "<tr><td class=\"pred\">Entities</td><td>" << stats_.entity_count << "</td></tr>\n"
         << "<tr><td class=\"pred\">Classes used</td><td>" << stats_.distinct_classes_used
         << "</td></tr>\n"
         << "<tr><td class=\"pred\">Properties used</td><td>" << stats_.distinct_properties_used
         << "</td></tr>\n"
         << "<tr><td class=\"pred\">Avg. statements per entity</td><td>"
         << stats_.avg_statements_per_entity << "</td></tr>\n</table>\n";

    body << "<h2>Model usage</h2>\n" << svg_bar_chart(sorted_bars(stats_.model_usage));

    auto compact_keys = [&](const std::map<std::string, size_t>& histogram) {
        std::map<std::string, size_t> out;
        for (const auto& [iri_text, count] : histogram) {
            std::string key = iri_text;
            try {
                key = iri_display(rdf::Iri(iri_text));
            } catch (const rdf::TermError&) {
            }
            out[key] += count;
        }
        return out;
    };
    body << "<h2>Entities per class</h2>\n"
         << svg_bar_chart(sorted_bars(compact_keys(stats_.class_histogram)));
    body << "<h2>Property occurrences</h2>\n"
         << svg_bar_chart(sorted_bars(compact_keys(stats_.property_histogram)));
    return page_shell("Statistics — " + cfg_.site_title, cfg_.site_title, "", "index.html",
                      body.str());
}

std::string SiteBuilder::search_index_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const EntityPage& e : entities_) {
        nlohmann::ordered_json o;
        o["slug"] = e.slug;
        o["label"] = e.label;
        nlohmann::ordered_json classes = nlohmann::ordered_json::array();
        std::vector<std::string> cs;
        for (const rdf::Term& t : graph_.objects_of(rdf::Resource(e.subject), rdf::vocab::rdf_type()))
            if (const auto* iri = std::get_if<rdf::Iri>(&t)) cs.push_back(iri_display(*iri));
        std::sort(cs.begin(), cs.end());
        for (const auto& c : cs) classes.push_back(c);
        o["classes"] = classes;
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

std::string SiteBuilder::entity_data(const EntityPage& e, rdf::Format f) const {
    rdf::Graph concise;
    for (const rdf::Triple* t : graph_.with_subject(rdf::Resource(e.subject)))
        concise.insert(*t);
    rdf::NamespaceTable ns = ns_;
    ns.bind("kg", cfg_.base_iri);
    return rdf::serialize(concise, f, ns);
}

std::vector<std::string> SiteBuilder::build() const {
    std::vector<std::string> manifest;
    fs::path root(cfg_.output_dir);
    std::error_code ec;
    fs::create_directories(root / "entity", ec);
    fs::create_directories(root / "assets", ec);
    if (!fs::exists(root)) throw IoError("cannot create output directory: " + cfg_.output_dir);

    auto write = [&](const std::string& rel, const std::string& content) {
        std::ofstream out(root / rel, std::ios::binary);
        if (!out) throw IoError("cannot write " + (root / rel).string());
        out << content;
        manifest.push_back(rel);
    };

    write("index.html", render_index());
    write("stats.html", render_stats_page());
    write("search-index.json", search_index_json());
    write("assets/style.css", resources::kStyleCss);
    write("assets/search.js", resources::kSearchJs);
    for (const EntityPage& e : entities_) {
        write("entity/" + e.slug + ".html", render_entity_page(e));
        write("entity/" + e.slug + ".nt", entity_data(e, rdf::Format::ntriples));
        write("entity/" + e.slug + ".ttl", entity_data(e, rdf::Format::turtle));
        write("entity/" + e.slug + ".jsonld", entity_data(e, rdf::Format::jsonld));
        write("entity/" + e.slug + ".rdf", entity_data(e, rdf::Format::rdfxml));
    }
    std::sort(manifest.begin(), manifest.end());
    return manifest;
}

}  // namespace chadkg::publisher
