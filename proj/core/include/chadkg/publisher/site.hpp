#ifndef CHADKG_PUBLISHER_SITE_HPP
#define CHADKG_PUBLISHER_SITE_HPP

#include <map>
#include <string>
#include <vector>

#include "chadkg/model/model.hpp"
#include "chadkg/rdf/graph.hpp"
#include "chadkg/rdf/io.hpp"

namespace chadkg::publisher {

struct SiteConfig {
    std::string base_iri;    // IRIs under this prefix are "internal"; must end in "/"
    std::string output_dir;
    std::string site_title = "Knowledge Graph";
    std::vector<rdf::Iri> label_properties;  // defaults applied when empty

    static std::vector<rdf::Iri> default_label_properties();
};

struct EntityPage {
    rdf::Iri subject;
    std::string label;
    std::string slug;
};

/// Deterministic site renderer: one HTML page plus four RDF data files per
/// internal entity, a searchable index, and a stats page with inline SVG
/// charts. Building twice from the same graph yields identical bytes.
class SiteBuilder {
public:
    SiteBuilder(const rdf::Graph& g, const model::StatsReport& stats, SiteConfig cfg);

    /// Writes the whole tree under cfg.output_dir; returns the sorted list
    /// of relative paths written.
    std::vector<std::string> build() const;

    const std::vector<EntityPage>& entities() const { return entities_; }
    const EntityPage* find_by_slug(const std::string& slug) const;

    std::string render_index() const;
    std::string render_stats_page() const;
    std::string render_entity_page(const EntityPage& e) const;
    std::string search_index_json() const;

    /// The entity's outbound triples in the given format.
    std::string entity_data(const EntityPage& e, rdf::Format f) const;

    std::string label_for(const rdf::Iri& iri) const;
    const SiteConfig& config() const { return cfg_; }

private:
    bool internal(const rdf::Iri& iri) const;
    std::string term_html(const rdf::Term& t, const std::string& link_prefix) const;
    std::string iri_display(const rdf::Iri& iri) const;

    const rdf::Graph& graph_;
    model::StatsReport stats_;
    SiteConfig cfg_;
    rdf::NamespaceTable ns_;
    std::vector<EntityPage> entities_;          // sorted by subject IRI
    std::map<std::string, size_t> slug_index_;  // slug -> entities_ position
};

}  // namespace chadkg::publisher

#endif
