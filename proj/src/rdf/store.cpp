#include "sparqlsec/rdf/store.hpp"

#include <cstdlib>

#include "sparqlsec/rdf/turtle.hpp"

#ifndef SPARQLSEC_DEFAULT_DATA_DIR
#define SPARQLSEC_DEFAULT_DATA_DIR "data"
#endif

namespace sparqlsec::rdf {

fixture_set load_fixtures(const std::filesystem::path &local_ttl, const std::filesystem::path &external_ttl)
{
    return {load_turtle_file(local_ttl), load_turtle_file(external_ttl)};
}

std::filesystem::path default_data_dir()
{
    if (const char *env = std::getenv("SPARQLSEC_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return SPARQLSEC_DEFAULT_DATA_DIR;
}

fixture_set load_default_fixtures()
{
    auto dir = default_data_dir() / "fixtures";
    return load_fixtures(dir / "hcsws_local.ttl", dir / "dbpedia_mock.ttl");
}

std::string triple_store::snapshot() const
{
    return read([](const graph &g) { return dump_snapshot(g); });
}

void triple_store::restore(std::string_view snapshot_text) { replace(load_snapshot(snapshot_text)); }

bool is_ontology_triple(const triple &t)
{
    const auto &p = t.predicate.value();
    if (p.starts_with(ns::rdfs)) {
        return true;
    }
    if (p == rdf_type && t.object.is_iri()) {
        const auto &o = t.object.value();
        return o.starts_with(ns::owl) || o.starts_with(ns::rdfs);
    }
    return false;
}

} // namespace sparqlsec::rdf
