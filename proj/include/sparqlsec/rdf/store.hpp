#pragma once

#include <filesystem>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>

#include "sparqlsec/rdf/graph.hpp"

namespace sparqlsec::rdf {

/// The local dataset (doctors, patients, reports and the `hc:` ontology) and
/// the mock external dataset that stands in for the public DBpedia endpoint.
struct fixture_set {
    graph local;
    graph external;
};

fixture_set load_fixtures(const std::filesystem::path &local_ttl, const std::filesystem::path &external_ttl);

/// Directory holding the shipped fixtures, corpus and blacklist. Overridable
/// with the SPARQLSEC_DATA_DIR environment variable.
std::filesystem::path default_data_dir();

/// `<data>/fixtures/hcsws_local.ttl` and `<data>/fixtures/dbpedia_mock.ttl`.
fixture_set load_default_fixtures();

/// A graph behind a single-writer / multi-reader lock. Every access goes
/// through read() or write(), so each call is atomic with respect to the
/// others.
class triple_store {
public:
    triple_store() = default;
    explicit triple_store(graph initial) : graph_(std::move(initial)) {}

    template <typename Fn> decltype(auto) read(Fn &&fn) const
    {
        std::shared_lock lock(mutex_);
        return std::forward<Fn>(fn)(std::as_const(graph_));
    }

    template <typename Fn> decltype(auto) write(Fn &&fn)
    {
        std::unique_lock lock(mutex_);
        return std::forward<Fn>(fn)(graph_);
    }

    [[nodiscard]] graph copy() const
    {
        return read([](const graph &g) { return g; });
    }

    [[nodiscard]] std::size_t size() const
    {
        return read([](const graph &g) { return g.size(); });
    }

    void replace(graph g)
    {
        write([&](graph &current) { current = std::move(g); });
    }

    [[nodiscard]] std::string snapshot() const;
    void restore(std::string_view snapshot_text);

private:
    mutable std::shared_mutex mutex_;
    graph graph_;
};

/// An ontology-level triple: a schema declaration rather than instance data.
/// Anything whose predicate lives in the RDFS namespace, and `rdf:type`
/// statements whose object is an OWL or RDFS term.
bool is_ontology_triple(const triple &t);

} // namespace sparqlsec::rdf
