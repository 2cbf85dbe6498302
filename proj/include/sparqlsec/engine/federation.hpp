#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "sparqlsec/engine/solution.hpp"
#include "sparqlsec/rdf/graph.hpp"
#include "sparqlsec/sparql/ast.hpp"

namespace sparqlsec::engine {

/// Resolves SERVICE endpoints to something that can answer a SELECT.
class federation_client {
public:
    federation_client() = default;
    federation_client(const federation_client &) = delete;
    federation_client &operator=(const federation_client &) = delete;
    virtual ~federation_client() = default;

    /// Throws federation_error for endpoints it cannot serve.
    virtual solution_set execute(const std::string &endpoint, const sparql::select_query &query) = 0;
};

/// Refuses every endpoint.
class no_federation : public federation_client {
public:
    solution_set execute(const std::string &endpoint, const sparql::select_query &query) override;
};

/// Endpoint IRI to handler. Handlers may evaluate against an in-process graph
/// or forward the query over HTTP.
class federation_registry : public federation_client {
public:
    using handler = std::function<solution_set(const sparql::select_query &)>;

    void add_handler(std::string endpoint, handler h);

    /// Serves `endpoint` from a read-only in-process graph.
    void add_graph(std::string endpoint, std::shared_ptr<const rdf::graph> g);

    /// Forwards to a SPARQL protocol endpoint at `url` (`http://host:port/path`).
    void add_http(std::string endpoint, std::string url);

    [[nodiscard]] bool serves(const std::string &endpoint) const { return handlers_.contains(endpoint); }

    solution_set execute(const std::string &endpoint, const sparql::select_query &query) override;

private:
    std::map<std::string, handler> handlers_;
};

/// POSTs `query` as application/sparql-query to `url` and decodes the SPARQL
/// JSON answer.
solution_set http_select(const std::string &url, const sparql::select_query &query);

} // namespace sparqlsec::engine
