#include "sparqlsec/engine/federation.hpp"

#include <httplib.h>

#include "sparqlsec/engine/evaluator.hpp"
#include "sparqlsec/engine/sparql_json.hpp"
#include "sparqlsec/sparql/serializer.hpp"

namespace sparqlsec::engine {

namespace {

struct url_parts {
    std::string origin;
    std::string path;
};

url_parts split_url(const std::string &url)
{
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos || url.compare(0, scheme_end, "http") != 0) {
        throw federation_error("unsupported endpoint URL '" + url + "'");
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

solution_set no_federation::execute(const std::string &endpoint, const sparql::select_query &)
{
    throw federation_error("unknown SERVICE endpoint <" + endpoint + ">");
}

void federation_registry::add_handler(std::string endpoint, handler h)
{
    handlers_[std::move(endpoint)] = std::move(h);
}

void federation_registry::add_graph(std::string endpoint, std::shared_ptr<const rdf::graph> g)
{
    add_handler(std::move(endpoint), [g = std::move(g)](const sparql::select_query &q) {
        no_federation none;
        return eval_select(q, *g, none);
    });
}

void federation_registry::add_http(std::string endpoint, std::string url)
{
    add_handler(std::move(endpoint), [url = std::move(url)](const sparql::select_query &q) { return http_select(url, q); });
}

solution_set federation_registry::execute(const std::string &endpoint, const sparql::select_query &query)
{
    auto it = handlers_.find(endpoint);
    if (it == handlers_.end()) {
        throw federation_error("unknown SERVICE endpoint <" + endpoint + ">");
    }
    return it->second(query);
}

solution_set http_select(const std::string &url, const sparql::select_query &query)
{
    auto [origin, path] = split_url(url);
    httplib::Client client(origin);
    client.set_connection_timeout(5);
    client.set_read_timeout(10);
    auto res = client.Post(path, {{"Accept", "application/sparql-results+json"}}, sparql::serialize(query),
        "application/sparql-query");
    if (!res) {
        throw federation_error("endpoint " + url + " unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw federation_error("endpoint " + url + " answered HTTP " + std::to_string(res->status));
    }
    try {
        return from_sparql_json(nlohmann::json::parse(res->body));
    } catch (const nlohmann::json::parse_error &e) {
        throw federation_error(std::string("endpoint returned invalid JSON: ") + e.what());
    }
}

} // namespace sparqlsec::engine
