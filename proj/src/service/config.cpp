#include "sparqlsec/service/config.hpp"

#include "sparqlsec/rdf/store.hpp"
#include "sparqlsec/rdf/turtle.hpp"

namespace sparqlsec::service {

std::string_view to_string(endpoint_mode m) noexcept
{
    switch (m) {
    case endpoint_mode::vulnerable:
        return "vulnerable";
    case endpoint_mode::multiline:
        return "multiline";
    case endpoint_mode::filtered:
        return "filtered";
    case endpoint_mode::parameterized:
        return "parameterized";
    }
    return "unknown";
}

endpoint_mode parse_mode(std::string_view name)
{
    for (auto m : {endpoint_mode::vulnerable, endpoint_mode::multiline, endpoint_mode::filtered,
             endpoint_mode::parameterized}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

service_config with_default_paths(service_config c)
{
    auto data = rdf::default_data_dir();
    if (c.local_fixture.empty()) {
        c.local_fixture = data / "fixtures" / "hcsws_local.ttl";
    }
    if (c.external_fixture.empty()) {
        c.external_fixture = data / "fixtures" / "dbpedia_mock.ttl";
    }
    if (c.snapshot_dir.empty()) {
        c.snapshot_dir = "snapshots";
    }
    return c;
}

nlohmann::json to_json(const service_config &c)
{
    nlohmann::json j{
        {"host", c.host},
        {"port", c.port},
        {"default_mode", to_string(c.default_mode)},
        {"local_fixture", c.local_fixture.string()},
        {"external_fixture", c.external_fixture.string()},
        {"rewrite", c.rewrite},
        {"snapshot_dir", c.snapshot_dir.string()},
        {"unsafe", c.unsafe},
        {"paper_exact", c.paper_exact},
        {"debug_effective_query", c.debug_effective_query},
        {"admin", c.admin},
    };
    j["blacklist_path"] = c.blacklist_path ? nlohmann::json(c.blacklist_path->string()) : nlohmann::json();
    j["query_log_path"] = c.query_log_path ? nlohmann::json(c.query_log_path->string()) : nlohmann::json();
    return j;
}

service_config config_from_json(const nlohmann::json &j)
{
    service_config c;
    try {
        if (!j.is_object()) {
            throw config_error("config must be a JSON object");
        }
        c.host = j.value("host", c.host);
        c.port = j.value("port", c.port);
        if (j.contains("default_mode")) {
            c.default_mode = parse_mode(j.at("default_mode").get<std::string>());
        }
        c.local_fixture = j.value("local_fixture", std::string());
        c.external_fixture = j.value("external_fixture", std::string());
        if (j.contains("rewrite")) {
            c.rewrite = j.at("rewrite").get<std::map<std::string, std::string>>();
        }
        c.snapshot_dir = j.value("snapshot_dir", std::string());
        if (j.contains("blacklist_path") && !j.at("blacklist_path").is_null()) {
            c.blacklist_path = j.at("blacklist_path").get<std::string>();
        }
        if (j.contains("query_log_path") && !j.at("query_log_path").is_null()) {
            c.query_log_path = j.at("query_log_path").get<std::string>();
        }
        c.unsafe = j.value("unsafe", c.unsafe);
        c.paper_exact = j.value("paper_exact", c.paper_exact);
        c.debug_effective_query = j.value("debug_effective_query", c.debug_effective_query);
        c.admin = j.value("admin", c.admin);
    } catch (const nlohmann::json::exception &e) {
        throw config_error(std::string("invalid config: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw config_error(std::string("invalid config: ") + e.what());
    }
    return c;
}

service_config load_config(const std::filesystem::path &path)
{
    try {
        return config_from_json(nlohmann::json::parse(rdf::read_text_file(path)));
    } catch (const nlohmann::json::parse_error &e) {
        throw config_error(path.string() + ": " + e.what());
    }
}

bool mode_permitted(const service_config &c, endpoint_mode m) noexcept
{
    return c.unsafe || (m != endpoint_mode::vulnerable && m != endpoint_mode::multiline);
}

} // namespace sparqlsec::service
