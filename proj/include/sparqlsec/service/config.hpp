#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace sparqlsec::service {

/// How the service turns request fields into query text.
enum class endpoint_mode {
    /// Splice between quotes, whole template tail on the splice line.
    vulnerable,
    /// Splice between quotes, template tail on the following lines.
    multiline,
    /// Blacklist check, then the vulnerable splice.
    filtered,
    /// Bind into a parameterized template.
    parameterized,
};

std::string_view to_string(endpoint_mode m) noexcept;
/// Throws std::invalid_argument on an unknown name.
endpoint_mode parse_mode(std::string_view name);

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rewrite target that routes an endpoint IRI to the in-process external
/// graph.
inline constexpr std::string_view internal_endpoint = "internal";

struct service_config {
    std::string host = "127.0.0.1";
    std::uint16_t port = 8080;
    endpoint_mode default_mode = endpoint_mode::parameterized;
    std::filesystem::path local_fixture;
    std::filesystem::path external_fixture;
    /// SERVICE endpoint IRI to "internal" or an http:// URL.
    std::map<std::string, std::string> rewrite{
        {"http://DBpedia.org/sparql", std::string(internal_endpoint)},
        {"http://dbpedia.org/sparql", std::string(internal_endpoint)},
    };
    std::filesystem::path snapshot_dir;
    std::optional<std::filesystem::path> blacklist_path;
    std::optional<std::filesystem::path> query_log_path;
    /// Permits vulnerable and multiline modes.
    bool unsafe = false;
    /// Vulnerable templates use fixed constants (hc:P2, "Gareath", "Ethan")
    /// in place of the submitted names.
    bool paper_exact = false;
    /// Include the effective query text in responses.
    bool debug_effective_query = false;
    /// Enables the /store endpoints.
    bool admin = false;
};

/// Fills unset fixture and snapshot paths from the data directory.
service_config with_default_paths(service_config c);

nlohmann::json to_json(const service_config &c);
/// Keys mirror the field names; missing keys keep their defaults.
service_config config_from_json(const nlohmann::json &j);
service_config load_config(const std::filesystem::path &path);

/// Vulnerable and multiline modes are refused unless `unsafe` is set.
bool mode_permitted(const service_config &c, endpoint_mode m) noexcept;

} // namespace sparqlsec::service
