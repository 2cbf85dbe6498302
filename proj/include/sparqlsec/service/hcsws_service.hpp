#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sparqlsec/engine/evaluator.hpp"
#include "sparqlsec/filter/blacklist.hpp"
#include "sparqlsec/rdf/store.hpp"
#include "sparqlsec/service/config.hpp"
#include "sparqlsec/service/query_log.hpp"

namespace sparqlsec::service {

/// The three observable outcomes of a request.
enum class response_state { results, empty, error };

enum class error_kind { none, filter_rejected, parse_error, federation_error, evaluation_error, mode_locked, bad_request };

std::string_view to_string(response_state s) noexcept;
std::string_view to_string(error_kind k) noexcept;
response_state parse_state(std::string_view s);
error_kind parse_error_kind(std::string_view s);

struct service_response {
    response_state state = response_state::empty;
    error_kind error = error_kind::none;
    std::string message;
    endpoint_mode mode = endpoint_mode::parameterized;
    /// Query results (search) with projected variables.
    engine::solution_set results;
    /// Store changes (update, delete).
    std::optional<engine::mutation_report> mutation;
    std::string effective_query;
    std::optional<filter::filter_verdict> verdict;
    std::uint64_t log_sequence = 0;

    /// Every bound term, row by row, as plain strings.
    [[nodiscard]] std::vector<std::string> values() const;
};

/// `include_query` controls whether effective_query is written.
nlohmann::json to_json(const service_response &r, bool include_query);
service_response response_from_json(const nlohmann::json &j);

/// The healthcare service: search, rename and delete over the local store,
/// the mock external endpoint, and store administration.
class hcsws_service {
public:
    hcsws_service(service_config config, rdf::fixture_set fixtures);

    /// Loads fixtures from the paths in `config`.
    static std::unique_ptr<hcsws_service> from_config(service_config config);

    service_response search(std::string_view doctor_name, std::optional<endpoint_mode> mode = std::nullopt);
    service_response update_name(
        std::string_view old_name, std::string_view new_name, std::optional<endpoint_mode> mode = std::nullopt);
    service_response delete_patient(std::string_view name, std::optional<endpoint_mode> mode = std::nullopt);

    /// Read-only SELECT against the external graph. Throws
    /// sparql::syntax_error, or std::invalid_argument for updates.
    engine::solution_set external_sparql(std::string_view query_text);

    void reset();
    void load(rdf::graph local);
    [[nodiscard]] std::string snapshot() const;
    [[nodiscard]] std::string fixture_snapshot() const;

    [[nodiscard]] const service_config &config() const noexcept { return config_; }
    [[nodiscard]] rdf::triple_store &store() noexcept { return store_; }
    [[nodiscard]] const rdf::graph &external() const noexcept { return *external_; }
    [[nodiscard]] const filter::blacklist &blacklist() const noexcept { return blacklist_; }
    [[nodiscard]] query_log &log() noexcept { return log_; }

private:
    enum class operation_kind { search, update, remove };

    service_response run(operation_kind op, endpoint_mode mode, const std::vector<std::string_view> &inputs);
    service_response execute_text(operation_kind op, const std::string &text, service_response r);
    service_response execute_bound(operation_kind op, const std::vector<std::string_view> &inputs, service_response r);
    service_response finish(operation_kind op, service_response r);

    service_config config_;
    rdf::triple_store fixture_local_;
    std::shared_ptr<const rdf::graph> external_;
    rdf::triple_store store_;
    engine::federation_registry federation_;
    filter::blacklist blacklist_;
    query_log log_;
};

} // namespace sparqlsec::service
