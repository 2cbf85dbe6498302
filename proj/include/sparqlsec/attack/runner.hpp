#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sparqlsec/attack/corpus.hpp"
#include "sparqlsec/attack/target.hpp"
#include "sparqlsec/rdf/store.hpp"

namespace sparqlsec::attack {

/// Result of the weaker check applied to the unmodified payloads: the
/// service accepted the text and spliced it in untouched.
struct verbatim_outcome {
    bool accepted = false;
    bool parsed = false;
    service::response_state state = service::response_state::empty;
    std::string error;
};

struct attack_outcome {
    std::string id;
    service::endpoint_mode mode = service::endpoint_mode::parameterized;
    bool succeeded = false;
    std::string evidence;
    double duration_ms = 0;
    service::response_state state = service::response_state::empty;
    service::error_kind error = service::error_kind::none;
    std::optional<filter::filter_verdict> verdict;
    std::string effective_query;
    std::string pre_snapshot;
    std::string post_snapshot;
    std::optional<verbatim_outcome> verbatim;
};

/// Achieved effects per (injection class, asset) cell.
struct report_matrix {
    std::map<std::pair<injection_class, asset>, std::set<effect>> cells;

    [[nodiscard]] std::set<effect> at(injection_class c, asset a) const;
    [[nodiscard]] bool empty() const;
    bool operator==(const report_matrix &) const = default;
};

/// SPARUL against external assets is outside the experiment.
bool applicable(injection_class c, asset a) noexcept;

/// Table 1 for vulnerable mode, the hash-free write for multiline, nothing
/// for the hardened modes.
report_matrix expected_matrix(service::endpoint_mode mode);

report_matrix aggregate(const std::vector<attack_case> &cases, const std::vector<attack_outcome> &outcomes);

struct corpus_report {
    service::endpoint_mode mode = service::endpoint_mode::parameterized;
    std::vector<attack_outcome> outcomes;
    report_matrix matrix;
    report_matrix expected;
    bool valid = true;
    std::string invalid_reason;
    double duration_ms = 0;

    [[nodiscard]] std::size_t succeeded() const;
    [[nodiscard]] bool matches_expected() const { return valid && matrix == expected; }
};

/// Resets the store, submits the canonical payload (and the control for
/// blind cases), evaluates the oracle and resets again. `fixtures` is the
/// harness's own copy of the datasets.
attack_outcome run_case(const attack_case &c, service::endpoint_mode mode, attack_target &target,
    const rdf::fixture_set &fixtures);

/// Submits the verbatim payload and records whether it went through
/// untouched.
verbatim_outcome run_verbatim(const attack_case &c, service::endpoint_mode mode, attack_target &target);

/// Runs every case in order. Verbatim payloads are also submitted in
/// vulnerable mode. An environment error stops the run and marks the report
/// invalid.
corpus_report run_corpus(const std::vector<attack_case> &cases, service::endpoint_mode mode, attack_target &target,
    const rdf::fixture_set &fixtures);

/// Rows SPARQL / Blind SPARQL / SPARUL, columns Local RDF, External RDF,
/// Local OWL, External OWL.
std::string render_table(const report_matrix &m);

nlohmann::json to_json(const report_matrix &m);
nlohmann::json to_json(const corpus_report &r, const std::vector<attack_case> &cases);

} // namespace sparqlsec::attack
