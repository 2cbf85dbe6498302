#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sparqlsec::attack {

enum class injection_class { sparql, blind_sparql, sparul };
enum class target_endpoint { search, update_new_name, delete_name };
/// Declared in report column order.
enum class asset { local_rdf, external_rdf, local_owl, external_owl };
enum class effect { read, write, remove };
enum class cia { confidentiality, integrity, availability };

enum class oracle_kind {
    /// A returned value is an object of `predicate` in the local store.
    reads_object_of,
    /// Returned values cover every predicate of the local store.
    reads_all_predicates,
    /// A returned value is an object of `predicate` in the external store.
    reads_external_object_of,
    /// A returned value is a predicate only the external store uses.
    reads_external_predicates,
    /// The probe returns rows and the control returns none.
    blind_differential,
    /// Each pattern matches a triple present afterwards but not before.
    adds_triples,
    /// `predicate` was unused before and is used afterwards.
    introduces_predicate,
    /// The store is empty afterwards.
    empties_store,
    /// No ontology triple survives.
    removes_ontology,
};

/// IRIs; an empty optional matches anything.
struct triple_shape {
    std::optional<std::string> subject;
    std::optional<std::string> predicate;
    std::optional<std::string> object;
};

struct oracle_spec {
    oracle_kind kind = oracle_kind::empties_store;
    std::string predicate;
    std::vector<triple_shape> patterns;
};

struct attack_case {
    std::string id;
    int input = 0;
    injection_class cls = injection_class::sparql;
    target_endpoint endpoint = target_endpoint::search;
    std::string payload_verbatim;
    std::string payload_canonical;
    /// Blind cases: the same probe with a range that must not match.
    std::optional<std::string> control_payload;
    /// Update cases: the name being renamed.
    std::optional<std::string> old_name;
    std::string goal;
    asset target_asset = asset::local_rdf;
    effect intended = effect::read;
    cia objective = cia::confidentiality;
    oracle_spec oracle;
    /// The payload relies on `#` to discard the template tail.
    bool hash_comment = true;
    std::string notes;
};

std::string_view to_string(injection_class c) noexcept;
std::string_view to_string(target_endpoint e) noexcept;
std::string_view to_string(asset a) noexcept;
std::string_view to_string(effect e) noexcept;
std::string_view to_string(cia c) noexcept;
std::string_view to_string(oracle_kind k) noexcept;

class corpus_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws corpus_error on schema violations, including a read case whose
/// effect is not read or a SPARUL case aimed at an external asset.
std::vector<attack_case> parse_corpus(const nlohmann::json &doc);
std::vector<attack_case> load_corpus(const std::filesystem::path &path);

/// `<data>/corpus/attack_corpus.json`.
std::filesystem::path default_corpus_path();
std::vector<attack_case> load_default_corpus();

/// Cases whose id is in `ids`, in corpus order. Throws corpus_error on an
/// unknown id.
std::vector<attack_case> select_cases(const std::vector<attack_case> &all, const std::vector<std::string> &ids);

} // namespace sparqlsec::attack
