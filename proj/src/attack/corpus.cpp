#include "sparqlsec/attack/corpus.hpp"

#include <algorithm>

#include "sparqlsec/rdf/store.hpp"
#include "sparqlsec/rdf/turtle.hpp"

namespace sparqlsec::attack {

namespace {

template <typename E, std::size_t N> E parse_enum(const std::string &s, const E (&values)[N], const char *what)
{
    for (auto v : values) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw corpus_error(std::string("unknown ") + what + " '" + s + "'");
}

std::optional<std::string> optional_string(const nlohmann::json &j, const char *key)
{
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<std::string>();
}

attack_case parse_case(const nlohmann::json &j)
{
    static const injection_class classes[] = {injection_class::sparql, injection_class::blind_sparql, injection_class::sparul};
    static const target_endpoint endpoints[] = {
        target_endpoint::search, target_endpoint::update_new_name, target_endpoint::delete_name};
    static const asset assets[] = {asset::local_rdf, asset::external_rdf, asset::local_owl, asset::external_owl};
    static const effect effects[] = {effect::read, effect::write, effect::remove};
    static const cia objectives[] = {cia::confidentiality, cia::integrity, cia::availability};
    static const oracle_kind kinds[] = {oracle_kind::reads_object_of, oracle_kind::reads_all_predicates,
        oracle_kind::reads_external_object_of, oracle_kind::reads_external_predicates, oracle_kind::blind_differential,
        oracle_kind::adds_triples, oracle_kind::introduces_predicate, oracle_kind::empties_store,
        oracle_kind::removes_ontology};

    attack_case c;
    c.id = j.at("id").get<std::string>();
    c.input = j.at("input").get<int>();
    c.cls = parse_enum(j.at("injection_class").get<std::string>(), classes, "injection class");
    c.endpoint = parse_enum(j.at("target_endpoint").get<std::string>(), endpoints, "endpoint");
    c.payload_verbatim = j.at("payload_verbatim").get<std::string>();
    c.payload_canonical = j.at("payload_canonical").get<std::string>();
    c.control_payload = optional_string(j, "control_payload");
    c.old_name = optional_string(j, "old_name");
    c.goal = j.value("goal", "");
    c.target_asset = parse_enum(j.at("asset").get<std::string>(), assets, "asset");
    c.intended = parse_enum(j.at("effect").get<std::string>(), effects, "effect");
    c.objective = parse_enum(j.at("cia").get<std::string>(), objectives, "CIA objective");
    c.hash_comment = j.value("hash_comment", true);
    c.notes = j.value("notes", "");

    const auto &o = j.at("oracle");
    c.oracle.kind = parse_enum(o.at("kind").get<std::string>(), kinds, "oracle");
    c.oracle.predicate = o.value("predicate", "");
    if (o.contains("patterns")) {
        for (const auto &p : o.at("patterns")) {
            c.oracle.patterns.push_back(
                {optional_string(p, "subject"), optional_string(p, "predicate"), optional_string(p, "object")});
        }
    }

    if (c.cls != injection_class::sparul && c.intended != effect::read) {
        throw corpus_error("case " + c.id + ": read injections must have effect 'read'");
    }
    if (c.cls == injection_class::sparul &&
        (c.intended == effect::read || (c.target_asset != asset::local_rdf && c.target_asset != asset::local_owl))) {
        throw corpus_error("case " + c.id + ": SPARUL cases write or delete local assets");
    }
    if (c.oracle.kind == oracle_kind::adds_triples && c.oracle.patterns.empty()) {
        throw corpus_error("case " + c.id + ": adds_triples oracle without patterns");
    }
    if ((c.oracle.kind == oracle_kind::reads_object_of || c.oracle.kind == oracle_kind::reads_external_object_of ||
            c.oracle.kind == oracle_kind::introduces_predicate) &&
        c.oracle.predicate.empty()) {
        throw corpus_error("case " + c.id + ": oracle needs a predicate");
    }
    if (c.oracle.kind == oracle_kind::blind_differential && !c.control_payload) {
        throw corpus_error("case " + c.id + ": blind case without control payload");
    }
    if (c.endpoint == target_endpoint::update_new_name && !c.old_name) {
        throw corpus_error("case " + c.id + ": update case without old_name");
    }
    return c;
}

} // namespace

std::string_view to_string(injection_class c) noexcept
{
    switch (c) {
    case injection_class::sparql:
        return "sparql";
    case injection_class::blind_sparql:
        return "blind_sparql";
    case injection_class::sparul:
        return "sparul";
    }
    return "unknown";
}

std::string_view to_string(target_endpoint e) noexcept
{
    switch (e) {
    case target_endpoint::search:
        return "search";
    case target_endpoint::update_new_name:
        return "update_new_name";
    case target_endpoint::delete_name:
        return "delete_name";
    }
    return "unknown";
}

std::string_view to_string(asset a) noexcept
{
    switch (a) {
    case asset::local_rdf:
        return "local_rdf";
    case asset::external_rdf:
        return "external_rdf";
    case asset::local_owl:
        return "local_owl";
    case asset::external_owl:
        return "external_owl";
    }
    return "unknown";
}

std::string_view to_string(effect e) noexcept
{
    switch (e) {
    case effect::read:
        return "read";
    case effect::write:
        return "write";
    case effect::remove:
        return "delete";
    }
    return "unknown";
}

std::string_view to_string(cia c) noexcept
{
    switch (c) {
    case cia::confidentiality:
        return "confidentiality";
    case cia::integrity:
        return "integrity";
    case cia::availability:
        return "availability";
    }
    return "unknown";
}

std::string_view to_string(oracle_kind k) noexcept
{
    switch (k) {
    case oracle_kind::reads_object_of:
        return "reads_object_of";
    case oracle_kind::reads_all_predicates:
        return "reads_all_predicates";
    case oracle_kind::reads_external_object_of:
        return "reads_external_object_of";
    case oracle_kind::reads_external_predicates:
        return "reads_external_predicates";
    case oracle_kind::blind_differential:
        return "blind_differential";
    case oracle_kind::adds_triples:
        return "adds_triples";
    case oracle_kind::introduces_predicate:
        return "introduces_predicate";
    case oracle_kind::empties_store:
        return "empties_store";
    case oracle_kind::removes_ontology:
        return "removes_ontology";
    }
    return "unknown";
}

std::vector<attack_case> parse_corpus(const nlohmann::json &doc)
{
    std::vector<attack_case> out;
    try {
        for (const auto &c : doc.at("cases")) {
            out.push_back(parse_case(c));
        }
    } catch (const nlohmann::json::exception &e) {
        throw corpus_error(std::string("malformed corpus: ") + e.what());
    }
    return out;
}

std::vector<attack_case> load_corpus(const std::filesystem::path &path)
{
    try {
        return parse_corpus(nlohmann::json::parse(rdf::read_text_file(path)));
    } catch (const nlohmann::json::parse_error &e) {
        throw corpus_error(path.string() + ": " + e.what());
    }
}

std::filesystem::path default_corpus_path() { return rdf::default_data_dir() / "corpus" / "attack_corpus.json"; }

std::vector<attack_case> load_default_corpus() { return load_corpus(default_corpus_path()); }

std::vector<attack_case> select_cases(const std::vector<attack_case> &all, const std::vector<std::string> &ids)
{
    for (const auto &id : ids) {
        if (std::none_of(all.begin(), all.end(), [&](const attack_case &c) { return c.id == id; })) {
            throw corpus_error("unknown case id '" + id + "'");
        }
    }
    std::vector<attack_case> out;
    for (const auto &c : all) {
        if (std::find(ids.begin(), ids.end(), c.id) != ids.end()) {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace sparqlsec::attack
