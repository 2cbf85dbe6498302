#include "sparqlsec/engine/sparql_json.hpp"

namespace sparqlsec::engine {

nlohmann::json to_sparql_json(const rdf::term &t)
{
    nlohmann::json j;
    switch (t.kind()) {
    case rdf::term_kind::iri:
        j["type"] = "uri";
        break;
    case rdf::term_kind::blank:
        j["type"] = "bnode";
        break;
    case rdf::term_kind::literal:
        j["type"] = "literal";
        if (!t.language().empty()) {
            j["xml:lang"] = t.language();
        } else if (!t.datatype().empty()) {
            j["datatype"] = t.datatype();
        }
        break;
    }
    j["value"] = t.value();
    return j;
}

nlohmann::json to_sparql_json(const solution_set &s)
{
    nlohmann::json bindings = nlohmann::json::array();
    for (const auto &row : s.rows) {
        nlohmann::json b = nlohmann::json::object();
        for (const auto &[name, value] : row) {
            b[name] = to_sparql_json(value);
        }
        bindings.push_back(std::move(b));
    }
    return {{"head", {{"vars", s.variables}}}, {"results", {{"bindings", std::move(bindings)}}}};
}

rdf::term term_from_sparql_json(const nlohmann::json &binding)
{
    try {
        const auto &type = binding.at("type").get_ref<const std::string &>();
        auto value = binding.at("value").get<std::string>();
        if (type == "uri") {
            return rdf::term::iri(std::move(value));
        }
        if (type == "bnode") {
            return rdf::term::blank(std::move(value));
        }
        if (type == "literal" || type == "typed-literal") {
            if (auto it = binding.find("xml:lang"); it != binding.end()) {
                return rdf::term::lang_literal(std::move(value), it->get<std::string>());
            }
            if (auto it = binding.find("datatype"); it != binding.end()) {
                return rdf::term::typed_literal(std::move(value), it->get<std::string>());
            }
            return rdf::term::literal(std::move(value));
        }
        throw federation_error("unknown binding type '" + type + "'");
    } catch (const nlohmann::json::exception &e) {
        throw federation_error(std::string("malformed SPARQL JSON binding: ") + e.what());
    } catch (const rdf::term_error &e) {
        throw federation_error(std::string("invalid term in SPARQL JSON: ") + e.what());
    }
}

solution_set from_sparql_json(const nlohmann::json &doc)
{
    solution_set out;
    try {
        for (const auto &v : doc.at("head").at("vars")) {
            out.variables.push_back(v.get<std::string>());
        }
        for (const auto &b : doc.at("results").at("bindings")) {
            solution row;
            for (const auto &[name, value] : b.items()) {
                row.emplace(name, term_from_sparql_json(value));
            }
            out.rows.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception &e) {
        throw federation_error(std::string("malformed SPARQL JSON results: ") + e.what());
    }
    return out;
}

} // namespace sparqlsec::engine
