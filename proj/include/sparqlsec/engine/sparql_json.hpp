#pragma once

#include "json.hpp"

#include "sparqlsec/engine/solution.hpp"

namespace sparqlsec::engine {

/// `{"head": {"vars": [...]}, "results": {"bindings": [...]}}`.
nlohmann::json to_sparql_json(const solution_set &s);

nlohmann::json to_sparql_json(const rdf::term &t);

/// Throws federation_error on documents that do not follow the format.
solution_set from_sparql_json(const nlohmann::json &doc);

rdf::term term_from_sparql_json(const nlohmann::json &binding);

} // namespace sparqlsec::engine
