#pragma once

#include <string>

#include "sparqlsec/sparql/ast.hpp"

namespace sparqlsec::sparql {

/// Renders a term, compacting IRIs against `prefixes` where the local part is
/// a plain name.
std::string serialize_term(const rdf::term &t, const rdf::prefix_map &prefixes = {});
std::string serialize_term(const pattern_term &t, const rdf::prefix_map &prefixes = {});

/// Text that parses back to an equal tree. Declared prefixes are written as
/// PREFIX lines and used for compaction.
std::string serialize(const select_query &q);
std::string serialize(const update_request &u);
std::string serialize(const operation &op);

} // namespace sparqlsec::sparql
