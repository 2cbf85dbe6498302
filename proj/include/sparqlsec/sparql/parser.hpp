#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sparqlsec/sparql/ast.hpp"
#include "sparqlsec/sparql/lexer.hpp"

namespace sparqlsec::sparql {

// Grammar subset, keywords case-insensitive:
//
//   query   := prologue SELECT DISTINCT? (var+ | '*') WHERE? group (LIMIT int)?
//   update  := prologue DELETE WHERE template
//            | prologue DELETE template (INSERT template)? WHERE group
//   group   := '{' (triples | FILTER regex(...) | SERVICE iri '{' (subselect | elements) '}')* '}'
//   triples := subject verb objects (';' verb objects)* with ',' object lists
//
// Prefixed names resolve against the prefixes declared in the text first,
// then against the caller's defaults.

select_query parse_query(std::string_view text, const rdf::prefix_map &default_prefixes = {});
update_request parse_update(std::string_view text, const rdf::prefix_map &default_prefixes = {});
/// Dispatches on the first keyword after the prologue.
operation parse_operation(std::string_view text, const rdf::prefix_map &default_prefixes = {});

/// Grammatical position a `@{name}` placeholder occupies.
enum class slot_role { subject, predicate, object, endpoint, regex_pattern, regex_flags, projection };

std::string_view to_string(slot_role role) noexcept;

struct placeholder_site {
    std::string name;
    slot_role role;
    /// Byte range of `@{name}` in the source text.
    std::size_t offset = 0;
    std::size_t length = 0;
};

struct placeholder_parse {
    operation ast;
    std::vector<placeholder_site> sites;
};

/// Parses text containing `@{name}` placeholders. Each placeholder must sit
/// where exactly one term is legal; the returned tree holds a stand-in term
/// at each site.
placeholder_parse parse_with_placeholders(
    std::string_view text, bool expect_update, const rdf::prefix_map &default_prefixes = {});

} // namespace sparqlsec::sparql
