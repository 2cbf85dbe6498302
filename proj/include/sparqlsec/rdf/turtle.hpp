#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sparqlsec/rdf/graph.hpp"

namespace sparqlsec::rdf {

/// Parses the Turtle subset used by the fixtures: `@prefix`/`PREFIX`
/// directives, `;` and `,` lists, prefixed names, `<IRI>`, blank node labels,
/// `"..."` literals with `^^` or `@lang`, integers and `#` comments.
///
/// Throws sparql::syntax_error (with line and column) on malformed input, an
/// undefined prefix, or a literal in subject position.
graph parse_turtle(std::string_view text, const prefix_map &base_namespaces = {});

graph load_turtle_file(const std::filesystem::path &path, const prefix_map &base_namespaces = {});

/// One triple per line in canonical N-Triples form, lines sorted
/// lexicographically, trailing newline after every line.
std::string dump_snapshot(const graph &g);

/// Inverse of dump_snapshot().
graph load_snapshot(std::string_view text);

std::string read_text_file(const std::filesystem::path &path);

} // namespace sparqlsec::rdf
