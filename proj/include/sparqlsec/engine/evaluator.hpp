#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sparqlsec/engine/federation.hpp"
#include "sparqlsec/engine/solution.hpp"
#include "sparqlsec/rdf/graph.hpp"
#include "sparqlsec/sparql/ast.hpp"

namespace sparqlsec::engine {

/// strict: only literals can match. lenient: IRIs match on their local name.
enum class regex_mode { strict, lenient };

struct eval_options {
    regex_mode regex = regex_mode::lenient;
};

/// FILTER regex semantics. Flags may be "" or "i"; anything else, or a
/// pattern that does not compile, throws evaluation_error.
bool eval_regex(const rdf::term &t, std::string_view pattern, std::string_view flags, regex_mode mode = regex_mode::lenient);

/// Patterns joined left to right, filters applied at the end of their group,
/// SERVICE answers joined in place.
solution_set eval_select(
    const sparql::select_query &q, const rdf::graph &g, federation_client &fed, const eval_options &options = {});

solution_set eval_select(const sparql::select_query &q, const rdf::graph &g, const eval_options &options = {});

/// Solutions of a group, unprojected.
std::vector<solution> eval_group(
    const sparql::group_pattern &group, const rdf::graph &g, federation_client &fed, const eval_options &options = {});

struct mutation_report {
    std::size_t added = 0;
    std::size_t removed = 0;
    std::vector<rdf::triple> added_triples;
    std::vector<rdf::triple> removed_triples;
};

/// Evaluates WHERE against the pre-state, removes the instantiated delete
/// template, then adds the instantiated insert template. Delete patterns
/// with a variable the solution leaves unbound are skipped; an unbound
/// insert variable throws before anything changes. Instantiations that are
/// not valid triples (a literal subject, say) are skipped.
mutation_report eval_update(
    const sparql::update_request &u, rdf::graph &g, federation_client &fed, const eval_options &options = {});

mutation_report eval_update(const sparql::update_request &u, rdf::graph &g, const eval_options &options = {});

/// Removes every instantiation of `pattern` under `bindings` and returns how
/// many triples were actually present.
std::size_t delete_matching(rdf::graph &g, const sparql::triple_pattern &pattern, std::span<const solution> bindings);

/// Instantiation of `pattern` under `s`, or nothing if a variable is unbound
/// or the result is not a valid triple.
std::optional<rdf::triple> instantiate(const sparql::triple_pattern &pattern, const solution &s);

} // namespace sparqlsec::engine
