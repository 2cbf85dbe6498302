#pragma once

#include <string>
#include <vector>

#include "sparqlsec/sparql/ast.hpp"

namespace sparqlsec::sparql {

/// The parse tree with every constant reduced to its kind and every variable
/// to the index of its first occurrence. Two trees have equal shapes exactly
/// when they differ only in constants of the same kind and a consistent
/// variable renaming.
struct ast_shape {
    std::string label;
    std::vector<ast_shape> children;

    bool operator==(const ast_shape &) const = default;
};

ast_shape shape_of(const select_query &q);
ast_shape shape_of(const update_request &u);
ast_shape shape_of(const operation &op);

/// S-expression rendering, e.g. `(select (project var0) (group ...))`.
std::string to_string(const ast_shape &shape);

} // namespace sparqlsec::sparql
