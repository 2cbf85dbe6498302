#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparqlsec/rdf/term.hpp"

namespace sparqlsec::engine {

/// Variable name (no sigil) to bound term.
using solution = std::map<std::string, rdf::term>;

struct solution_set {
    /// Projected variables in projection order.
    std::vector<std::string> variables;
    std::vector<solution> rows;
    bool distinct_applied = false;

    [[nodiscard]] std::size_t size() const noexcept { return rows.size(); }
    [[nodiscard]] bool empty() const noexcept { return rows.empty(); }
};

/// Unknown or unreachable SERVICE endpoint, or a malformed remote answer.
class federation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Regex compile failures, unsupported flags, unbound template variables.
class evaluation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two solutions are compatible when every shared variable has the same term.
bool compatible(const solution &a, const solution &b);

/// Keeps the first occurrence of every row.
void apply_distinct(solution_set &s);

} // namespace sparqlsec::engine
