#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sparqlsec/rdf/term.hpp"

namespace sparqlsec::sparql {

/// Owning pointer with value semantics, for the recursive parts of the tree.
template <typename T> class box {
public:
    box(T value) : ptr_(std::make_unique<T>(std::move(value))) {} // NOLINT(google-explicit-constructor)
    box(const box &other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    box(box &&) noexcept = default;
    box &operator=(const box &other)
    {
        if (this != &other) {
            ptr_ = std::make_unique<T>(*other.ptr_);
        }
        return *this;
    }
    box &operator=(box &&) noexcept = default;
    ~box() = default;

    T &operator*() { return *ptr_; }
    const T &operator*() const { return *ptr_; }
    T *operator->() { return ptr_.get(); }
    const T *operator->() const { return ptr_.get(); }

    bool operator==(const box &other) const { return *ptr_ == *other.ptr_; }

private:
    std::unique_ptr<T> ptr_;
};

struct variable {
    std::string name;

    auto operator<=>(const variable &) const = default;
    bool operator==(const variable &) const = default;
};

using pattern_term = std::variant<rdf::term, variable>;

struct triple_pattern {
    pattern_term subject;
    pattern_term predicate;
    pattern_term object;

    bool operator==(const triple_pattern &) const = default;
};

/// `FILTER regex(?var, "pattern")` or `FILTER regex(?var, "pattern", "flags")`.
struct regex_filter {
    variable target;
    std::string pattern;
    std::optional<std::string> flags;

    bool operator==(const regex_filter &) const = default;
};

struct group_pattern;
struct select_query;

struct service_clause {
    rdf::term endpoint;
    std::variant<box<group_pattern>, box<select_query>> body;

    bool operator==(const service_clause &other) const;
};

using group_element = std::variant<triple_pattern, regex_filter, service_clause>;

struct group_pattern {
    std::vector<group_element> elements;

    bool operator==(const group_pattern &) const = default;
};

struct select_query {
    bool distinct = false;
    /// `SELECT *`; projection is empty when set.
    bool select_all = false;
    std::vector<variable> projection;
    group_pattern where;
    std::optional<std::uint64_t> limit;
    /// Prefixes declared in the query text itself.
    rdf::prefix_map prefixes;

    bool operator==(const select_query &) const = default;
};

enum class update_form { delete_insert_where, delete_where };

struct update_request {
    update_form form = update_form::delete_insert_where;
    std::vector<triple_pattern> delete_template;
    std::vector<triple_pattern> insert_template;
    group_pattern where;
    rdf::prefix_map prefixes;

    bool operator==(const update_request &) const = default;
};

using operation = std::variant<select_query, update_request>;

/// Variables in order of first appearance, SERVICE subselects contributing
/// their projection.
std::vector<variable> in_scope_variables(const group_pattern &group);

std::vector<variable> variables_of(const triple_pattern &pattern);

} // namespace sparqlsec::sparql
