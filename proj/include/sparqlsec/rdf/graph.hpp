#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sparqlsec/rdf/term.hpp"

namespace sparqlsec::rdf {

struct triple {
    term subject;
    term predicate;
    term object;

    auto operator<=>(const triple &) const = default;
    bool operator==(const triple &) const = default;
};

/// Throws term_error unless the predicate is an IRI and the subject is not a
/// literal.
void validate(const triple &t);
[[nodiscard]] bool is_valid(const triple &t) noexcept;

/// A set of triples plus the namespace declarations it was loaded with.
class graph {
public:
    using const_iterator = std::set<triple>::const_iterator;

    graph() = default;
    explicit graph(prefix_map namespaces) : namespaces_(std::move(namespaces)) {}

    /// Adds `t`. Returns false if it was already present.
    bool insert(const triple &t);

    /// Adds every triple of `ts` and returns how many were new. If any triple
    /// is invalid nothing is added.
    std::size_t insert(std::span<const triple> ts);

    bool erase(const triple &t);
    std::size_t erase(std::span<const triple> ts);

    [[nodiscard]] bool contains(const triple &t) const { return triples_.contains(t); }
    [[nodiscard]] std::size_t size() const noexcept { return triples_.size(); }
    [[nodiscard]] bool empty() const noexcept { return triples_.empty(); }
    void clear() noexcept { triples_.clear(); }

    /// Triples matching the given positions; an empty optional is a wildcard.
    [[nodiscard]] std::vector<triple> match(const std::optional<term> &s,
        const std::optional<term> &p, const std::optional<term> &o) const;

    [[nodiscard]] const std::set<triple> &triples() const noexcept { return triples_; }
    [[nodiscard]] const_iterator begin() const noexcept { return triples_.begin(); }
    [[nodiscard]] const_iterator end() const noexcept { return triples_.end(); }

    [[nodiscard]] const prefix_map &namespaces() const noexcept { return namespaces_; }
    prefix_map &namespaces() noexcept { return namespaces_; }

    /// Triple-set equality; namespace declarations are ignored.
    bool operator==(const graph &other) const { return triples_ == other.triples_; }

private:
    std::set<triple> triples_;
    prefix_map namespaces_;
};

} // namespace sparqlsec::rdf
