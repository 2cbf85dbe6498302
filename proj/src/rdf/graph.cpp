#include "sparqlsec/rdf/graph.hpp"

namespace sparqlsec::rdf {

void validate(const triple &t)
{
    if (!t.predicate.is_iri()) {
        throw term_error("triple predicate must be an IRI: " + to_ntriples(t.predicate));
    }
    if (t.subject.is_literal()) {
        throw term_error("triple subject must not be a literal: " + to_ntriples(t.subject));
    }
}

bool is_valid(const triple &t) noexcept { return t.predicate.is_iri() && !t.subject.is_literal(); }

bool graph::insert(const triple &t)
{
    validate(t);
    return triples_.insert(t).second;
}

std::size_t graph::insert(std::span<const triple> ts)
{
    for (const auto &t : ts) {
        validate(t);
    }
    std::size_t added = 0;
    for (const auto &t : ts) {
        added += triples_.insert(t).second ? 1 : 0;
    }
    return added;
}

bool graph::erase(const triple &t) { return triples_.erase(t) > 0; }

std::size_t graph::erase(std::span<const triple> ts)
{
    std::size_t removed = 0;
    for (const auto &t : ts) {
        removed += triples_.erase(t);
    }
    return removed;
}

std::vector<triple> graph::match(const std::optional<term> &s, const std::optional<term> &p,
    const std::optional<term> &o) const
{
    std::vector<triple> out;
    for (const auto &t : triples_) {
        if ((s && t.subject != *s) || (p && t.predicate != *p) || (o && t.object != *o)) {
            continue;
        }
        out.push_back(t);
    }
    return out;
}

} // namespace sparqlsec::rdf
