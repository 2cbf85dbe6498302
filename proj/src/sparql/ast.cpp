#include "sparqlsec/sparql/ast.hpp"

#include <algorithm>

namespace sparqlsec::sparql {

bool service_clause::operator==(const service_clause &other) const
{
    return endpoint == other.endpoint && body == other.body;
}

namespace {

void add_unique(std::vector<variable> &out, const variable &v)
{
    if (std::find(out.begin(), out.end(), v) == out.end()) {
        out.push_back(v);
    }
}

void collect(const group_pattern &group, std::vector<variable> &out)
{
    for (const auto &element : group.elements) {
        if (const auto *tp = std::get_if<triple_pattern>(&element)) {
            for (const auto &v : variables_of(*tp)) {
                add_unique(out, v);
            }
        } else if (const auto *svc = std::get_if<service_clause>(&element)) {
            if (const auto *inner = std::get_if<box<group_pattern>>(&svc->body)) {
                collect(**inner, out);
            } else {
                const auto &sub = *std::get<box<select_query>>(svc->body);
                if (sub.select_all) {
                    collect(sub.where, out);
                } else {
                    for (const auto &v : sub.projection) {
                        add_unique(out, v);
                    }
                }
            }
        }
    }
}

} // namespace

std::vector<variable> variables_of(const triple_pattern &pattern)
{
    std::vector<variable> out;
    for (const auto *pt : {&pattern.subject, &pattern.predicate, &pattern.object}) {
        if (const auto *v = std::get_if<variable>(pt)) {
            add_unique(out, *v);
        }
    }
    return out;
}

std::vector<variable> in_scope_variables(const group_pattern &group)
{
    std::vector<variable> out;
    collect(group, out);
    return out;
}

} // namespace sparqlsec::sparql
