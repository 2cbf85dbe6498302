#include "sparqlsec/engine/evaluator.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace sparqlsec::engine {

namespace {

std::regex compile(std::string_view pattern, std::string_view flags)
{
    auto syntax = std::regex::ECMAScript;
    if (flags == "i") {
        syntax |= std::regex::icase;
    } else if (!flags.empty()) {
        throw evaluation_error("unsupported regex flags '" + std::string(flags) + "'");
    }
    try {
        return std::regex(pattern.begin(), pattern.end(), syntax);
    } catch (const std::regex_error &e) {
        throw evaluation_error("invalid regex '" + std::string(pattern) + "': " + e.what());
    }
}

std::optional<std::string_view> regex_subject(const rdf::term &t, regex_mode mode)
{
    if (t.is_literal()) {
        return std::string_view(t.value());
    }
    if (t.is_iri() && mode == regex_mode::lenient) {
        return rdf::local_name(t.value());
    }
    return std::nullopt;
}

std::optional<rdf::term> lookup(const sparql::pattern_term &pt, const solution &s)
{
    if (const auto *v = std::get_if<sparql::variable>(&pt)) {
        if (auto it = s.find(v->name); it != s.end()) {
            return it->second;
        }
        return std::nullopt;
    }
    return std::get<rdf::term>(pt);
}

bool bind(solution &s, const sparql::pattern_term &pt, const rdf::term &value)
{
    if (const auto *v = std::get_if<sparql::variable>(&pt)) {
        auto [it, inserted] = s.try_emplace(v->name, value);
        return inserted || it->second == value;
    }
    return true;
}

class evaluator {
public:
    evaluator(const rdf::graph &g, federation_client &fed, const eval_options &options)
        : graph_(g), fed_(fed), options_(options)
    {}

    std::vector<solution> group(const sparql::group_pattern &group, std::vector<solution> input)
    {
        std::vector<std::pair<const sparql::regex_filter *, std::regex>> filters;
        for (const auto &element : group.elements) {
            if (const auto *f = std::get_if<sparql::regex_filter>(&element)) {
                filters.emplace_back(f, compile(f->pattern, f->flags.value_or("")));
            }
        }
        auto current = std::move(input);
        for (const auto &element : group.elements) {
            if (const auto *tp = std::get_if<sparql::triple_pattern>(&element)) {
                current = join_pattern(*tp, current);
            } else if (const auto *svc = std::get_if<sparql::service_clause>(&element)) {
                current = join_service(*svc, current);
            }
        }
        if (filters.empty()) {
            return current;
        }
        std::vector<solution> kept;
        for (auto &row : current) {
            bool pass = true;
            for (const auto &[f, re] : filters) {
                auto it = row.find(f->target.name);
                auto text = it == row.end() ? std::nullopt : regex_subject(it->second, options_.regex);
                if (!text || !std::regex_search(text->begin(), text->end(), re)) {
                    pass = false;
                    break;
                }
            }
            if (pass) {
                kept.push_back(std::move(row));
            }
        }
        return kept;
    }

    solution_set select(const sparql::select_query &q)
    {
        solution_set out;
        auto rows = group(q.where, {solution{}});
        if (q.select_all) {
            for (const auto &v : sparql::in_scope_variables(q.where)) {
                out.variables.push_back(v.name);
            }
        } else {
            for (const auto &v : q.projection) {
                if (std::find(out.variables.begin(), out.variables.end(), v.name) == out.variables.end()) {
                    out.variables.push_back(v.name);
                }
            }
        }
        out.rows.reserve(rows.size());
        for (auto &row : rows) {
            solution projected;
            for (const auto &name : out.variables) {
                if (auto it = row.find(name); it != row.end()) {
                    projected.emplace(name, std::move(it->second));
                }
            }
            out.rows.push_back(std::move(projected));
        }
        if (q.distinct) {
            apply_distinct(out);
        }
        if (q.limit && out.rows.size() > *q.limit) {
            out.rows.resize(*q.limit);
        }
        return out;
    }

private:
    std::vector<solution> join_pattern(const sparql::triple_pattern &tp, const std::vector<solution> &input)
    {
        std::vector<solution> out;
        for (const auto &row : input) {
            auto s = lookup(tp.subject, row);
            auto p = lookup(tp.predicate, row);
            auto o = lookup(tp.object, row);
            for (const auto &t : graph_.match(s, p, o)) {
                solution extended = row;
                if (bind(extended, tp.subject, t.subject) && bind(extended, tp.predicate, t.predicate) &&
                    bind(extended, tp.object, t.object)) {
                    out.push_back(std::move(extended));
                }
            }
        }
        return out;
    }

    std::vector<solution> join_service(const sparql::service_clause &svc, const std::vector<solution> &input)
    {
        solution_set remote;
        if (const auto *sub = std::get_if<sparql::box<sparql::select_query>>(&svc.body)) {
            remote = fed_.execute(svc.endpoint.value(), **sub);
        } else {
            sparql::select_query wrapped;
            wrapped.select_all = true;
            wrapped.where = *std::get<sparql::box<sparql::group_pattern>>(svc.body);
            remote = fed_.execute(svc.endpoint.value(), wrapped);
        }
        std::vector<solution> out;
        for (const auto &row : input) {
            for (const auto &r : remote.rows) {
                if (compatible(row, r)) {
                    solution merged = row;
                    merged.insert(r.begin(), r.end());
                    out.push_back(std::move(merged));
                }
            }
        }
        return out;
    }

    const rdf::graph &graph_;
    federation_client &fed_;
    const eval_options &options_;
};

} // namespace

bool eval_regex(const rdf::term &t, std::string_view pattern, std::string_view flags, regex_mode mode)
{
    auto re = compile(pattern, flags);
    auto text = regex_subject(t, mode);
    return text && std::regex_search(text->begin(), text->end(), re);
}

solution_set eval_select(
    const sparql::select_query &q, const rdf::graph &g, federation_client &fed, const eval_options &options)
{
    return evaluator(g, fed, options).select(q);
}

solution_set eval_select(const sparql::select_query &q, const rdf::graph &g, const eval_options &options)
{
    no_federation none;
    return eval_select(q, g, none, options);
}

std::vector<solution> eval_group(
    const sparql::group_pattern &group, const rdf::graph &g, federation_client &fed, const eval_options &options)
{
    return evaluator(g, fed, options).group(group, {solution{}});
}

std::optional<rdf::triple> instantiate(const sparql::triple_pattern &pattern, const solution &s)
{
    auto subject = lookup(pattern.subject, s);
    auto predicate = lookup(pattern.predicate, s);
    auto object = lookup(pattern.object, s);
    if (!subject || !predicate || !object) {
        return std::nullopt;
    }
    rdf::triple t{std::move(*subject), std::move(*predicate), std::move(*object)};
    if (!rdf::is_valid(t)) {
        return std::nullopt;
    }
    return t;
}

std::size_t delete_matching(rdf::graph &g, const sparql::triple_pattern &pattern, std::span<const solution> bindings)
{
    std::size_t removed = 0;
    for (const auto &s : bindings) {
        if (auto t = instantiate(pattern, s)) {
            removed += g.erase(*t) ? 1 : 0;
        }
    }
    return removed;
}

mutation_report eval_update(
    const sparql::update_request &u, rdf::graph &g, federation_client &fed, const eval_options &options)
{
    auto solutions = eval_group(u.where, g, fed, options);

    std::set<rdf::triple> to_delete;
    std::vector<rdf::triple> to_insert;
    for (const auto &s : solutions) {
        for (const auto &tp : u.delete_template) {
            if (auto t = instantiate(tp, s)) {
                to_delete.insert(std::move(*t));
            }
        }
        for (const auto &tp : u.insert_template) {
            for (const auto &v : sparql::variables_of(tp)) {
                if (!s.contains(v.name)) {
                    throw evaluation_error("variable ?" + v.name + " is unbound in the INSERT template");
                }
            }
            if (auto t = instantiate(tp, s)) {
                to_insert.push_back(std::move(*t));
            }
        }
    }

    mutation_report report;
    for (const auto &t : to_delete) {
        if (g.erase(t)) {
            report.removed_triples.push_back(t);
        }
    }
    for (const auto &t : to_insert) {
        if (g.insert(t)) {
            report.added_triples.push_back(t);
        }
    }
    report.removed = report.removed_triples.size();
    report.added = report.added_triples.size();
    return report;
}

mutation_report eval_update(const sparql::update_request &u, rdf::graph &g, const eval_options &options)
{
    no_federation none;
    return eval_update(u, g, none, options);
}

} // namespace sparqlsec::engine
