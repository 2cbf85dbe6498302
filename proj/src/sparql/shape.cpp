#include "sparqlsec/sparql/shape.hpp"

#include <map>

namespace sparqlsec::sparql {

namespace {

class shaper {
public:
    ast_shape select(const select_query &q)
    {
        ast_shape node{q.distinct ? "select-distinct" : "select", {}};
        ast_shape projection{q.select_all ? "project-all" : "project", {}};
        for (const auto &v : q.projection) {
            projection.children.push_back(var(v));
        }
        node.children.push_back(std::move(projection));
        node.children.push_back(group(q.where));
        if (q.limit) {
            node.children.push_back({"limit", {}});
        }
        return node;
    }

    ast_shape update(const update_request &u)
    {
        if (u.form == update_form::delete_where) {
            return {"delete-where", {templ("delete", u.delete_template)}};
        }
        return {"modify", {templ("delete", u.delete_template), templ("insert", u.insert_template), group(u.where)}};
    }

private:
    ast_shape templ(const char *label, const std::vector<triple_pattern> &patterns)
    {
        ast_shape node{label, {}};
        for (const auto &tp : patterns) {
            node.children.push_back(pattern(tp));
        }
        return node;
    }

    ast_shape group(const group_pattern &g)
    {
        ast_shape node{"group", {}};
        for (const auto &element : g.elements) {
            if (const auto *tp = std::get_if<triple_pattern>(&element)) {
                node.children.push_back(pattern(*tp));
            } else if (const auto *f = std::get_if<regex_filter>(&element)) {
                ast_shape filter{"regex", {var(f->target), {"string", {}}}};
                if (f->flags) {
                    filter.children.push_back({"string", {}});
                }
                node.children.push_back(std::move(filter));
            } else {
                const auto &svc = std::get<service_clause>(element);
                ast_shape service{"service", {term(svc.endpoint)}};
                if (const auto *inner = std::get_if<box<group_pattern>>(&svc.body)) {
                    service.children.push_back(group(**inner));
                } else {
                    service.children.push_back(select(*std::get<box<select_query>>(svc.body)));
                }
                node.children.push_back(std::move(service));
            }
        }
        return node;
    }

    ast_shape pattern(const triple_pattern &tp)
    {
        return {"triple", {term(tp.subject), term(tp.predicate), term(tp.object)}};
    }

    ast_shape term(const pattern_term &t)
    {
        if (const auto *v = std::get_if<variable>(&t)) {
            return var(*v);
        }
        return term(std::get<rdf::term>(t));
    }

    static ast_shape term(const rdf::term &t)
    {
        switch (t.kind()) {
        case rdf::term_kind::iri:
            return {"iri", {}};
        case rdf::term_kind::literal:
            return {"literal", {}};
        case rdf::term_kind::blank:
            return {"blank", {}};
        }
        return {"term", {}};
    }

    ast_shape var(const variable &v)
    {
        auto [it, inserted] = indices_.try_emplace(v.name, indices_.size());
        return {"var" + std::to_string(it->second), {}};
    }

    std::map<std::string, std::size_t> indices_;
};

void render(const ast_shape &shape, std::string &out)
{
    if (shape.children.empty()) {
        out += shape.label;
        return;
    }
    out += "(" + shape.label;
    for (const auto &child : shape.children) {
        out += ' ';
        render(child, out);
    }
    out += ")";
}

} // namespace

ast_shape shape_of(const select_query &q) { return shaper().select(q); }

ast_shape shape_of(const update_request &u) { return shaper().update(u); }

ast_shape shape_of(const operation &op)
{
    return std::visit([](const auto &x) { return shape_of(x); }, op);
}

std::string to_string(const ast_shape &shape)
{
    std::string out;
    render(shape, out);
    return out;
}

} // namespace sparqlsec::sparql
