#include "sparqlsec/sparql/serializer.hpp"

namespace sparqlsec::sparql {

namespace {

class writer {
public:
    explicit writer(const rdf::prefix_map &prefixes) : prefixes_(prefixes) {}

    void prologue()
    {
        for (const auto &[label, iri] : prefixes_) {
            out_ += "PREFIX " + label + ": <" + iri + ">\n";
        }
    }

    void select(const select_query &q, int indent)
    {
        out_ += "SELECT ";
        if (q.distinct) {
            out_ += "DISTINCT ";
        }
        if (q.select_all) {
            out_ += "*";
        } else {
            for (std::size_t i = 0; i < q.projection.size(); ++i) {
                out_ += (i == 0 ? "?" : " ?") + q.projection[i].name;
            }
        }
        out_ += " WHERE ";
        group(q.where, indent);
        if (q.limit) {
            out_ += " LIMIT " + std::to_string(*q.limit);
        }
    }

    void update(const update_request &u)
    {
        if (u.form == update_form::delete_where) {
            out_ += "DELETE WHERE ";
            block(u.delete_template, 0);
            return;
        }
        out_ += "DELETE ";
        block(u.delete_template, 0);
        if (!u.insert_template.empty()) {
            out_ += "\nINSERT ";
            block(u.insert_template, 0);
        }
        out_ += "\nWHERE ";
        group(u.where, 0);
    }

    std::string take() { return std::move(out_); }

private:
    void block(const std::vector<triple_pattern> &patterns, int indent)
    {
        out_ += "{\n";
        for (const auto &tp : patterns) {
            pad(indent + 1);
            pattern(tp);
            out_ += '\n';
        }
        pad(indent);
        out_ += "}";
    }

    void group(const group_pattern &g, int indent)
    {
        out_ += "{\n";
        for (const auto &element : g.elements) {
            pad(indent + 1);
            if (const auto *tp = std::get_if<triple_pattern>(&element)) {
                pattern(*tp);
            } else if (const auto *f = std::get_if<regex_filter>(&element)) {
                out_ += "FILTER regex(?" + f->target.name + ", " + literal(f->pattern);
                if (f->flags) {
                    out_ += ", " + literal(*f->flags);
                }
                out_ += ")";
            } else {
                const auto &svc = std::get<service_clause>(element);
                out_ += "SERVICE " + serialize_term(svc.endpoint, prefixes_) + " ";
                if (const auto *inner = std::get_if<box<group_pattern>>(&svc.body)) {
                    group(**inner, indent + 1);
                } else {
                    out_ += "{ ";
                    select(*std::get<box<select_query>>(svc.body), indent + 1);
                    out_ += " }";
                }
            }
            out_ += '\n';
        }
        pad(indent);
        out_ += "}";
    }

    void pattern(const triple_pattern &tp)
    {
        out_ += serialize_term(tp.subject, prefixes_) + " " + serialize_term(tp.predicate, prefixes_) + " " +
                serialize_term(tp.object, prefixes_) + " .";
    }

    static std::string literal(std::string_view s) { return "\"" + rdf::escape_string(s) + "\""; }

    void pad(int indent) { out_.append(static_cast<std::size_t>(indent) * 2, ' '); }

    const rdf::prefix_map &prefixes_;
    std::string out_;
};

std::string iri_text(const std::string &iri, const rdf::prefix_map &prefixes)
{
    for (const auto &[label, ns] : prefixes) {
        if (iri.size() > ns.size() && iri.starts_with(ns) && rdf::is_valid_name(std::string_view(iri).substr(ns.size()))) {
            return label + ":" + iri.substr(ns.size());
        }
    }
    return "<" + iri + ">";
}

} // namespace

std::string serialize_term(const rdf::term &t, const rdf::prefix_map &prefixes)
{
    switch (t.kind()) {
    case rdf::term_kind::iri:
        return iri_text(t.value(), prefixes);
    case rdf::term_kind::blank:
        return "_:" + t.value();
    case rdf::term_kind::literal:
        break;
    }
    std::string out = "\"" + rdf::escape_string(t.value()) + "\"";
    if (!t.language().empty()) {
        out += "@" + t.language();
    } else if (!t.datatype().empty()) {
        out += "^^" + iri_text(t.datatype(), prefixes);
    }
    return out;
}

std::string serialize_term(const pattern_term &t, const rdf::prefix_map &prefixes)
{
    if (const auto *v = std::get_if<variable>(&t)) {
        return "?" + v->name;
    }
    return serialize_term(std::get<rdf::term>(t), prefixes);
}

std::string serialize(const select_query &q)
{
    writer w(q.prefixes);
    w.prologue();
    w.select(q, 0);
    return w.take() + "\n";
}

std::string serialize(const update_request &u)
{
    writer w(u.prefixes);
    w.prologue();
    w.update(u);
    return w.take() + "\n";
}

std::string serialize(const operation &op)
{
    return std::visit([](const auto &x) { return serialize(x); }, op);
}

} // namespace sparqlsec::sparql
