#include "sparqlsec/safe/query_template.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "sparqlsec/sparql/lexer.hpp"
#include "sparqlsec/sparql/serializer.hpp"

namespace sparqlsec::safe {

namespace {

bool accepts(sparql::slot_role role, const param_value &v)
{
    switch (role) {
    case sparql::slot_role::object:
        return v.is_literal();
    case sparql::slot_role::regex_pattern:
    case sparql::slot_role::regex_flags:
        return v.is_plain_literal();
    case sparql::slot_role::subject:
    case sparql::slot_role::predicate:
    case sparql::slot_role::endpoint:
        return v.is_iri();
    case sparql::slot_role::projection:
        return v.is_variable();
    }
    return false;
}

std::size_t count_placeholder_text(std::string_view text)
{
    static const std::regex marker(R"(@\{[A-Za-z_][A-Za-z0-9_]*\})");
    return static_cast<std::size_t>(std::distance(
        std::cregex_iterator(text.data(), text.data() + text.size(), marker), std::cregex_iterator()));
}

void rename_projection(sparql::group_pattern &g, const std::map<std::string, std::string> &renames);

void rename_projection(sparql::select_query &q, const std::map<std::string, std::string> &renames)
{
    for (auto &v : q.projection) {
        if (auto it = renames.find(v.name); it != renames.end()) {
            v.name = it->second;
        }
    }
    rename_projection(q.where, renames);
}

void rename_projection(sparql::group_pattern &g, const std::map<std::string, std::string> &renames)
{
    for (auto &element : g.elements) {
        if (auto *svc = std::get_if<sparql::service_clause>(&element)) {
            if (auto *sub = std::get_if<sparql::box<sparql::select_query>>(&svc->body)) {
                rename_projection(**sub, renames);
            } else {
                rename_projection(*std::get<sparql::box<sparql::group_pattern>>(svc->body), renames);
            }
        }
    }
}

} // namespace

param_value param_value::plain(std::string s) { return param_value(rdf::term::literal(std::move(s))); }

param_value param_value::typed(std::string s, std::string datatype)
{
    try {
        return param_value(rdf::term::typed_literal(std::move(s), std::move(datatype)));
    } catch (const rdf::term_error &e) {
        throw bind_error(e.what());
    }
}

param_value param_value::lang(std::string s, std::string tag)
{
    try {
        return param_value(rdf::term::lang_literal(std::move(s), std::move(tag)));
    } catch (const rdf::term_error &e) {
        throw bind_error(e.what());
    }
}

param_value param_value::iri(std::string s)
{
    try {
        return param_value(rdf::term::iri(std::move(s)));
    } catch (const rdf::term_error &e) {
        throw bind_error(e.what());
    }
}

param_value param_value::var(std::string name)
{
    auto lexed = sparql::tokenize("?" + name);
    if (!lexed.ok() || lexed.tokens.size() != 1 || lexed.tokens[0].cls != sparql::token_class::variable ||
        lexed.tokens[0].value != name) {
        throw bind_error("invalid variable name '" + name + "'");
    }
    return param_value(sparql::variable{std::move(name)});
}

bool param_value::is_plain_literal() const noexcept
{
    const auto *t = std::get_if<rdf::term>(&term_);
    return t != nullptr && t->is_literal() && t->datatype().empty() && t->language().empty();
}

bool param_value::is_literal() const noexcept
{
    const auto *t = std::get_if<rdf::term>(&term_);
    return t != nullptr && t->is_literal();
}

bool param_value::is_iri() const noexcept
{
    const auto *t = std::get_if<rdf::term>(&term_);
    return t != nullptr && t->is_iri();
}

bool param_value::is_variable() const noexcept { return std::holds_alternative<sparql::variable>(term_); }

std::string param_value::render() const { return sparql::serialize_term(term_); }

query_template::query_template(std::string text, template_kind kind, rdf::prefix_map prefixes)
{
    sparql::placeholder_parse parsed{sparql::select_query{}, {}};
    try {
        parsed = sparql::parse_with_placeholders(text, kind == template_kind::update, prefixes);
    } catch (const sparql::syntax_error &e) {
        throw template_error(std::string("template does not parse: ") + e.what());
    }
    if (count_placeholder_text(text) != parsed.sites.size()) {
        throw template_error("placeholder outside a term position");
    }
    auto shape = sparql::shape_of(parsed.ast);
    data_ = std::make_shared<const data>(data{
        std::move(text), kind, std::move(prefixes), std::move(parsed.sites), std::move(shape), std::move(parsed.ast)});
}

std::vector<std::string> query_template::placeholder_names() const
{
    std::vector<std::string> names;
    for (const auto &site : data_->sites) {
        if (std::find(names.begin(), names.end(), site.name) == names.end()) {
            names.push_back(site.name);
        }
    }
    return names;
}

bound_template query_template::bind(const std::vector<std::pair<std::string, param_value>> &params) const
{
    bound_template out(*this);
    for (const auto &[name, value] : params) {
        out = out.bind(name, value);
    }
    return out;
}

bound_template bound_template::bind(const std::string &name, param_value value) const
{
    bool used = false;
    for (const auto &site : template_.sites()) {
        if (site.name != name) {
            continue;
        }
        used = true;
        if (!accepts(site.role, value)) {
            throw bind_error("value for @{" + name + "} cannot occupy a " + std::string(to_string(site.role)) +
                             " position");
        }
    }
    if (!used) {
        throw bind_error("template has no placeholder @{" + name + "}");
    }
    bound_template out = *this;
    out.values_.insert_or_assign(name, std::move(value));
    return out;
}

sparql::operation bound_template::render_parsed(std::string *text_out) const
{
    auto sites = template_.sites();
    std::sort(sites.begin(), sites.end(), [](const auto &a, const auto &b) { return a.offset > b.offset; });
    std::string text = template_.text();
    for (const auto &site : sites) {
        auto it = values_.find(site.name);
        if (it == values_.end()) {
            throw bind_error("placeholder @{" + site.name + "} is unbound");
        }
        text.replace(site.offset, site.length, it->second.render());
    }
    sparql::operation parsed = sparql::select_query{};
    try {
        parsed = template_.kind() == template_kind::update
                     ? sparql::operation(sparql::parse_update(text, template_.prefixes()))
                     : sparql::operation(sparql::parse_query(text, template_.prefixes()));
    } catch (const sparql::syntax_error &e) {
        throw bind_error(std::string("rendered text does not parse: ") + e.what());
    }
    if (sparql::shape_of(parsed) != expected_shape()) {
        throw bind_error("bound values change the structure of the template");
    }
    if (text_out != nullptr) {
        *text_out = std::move(text);
    }
    return parsed;
}

sparql::ast_shape bound_template::expected_shape() const
{
    std::map<std::string, std::string> renames;
    for (const auto &site : template_.sites()) {
        if (site.role == sparql::slot_role::projection) {
            renames.emplace("slot_" + site.name, std::get<sparql::variable>(values_.at(site.name).term()).name);
        }
    }
    if (renames.empty()) {
        return template_.skeleton_shape();
    }
    auto standin = template_.standin();
    if (auto *q = std::get_if<sparql::select_query>(&standin)) {
        rename_projection(*q, renames);
    }
    return sparql::shape_of(standin);
}

std::string bound_template::render() const
{
    std::string text;
    (void)render_parsed(&text);
    return text;
}

} // namespace sparqlsec::safe
