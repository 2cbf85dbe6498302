#include "sparqlsec/sparql/parser.hpp"

#include <algorithm>
#include <charconv>

namespace sparqlsec::sparql {

namespace {

class parser {
public:
    parser(std::vector<token> tokens, std::size_t text_size, const rdf::prefix_map &defaults,
        std::vector<placeholder_site> *sites)
        : tokens_(std::move(tokens)), text_size_(text_size), defaults_(defaults), sites_(sites)
    {}

    operation parse(std::optional<bool> expect_update)
    {
        prologue();
        if (at_end()) {
            throw error_at_end("expected SELECT or DELETE");
        }
        const auto &head = peek();
        bool is_update = head.is(token_class::keyword, "DELETE");
        bool is_query = head.is(token_class::keyword, "SELECT");
        if (!is_update && !is_query) {
            throw error_at(head, "expected SELECT or DELETE, found '" + head.lexeme + "'");
        }
        if (expect_update && *expect_update != is_update) {
            throw error_at(head, *expect_update ? "expected an update (DELETE ...)" : "expected a SELECT query");
        }
        operation result = is_update ? operation(update()) : operation(select(false));
        if (!at_end()) {
            throw error_at(peek(), "unexpected '" + peek().lexeme + "' after end of " +
                                       (is_update ? "update" : "query"));
        }
        return result;
    }

private:
    void prologue()
    {
        while (!at_end() && peek().is(token_class::keyword, "PREFIX")) {
            take();
            const auto &name = take();
            if (name.cls != token_class::prefixed_name || name.lexeme.back() != ':' ||
                name.lexeme.find(':') != name.lexeme.size() - 1) {
                throw error_at(name, "expected a prefix name ending in ':'");
            }
            const auto &iri = take();
            if (iri.cls != token_class::iri_ref) {
                throw error_at(iri, "expected a namespace IRI");
            }
            declared_[name.lexeme.substr(0, name.lexeme.size() - 1)] = iri.value;
        }
    }

    select_query select(bool nested)
    {
        select_query q;
        expect_keyword("SELECT");
        if (try_keyword("DISTINCT")) {
            q.distinct = true;
        }
        if (try_punct("*")) {
            q.select_all = true;
        } else {
            while (!at_end()) {
                const auto &t = peek();
                if (t.cls == token_class::variable) {
                    q.projection.push_back(variable{take().value});
                } else if (t.cls == token_class::placeholder) {
                    q.projection.push_back(variable{"slot_" + t.value});
                    record(take(), slot_role::projection);
                } else {
                    break;
                }
            }
            if (q.projection.empty()) {
                throw error_here("expected a projection variable or '*'");
            }
        }
        try_keyword("WHERE");
        q.where = group();
        if (try_keyword("LIMIT")) {
            const auto &n = take();
            if (n.cls != token_class::numeric) {
                throw error_at(n, "expected an integer after LIMIT");
            }
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(n.value.data(), n.value.data() + n.value.size(), value);
            if (ec != std::errc{} || ptr != n.value.data() + n.value.size()) {
                throw error_at(n, "LIMIT out of range");
            }
            q.limit = value;
        }
        if (!nested) {
            q.prefixes = declared_;
        }
        return q;
    }

    update_request update()
    {
        update_request u;
        expect_keyword("DELETE");
        if (try_keyword("WHERE")) {
            u.form = update_form::delete_where;
            u.delete_template = quad_template();
            for (const auto &tp : u.delete_template) {
                u.where.elements.emplace_back(tp);
            }
        } else {
            u.form = update_form::delete_insert_where;
            u.delete_template = quad_template();
            if (!at_end() && peek().is(token_class::keyword, "INSERT")) {
                const auto &insert_kw = take();
                u.insert_template = quad_template();
                expect_keyword("WHERE");
                u.where = group();
                auto bound = in_scope_variables(u.where);
                for (const auto &tp : u.insert_template) {
                    for (const auto &v : variables_of(tp)) {
                        if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
                            throw error_at(insert_kw, "variable ?" + v.name +
                                                          " in INSERT template is not bound by WHERE");
                        }
                    }
                }
            } else {
                expect_keyword("WHERE");
                u.where = group();
            }
        }
        u.prefixes = declared_;
        return u;
    }

    std::vector<triple_pattern> quad_template()
    {
        std::vector<triple_pattern> out;
        expect_punct("{");
        while (!check_punct("}")) {
            if (at_end()) {
                throw error_at_end("unterminated template, expected '}'");
            }
            triples_same_subject(out);
            if (!try_punct(".")) {
                break;
            }
        }
        expect_punct("}");
        return out;
    }

    group_pattern group()
    {
        group_pattern g;
        expect_punct("{");
        while (true) {
            if (at_end()) {
                throw error_at_end("unterminated group, expected '}'");
            }
            if (check_punct("}")) {
                break;
            }
            const auto &t = peek();
            if (t.is(token_class::keyword, "FILTER")) {
                g.elements.emplace_back(filter());
                try_punct(".");
            } else if (t.is(token_class::keyword, "SERVICE")) {
                g.elements.emplace_back(service());
                try_punct(".");
            } else {
                std::vector<triple_pattern> block;
                triples_same_subject(block);
                for (auto &tp : block) {
                    g.elements.emplace_back(std::move(tp));
                }
                if (!try_punct(".")) {
                    if (!at_end() && !check_punct("}") && !peek().is(token_class::keyword, "FILTER") &&
                        !peek().is(token_class::keyword, "SERVICE")) {
                        throw error_at(peek(), "expected '.' or '}', found '" + peek().lexeme + "'");
                    }
                }
            }
        }
        expect_punct("}");
        return g;
    }

    regex_filter filter()
    {
        expect_keyword("FILTER");
        bool wrapped = try_punct("(");
        expect_keyword("REGEX");
        expect_punct("(");
        regex_filter f;
        const auto &v = take();
        if (v.cls != token_class::variable) {
            throw error_at(v, "regex expects a variable as its first argument");
        }
        f.target = variable{v.value};
        expect_punct(",");
        f.pattern = string_argument(slot_role::regex_pattern);
        if (try_punct(",")) {
            f.flags = string_argument(slot_role::regex_flags);
        }
        expect_punct(")");
        if (wrapped) {
            expect_punct(")");
        }
        return f;
    }

    std::string string_argument(slot_role role)
    {
        const auto &t = take();
        if (t.cls == token_class::placeholder) {
            record(t, role);
            return role == slot_role::regex_flags ? "" : "x";
        }
        if (t.cls != token_class::string_literal) {
            throw error_at(t, "expected a string literal, found '" + t.lexeme + "'");
        }
        if (!at_end() && (peek().cls == token_class::lang_tag || check_punct("^^"))) {
            throw error_at(peek(), "regex arguments must be plain string literals");
        }
        return t.value;
    }

    service_clause service()
    {
        expect_keyword("SERVICE");
        const auto &e = take();
        rdf::term endpoint = rdf::term::iri("urn:x");
        if (e.cls == token_class::iri_ref) {
            endpoint = make_iri(e.value, e);
        } else if (e.cls == token_class::prefixed_name) {
            endpoint = resolve(e);
        } else if (e.cls == token_class::placeholder) {
            record(e, slot_role::endpoint);
            endpoint = slot_iri(e.value);
        } else {
            throw error_at(e, "SERVICE expects an endpoint IRI");
        }
        if (!at_end() && check_punct("{") && pos_ + 1 < tokens_.size() &&
            tokens_[pos_ + 1].is(token_class::keyword, "SELECT")) {
            take();
            auto sub = select(true);
            expect_punct("}");
            return service_clause{std::move(endpoint), box<select_query>(std::move(sub))};
        }
        return service_clause{std::move(endpoint), box<group_pattern>(group())};
    }

    void triples_same_subject(std::vector<triple_pattern> &out)
    {
        pattern_term subject = subject_term();
        while (true) {
            pattern_term predicate = predicate_term();
            while (true) {
                out.push_back(triple_pattern{subject, predicate, object_term()});
                if (!try_punct(",")) {
                    break;
                }
            }
            if (!try_punct(";")) {
                return;
            }
            while (try_punct(";")) {
            }
            if (at_end() || !starts_verb(peek())) {
                return;
            }
        }
    }

    static bool starts_verb(const token &t)
    {
        return t.cls == token_class::variable || t.cls == token_class::iri_ref ||
               t.cls == token_class::prefixed_name || t.cls == token_class::placeholder ||
               t.is(token_class::keyword, "a");
    }

    pattern_term subject_term()
    {
        const auto &t = take();
        switch (t.cls) {
        case token_class::variable:
            return variable{t.value};
        case token_class::iri_ref:
            return make_iri(t.value, t);
        case token_class::prefixed_name:
            return resolve(t);
        case token_class::placeholder:
            record(t, slot_role::subject);
            return slot_iri(t.value);
        case token_class::string_literal:
        case token_class::numeric:
            throw error_at(t, "literal in subject position");
        default:
            throw error_at(t, "expected a subject, found '" + t.lexeme + "'");
        }
    }

    pattern_term predicate_term()
    {
        if (at_end()) {
            throw error_at_end("expected a predicate");
        }
        const auto &t = take();
        switch (t.cls) {
        case token_class::variable:
            return variable{t.value};
        case token_class::iri_ref:
            return make_iri(t.value, t);
        case token_class::prefixed_name:
            return resolve(t);
        case token_class::placeholder:
            record(t, slot_role::predicate);
            return slot_iri(t.value);
        case token_class::keyword:
            if (t.value == "a") {
                return rdf::term::iri(rdf::rdf_type);
            }
            [[fallthrough]];
        default:
            throw error_at(t, "expected a predicate, found '" + t.lexeme + "'");
        }
    }

    pattern_term object_term()
    {
        if (at_end()) {
            throw error_at_end("expected an object");
        }
        const auto &t = take();
        switch (t.cls) {
        case token_class::variable:
            return variable{t.value};
        case token_class::iri_ref:
            return make_iri(t.value, t);
        case token_class::prefixed_name:
            return resolve(t);
        case token_class::placeholder:
            record(t, slot_role::object);
            return rdf::term::literal("x");
        case token_class::numeric:
            return rdf::term::typed_literal(t.value, rdf::xsd_integer);
        case token_class::string_literal:
            if (!at_end() && peek().cls == token_class::lang_tag) {
                const auto &tag = take();
                try {
                    return rdf::term::lang_literal(t.value, tag.value);
                } catch (const rdf::term_error &e) {
                    throw error_at(tag, e.what());
                }
            }
            if (try_punct("^^")) {
                const auto &dt = take();
                rdf::term datatype = dt.cls == token_class::iri_ref     ? make_iri(dt.value, dt)
                                     : dt.cls == token_class::prefixed_name ? resolve(dt)
                                                                            : throw error_at(dt, "expected a datatype IRI");
                return rdf::term::typed_literal(t.value, datatype.value());
            }
            return rdf::term::literal(t.value);
        default:
            throw error_at(t, "expected an object, found '" + t.lexeme + "'");
        }
    }

    rdf::term resolve(const token &t)
    {
        auto colon = t.lexeme.find(':');
        auto prefix = t.lexeme.substr(0, colon);
        const std::string *ns = nullptr;
        if (auto it = declared_.find(prefix); it != declared_.end()) {
            ns = &it->second;
        } else if (auto jt = defaults_.find(prefix); jt != defaults_.end()) {
            ns = &jt->second;
        }
        if (ns == nullptr) {
            throw error_at(t, "unknown prefix '" + prefix + ":'");
        }
        return make_iri(*ns + t.lexeme.substr(colon + 1), t);
    }

    rdf::term make_iri(const std::string &value, const token &t) const
    {
        try {
            return rdf::term::iri(value);
        } catch (const rdf::term_error &e) {
            throw error_at(t, e.what());
        }
    }

    static rdf::term slot_iri(const std::string &name) { return rdf::term::iri("urn:sparqlsec:slot:" + name); }

    void record(const token &t, slot_role role)
    {
        if (sites_ == nullptr) {
            throw error_at(t, "unexpected placeholder");
        }
        sites_->push_back(placeholder_site{t.value, role, t.offset, t.lexeme.size()});
    }

    void expect_keyword(std::string_view kw)
    {
        if (at_end()) {
            throw error_at_end("expected " + std::string(kw));
        }
        const auto &t = take();
        if (!t.is(token_class::keyword, kw)) {
            throw error_at(t, "expected " + std::string(kw) + ", found '" + t.lexeme + "'");
        }
    }

    bool try_keyword(std::string_view kw)
    {
        if (!at_end() && peek().is(token_class::keyword, kw)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_punct(std::string_view p)
    {
        if (at_end()) {
            throw error_at_end("expected '" + std::string(p) + "'");
        }
        const auto &t = take();
        if (!t.is(token_class::punctuation, p)) {
            throw error_at(t, "expected '" + std::string(p) + "', found '" + t.lexeme + "'");
        }
    }

    [[nodiscard]] bool check_punct(std::string_view p) const
    {
        return !at_end() && peek().is(token_class::punctuation, p);
    }

    bool try_punct(std::string_view p)
    {
        if (check_punct(p)) {
            ++pos_;
            return true;
        }
        return false;
    }

    const token &take()
    {
        if (at_end()) {
            throw error_at_end("unexpected end of input");
        }
        return tokens_[pos_++];
    }

    [[nodiscard]] const token &peek() const { return tokens_[pos_]; }
    [[nodiscard]] bool at_end() const { return pos_ >= tokens_.size(); }

    static syntax_error error_at(const token &t, const std::string &message)
    {
        return syntax_error(message, {t.offset, t.line, t.column});
    }

    [[nodiscard]] syntax_error error_here(const std::string &message) const
    {
        return at_end() ? error_at_end(message) : error_at(peek(), message);
    }

    [[nodiscard]] syntax_error error_at_end(const std::string &message) const
    {
        if (tokens_.empty()) {
            return syntax_error(message, {text_size_, 1, 1});
        }
        const auto &last = tokens_.back();
        return syntax_error(message, {text_size_, last.line, last.column + last.lexeme.size()});
    }

    std::vector<token> tokens_;
    std::size_t text_size_;
    std::size_t pos_ = 0;
    const rdf::prefix_map &defaults_;
    rdf::prefix_map declared_;
    std::vector<placeholder_site> *sites_;
};

operation run(std::string_view text, const rdf::prefix_map &defaults, std::optional<bool> expect_update,
    std::vector<placeholder_site> *sites)
{
    auto tokens = tokenize_strict(text, {.placeholders = sites != nullptr, .turtle = false});
    return parser(std::move(tokens), text.size(), defaults, sites).parse(expect_update);
}

} // namespace

std::string_view to_string(slot_role role) noexcept
{
    switch (role) {
    case slot_role::subject:
        return "subject";
    case slot_role::predicate:
        return "predicate";
    case slot_role::object:
        return "object";
    case slot_role::endpoint:
        return "endpoint";
    case slot_role::regex_pattern:
        return "regex_pattern";
    case slot_role::regex_flags:
        return "regex_flags";
    case slot_role::projection:
        return "projection";
    }
    return "unknown";
}

select_query parse_query(std::string_view text, const rdf::prefix_map &default_prefixes)
{
    return std::get<select_query>(run(text, default_prefixes, false, nullptr));
}

update_request parse_update(std::string_view text, const rdf::prefix_map &default_prefixes)
{
    return std::get<update_request>(run(text, default_prefixes, true, nullptr));
}

operation parse_operation(std::string_view text, const rdf::prefix_map &default_prefixes)
{
    return run(text, default_prefixes, std::nullopt, nullptr);
}

placeholder_parse parse_with_placeholders(
    std::string_view text, bool expect_update, const rdf::prefix_map &default_prefixes)
{
    placeholder_parse out{select_query{}, {}};
    out.ast = run(text, default_prefixes, expect_update, &out.sites);
    return out;
}

} // namespace sparqlsec::sparql
