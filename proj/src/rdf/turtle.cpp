#include "sparqlsec/rdf/turtle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "sparqlsec/sparql/lexer.hpp"

namespace sparqlsec::rdf {

namespace {

using sparql::source_position;
using sparql::syntax_error;
using sparql::token;
using sparql::token_class;

class turtle_parser {
public:
    turtle_parser(std::vector<token> tokens, std::size_t text_size, const prefix_map &base)
        : tokens_(std::move(tokens)), end_offset_(text_size), out_(base)
    {}

    graph run()
    {
        while (!at_end()) {
            const auto &t = peek();
            if (t.is(token_class::keyword, "@PREFIX") || t.is(token_class::keyword, "PREFIX")) {
                directive();
            } else if (t.is(token_class::keyword, "@BASE")) {
                throw syntax_error("@base is not supported", position(t));
            } else {
                statement();
            }
        }
        return std::move(out_);
    }

private:
    void directive()
    {
        bool turtle_style = take().value == "@PREFIX";
        const auto &name = expect(token_class::prefixed_name, "prefix name");
        if (name.lexeme.back() != ':') {
            throw syntax_error("expected a prefix name ending in ':'", position(name));
        }
        const auto &iri = expect(token_class::iri_ref, "namespace IRI");
        out_.namespaces()[name.lexeme.substr(0, name.lexeme.size() - 1)] = iri.value;
        if (turtle_style) {
            expect_punct(".");
        }
    }

    void statement()
    {
        const auto &first = peek();
        if (first.cls == token_class::string_literal || first.cls == token_class::numeric) {
            throw syntax_error("literal in subject position", position(first));
        }
        term subject = resource(take(), true);
        while (true) {
            term predicate = verb();
            while (true) {
                out_.insert(triple{subject, predicate, object()});
                if (!try_punct(",")) {
                    break;
                }
            }
            if (!try_punct(";")) {
                break;
            }
            // A trailing ';' before '.' is allowed.
            while (try_punct(";")) {
            }
            if (check_punct(".")) {
                break;
            }
        }
        expect_punct(".");
    }

    term verb()
    {
        const auto &t = take();
        if (t.is(token_class::keyword, "a")) {
            return term::iri(rdf_type);
        }
        if (t.cls != token_class::iri_ref && t.cls != token_class::prefixed_name) {
            throw syntax_error("expected a predicate, found '" + t.lexeme + "'", position(t));
        }
        return resource(t, false);
    }

    term object()
    {
        const auto &t = take();
        if (t.cls == token_class::string_literal) {
            if (!at_end() && peek().cls == token_class::lang_tag) {
                return term::lang_literal(t.value, take().value);
            }
            if (try_punct("^^")) {
                const auto &dt = take();
                if (dt.cls != token_class::iri_ref && dt.cls != token_class::prefixed_name) {
                    throw syntax_error("expected a datatype IRI", position(dt));
                }
                return term::typed_literal(t.value, resource(dt, false).value());
            }
            return term::literal(t.value);
        }
        if (t.cls == token_class::numeric) {
            return term::typed_literal(t.value, xsd_integer);
        }
        return resource(t, true);
    }

    term resource(const token &t, bool allow_blank)
    {
        switch (t.cls) {
        case token_class::iri_ref:
            return make_iri(t.value, t);
        case token_class::prefixed_name: {
            auto colon = t.lexeme.find(':');
            auto prefix = t.lexeme.substr(0, colon);
            auto it = out_.namespaces().find(prefix);
            if (it == out_.namespaces().end()) {
                throw syntax_error("undefined prefix '" + prefix + ":'", position(t));
            }
            return make_iri(it->second + t.lexeme.substr(colon + 1), t);
        }
        case token_class::blank_node:
            if (allow_blank) {
                return term::blank(t.value);
            }
            break;
        default:
            break;
        }
        throw syntax_error("unexpected '" + t.lexeme + "'", position(t));
    }

    static term make_iri(const std::string &value, const token &t)
    {
        try {
            return term::iri(value);
        } catch (const term_error &e) {
            throw syntax_error(e.what(), position(t));
        }
    }

    const token &expect(token_class cls, std::string_view what)
    {
        const auto &t = take();
        if (t.cls != cls) {
            throw syntax_error("expected " + std::string(what) + ", found '" + t.lexeme + "'", position(t));
        }
        return t;
    }

    void expect_punct(std::string_view p)
    {
        const auto &t = take();
        if (!t.is(token_class::punctuation, p)) {
            throw syntax_error("expected '" + std::string(p) + "', found '" + t.lexeme + "'", position(t));
        }
    }

    bool check_punct(std::string_view p) const { return !at_end() && peek().is(token_class::punctuation, p); }

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
            throw syntax_error("unexpected end of input", end_position());
        }
        return tokens_[pos_++];
    }

    [[nodiscard]] const token &peek() const { return tokens_[pos_]; }
    [[nodiscard]] bool at_end() const { return pos_ >= tokens_.size(); }

    static source_position position(const token &t) { return {t.offset, t.line, t.column}; }

    [[nodiscard]] source_position end_position() const
    {
        if (tokens_.empty()) {
            return {end_offset_, 1, 1};
        }
        const auto &last = tokens_.back();
        return {end_offset_, last.line, last.column + last.lexeme.size()};
    }

    std::vector<token> tokens_;
    std::size_t end_offset_;
    std::size_t pos_ = 0;
    graph out_;
};

} // namespace

graph parse_turtle(std::string_view text, const prefix_map &base_namespaces)
{
    auto tokens = sparql::tokenize_strict(text, {.placeholders = false, .turtle = true});
    return turtle_parser(std::move(tokens), text.size(), base_namespaces).run();
}

std::string read_text_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

graph load_turtle_file(const std::filesystem::path &path, const prefix_map &base_namespaces)
{
    return parse_turtle(read_text_file(path), base_namespaces);
}

std::string dump_snapshot(const graph &g)
{
    std::vector<std::string> lines;
    lines.reserve(g.size());
    for (const auto &t : g) {
        lines.push_back(to_ntriples(t.subject) + " " + to_ntriples(t.predicate) + " " +
                        to_ntriples(t.object) + " .");
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto &line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

graph load_snapshot(std::string_view text) { return parse_turtle(text); }

} // namespace sparqlsec::rdf
