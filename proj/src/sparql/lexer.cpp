#include "sparqlsec/sparql/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace sparqlsec::sparql {

namespace {

constexpr std::array<std::string_view, 10> keywords{
    "SELECT", "DISTINCT", "WHERE", "FILTER", "REGEX", "SERVICE", "LIMIT", "PREFIX", "DELETE", "INSERT"};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_name_char(char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '-'; }
bool is_var_char(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }

std::string to_upper(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
        [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

class lexer {
public:
    lexer(std::string_view text, lex_options options) : text_(text), options_(options) {}

    lex_result run()
    {
        lex_result result;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                advance(1);
                continue;
            }
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '\r') {
                    advance(1);
                }
                continue;
            }
            auto tok = next(result.tokens);
            if (!tok) {
                result.error = error_;
                break;
            }
            result.tokens.push_back(std::move(*tok));
        }
        return result;
    }

private:
    std::optional<token> next(const std::vector<token> &previous)
    {
        char c = text_[pos_];
        auto start = here();

        if (c == '"') {
            return string_literal(start);
        }
        if (c == '\'') {
            return fail("single-quoted literals are not supported", start);
        }
        if (c == '<') {
            return iri_ref(start);
        }
        if (c == '?' || c == '$') {
            std::size_t end = pos_ + 1;
            while (end < text_.size() && is_var_char(text_[end])) {
                ++end;
            }
            if (end == pos_ + 1) {
                return fail("empty variable name", start);
            }
            return make(token_class::variable, end, std::string(text_.substr(pos_ + 1, end - pos_ - 1)));
        }
        if (c == '@') {
            return at_sign(start, previous);
        }
        if (options_.turtle && c == '_' && peek(1) == ':') {
            std::size_t end = pos_ + 2;
            while (end < text_.size() && is_name_char(text_[end])) {
                ++end;
            }
            if (end == pos_ + 2) {
                return fail("empty blank node label", start);
            }
            return make(token_class::blank_node, end, std::string(text_.substr(pos_ + 2, end - pos_ - 2)));
        }
        if (is_digit(c)) {
            std::size_t end = pos_;
            while (end < text_.size() && is_digit(text_[end])) {
                ++end;
            }
            auto digits = std::string(text_.substr(pos_, end - pos_));
            return make(token_class::numeric, end, digits);
        }
        if (is_alpha(c) || c == ':') {
            return word(start);
        }
        switch (c) {
        case '{':
        case '}':
        case '(':
        case ')':
        case '.':
        case ';':
        case ',':
        case '*':
            return make(token_class::punctuation, pos_ + 1, std::string(1, c));
        case '^':
            if (peek(1) == '^') {
                return make(token_class::punctuation, pos_ + 2, "^^");
            }
            return fail("unexpected character '^'", start);
        default:
            break;
        }
        return fail(std::string("unexpected character '") + c + "'", start);
    }

    std::optional<token> string_literal(source_position start)
    {
        if (peek(1) == '"' && peek(2) == '"') {
            return fail("triple-quoted literals are not supported", start);
        }
        std::string value;
        std::size_t i = pos_ + 1;
        while (true) {
            if (i >= text_.size()) {
                return fail("unterminated string literal", start);
            }
            char c = text_[i];
            if (c == '"') {
                break;
            }
            if (c == '\n' || c == '\r') {
                return fail("unterminated string literal", start);
            }
            if (c == '\\') {
                if (i + 1 >= text_.size()) {
                    return fail("unterminated string literal", start);
                }
                switch (text_[i + 1]) {
                case '"':
                    value += '"';
                    break;
                case '\\':
                    value += '\\';
                    break;
                case 'n':
                    value += '\n';
                    break;
                case 't':
                    value += '\t';
                    break;
                case 'r':
                    value += '\r';
                    break;
                default:
                    return fail("invalid escape sequence in string literal", position_of(i));
                }
                i += 2;
                continue;
            }
            value += c;
            ++i;
        }
        return make(token_class::string_literal, i + 1, std::move(value));
    }

    std::optional<token> iri_ref(source_position start)
    {
        std::size_t i = pos_ + 1;
        while (i < text_.size() && text_[i] != '>') {
            auto c = static_cast<unsigned char>(text_[i]);
            if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
                c == '`' || c == '\\') {
                return fail("unterminated IRI reference", start);
            }
            ++i;
        }
        if (i >= text_.size()) {
            return fail("unterminated IRI reference", start);
        }
        return make(token_class::iri_ref, i + 1, std::string(text_.substr(pos_ + 1, i - pos_ - 1)));
    }

    std::optional<token> at_sign(source_position start, const std::vector<token> &previous)
    {
        if (options_.placeholders && peek(1) == '{') {
            std::size_t i = pos_ + 2;
            if (i < text_.size() && (is_alpha(text_[i]) || text_[i] == '_')) {
                while (i < text_.size() && is_var_char(text_[i])) {
                    ++i;
                }
            }
            if (i == pos_ + 2 || i >= text_.size() || text_[i] != '}') {
                return fail("malformed placeholder", start);
            }
            return make(token_class::placeholder, i + 1, std::string(text_.substr(pos_ + 2, i - pos_ - 2)));
        }
        std::size_t i = pos_ + 1;
        while (i < text_.size() && (is_alpha(text_[i]) || is_digit(text_[i]) || text_[i] == '-')) {
            ++i;
        }
        auto word = text_.substr(pos_ + 1, i - pos_ - 1);
        if (options_.turtle && (word == "prefix" || word == "base")) {
            return make(token_class::keyword, i, "@" + to_upper(word));
        }
        bool follows_literal = !previous.empty() && previous.back().cls == token_class::string_literal &&
                               previous.back().offset + previous.back().lexeme.size() == pos_;
        if (follows_literal && !word.empty() && is_alpha(word.front())) {
            return make(token_class::lang_tag, i, std::string(word));
        }
        return fail("unexpected character '@'", start);
    }

    std::optional<token> word(source_position start)
    {
        std::size_t i = pos_;
        while (i < text_.size() && is_name_char(text_[i])) {
            ++i;
        }
        if (i < text_.size() && text_[i] == ':') {
            auto prefix = text_.substr(pos_, i - pos_);
            if (!prefix.empty() && !is_alpha(prefix.front())) {
                return fail("invalid prefix name", start);
            }
            ++i;
            while (i < text_.size() && is_name_char(text_[i])) {
                ++i;
            }
            auto lexeme = std::string(text_.substr(pos_, i - pos_));
            return make(token_class::prefixed_name, i, lexeme);
        }
        auto w = text_.substr(pos_, i - pos_);
        if (w == "a") {
            return make(token_class::keyword, i, "a");
        }
        auto upper = to_upper(w);
        if (is_keyword(upper)) {
            return make(token_class::keyword, i, upper);
        }
        return fail("unexpected word '" + std::string(w) + "'", start);
    }

    token make(token_class cls, std::size_t end, std::string value)
    {
        auto start = here();
        token t{cls, std::string(text_.substr(pos_, end - pos_)), std::move(value), start.offset, start.line,
            start.column};
        advance(end - pos_);
        return t;
    }

    std::nullopt_t fail(std::string message, source_position where)
    {
        error_ = lex_error{std::move(message), where};
        return std::nullopt;
    }

    [[nodiscard]] char peek(std::size_t ahead) const
    {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    [[nodiscard]] source_position here() const { return {pos_, line_, column_}; }

    [[nodiscard]] source_position position_of(std::size_t offset) const
    {
        source_position p = here();
        for (std::size_t i = pos_; i < offset; ++i) {
            if (text_[i] == '\n') {
                ++p.line;
                p.column = 1;
            } else {
                ++p.column;
            }
        }
        p.offset = offset;
        return p;
    }

    void advance(std::size_t count)
    {
        for (std::size_t i = 0; i < count && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
        }
    }

    std::string_view text_;
    lex_options options_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    lex_error error_;
};

} // namespace

std::string_view to_string(token_class c) noexcept
{
    switch (c) {
    case token_class::keyword:
        return "keyword";
    case token_class::variable:
        return "variable";
    case token_class::iri_ref:
        return "iri_ref";
    case token_class::prefixed_name:
        return "prefixed_name";
    case token_class::blank_node:
        return "blank_node";
    case token_class::string_literal:
        return "string_literal";
    case token_class::lang_tag:
        return "lang_tag";
    case token_class::numeric:
        return "numeric";
    case token_class::punctuation:
        return "punctuation";
    case token_class::placeholder:
        return "placeholder";
    }
    return "unknown";
}

bool is_keyword(std::string_view upper) noexcept
{
    return std::find(keywords.begin(), keywords.end(), upper) != keywords.end();
}

lex_result tokenize(std::string_view text, lex_options options) { return lexer(text, options).run(); }

std::vector<token> tokenize_strict(std::string_view text, lex_options options)
{
    auto result = tokenize(text, options);
    if (result.error) {
        throw syntax_error(result.error->message, result.error->where);
    }
    return std::move(result.tokens);
}

} // namespace sparqlsec::sparql
