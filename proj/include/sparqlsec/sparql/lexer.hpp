#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sparqlsec::sparql {

enum class token_class {
    keyword,
    variable,
    iri_ref,
    prefixed_name,
    blank_node,
    string_literal,
    lang_tag,
    numeric,
    punctuation,
    placeholder,
};

std::string_view to_string(token_class c) noexcept;

struct token {
    token_class cls;
    /// Source text of the token.
    std::string lexeme;
    /// Decoded content: unescaped string value, IRI without brackets,
    /// variable name without sigil, upper-cased keyword, tag without `@`.
    std::string value;
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is(token_class c, std::string_view v) const noexcept { return cls == c && value == v; }
};

struct source_position {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class syntax_error : public std::runtime_error {
public:
    syntax_error(const std::string &message, source_position where)
        : std::runtime_error(message + " at line " + std::to_string(where.line) + ", column " +
                             std::to_string(where.column)),
          detail_(message), where_(where)
    {}

    [[nodiscard]] const std::string &detail() const noexcept { return detail_; }
    [[nodiscard]] const source_position &where() const noexcept { return where_; }

private:
    std::string detail_;
    source_position where_;
};

struct lex_error {
    std::string message;
    source_position where;
};

/// Tokens up to the first lexical error, and the error if there was one.
struct lex_result {
    std::vector<token> tokens;
    std::optional<lex_error> error;

    [[nodiscard]] bool ok() const noexcept { return !error.has_value(); }
};

struct lex_options {
    /// Recognise `@{name}` as a placeholder token.
    bool placeholders = false;
    /// Turtle additions: `@prefix` / `@base` directives and `_:label` blanks.
    bool turtle = false;
};

lex_result tokenize(std::string_view text, lex_options options = {});

/// Like tokenize() but throws syntax_error on the first lexical error.
std::vector<token> tokenize_strict(std::string_view text, lex_options options = {});

bool is_keyword(std::string_view upper) noexcept;

} // namespace sparqlsec::sparql
