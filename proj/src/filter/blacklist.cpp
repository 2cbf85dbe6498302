#include "sparqlsec/filter/blacklist.hpp"

#include <algorithm>
#include <cctype>

#include "sparqlsec/rdf/turtle.hpp"
#include "sparqlsec/sparql/lexer.hpp"

namespace sparqlsec::filter {

namespace {

std::string upper(std::string_view s)
{
    std::string out(s);
    for (auto &c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-'; }

/// Tokens of `"` + input, with positions relative to input. Lexing resumes
/// past any lexical error; an error on the opening quote means the whole
/// input would stay inside the string.
std::vector<sparql::token> splice_tokens(std::string_view input)
{
    std::string text = "\"" + std::string(input);
    std::vector<sparql::token> out;
    std::size_t base = 0;
    while (base < text.size()) {
        auto result = sparql::tokenize(std::string_view(text).substr(base));
        for (auto &t : result.tokens) {
            t.offset += base;
            out.push_back(std::move(t));
        }
        if (result.ok()) {
            break;
        }
        std::size_t at = base + result.error->where.offset;
        if (at == 0) {
            break;
        }
        std::size_t next = at;
        if (is_word_char(text[next])) {
            while (next < text.size() && is_word_char(text[next])) {
                ++next;
            }
        } else {
            ++next;
        }
        base = next;
    }
    for (auto &t : out) {
        t.offset -= 1;
    }
    return out;
}

} // namespace

blacklist::blacklist(std::vector<blacklist_entry> entries)
{
    for (auto &e : entries) {
        add(std::move(e));
    }
}

blacklist blacklist::defaults()
{
    blacklist bl;
    for (const char *s : {"#", "\"", "\\", "{", "}", ";", "\".", ".\""}) {
        bl.add({entry_kind::substring, s});
    }
    for (const char *kw : {"SELECT", "WHERE", "SERVICE", "FILTER", "DELETE", "INSERT", "PREFIX"}) {
        bl.add({entry_kind::token, kw});
    }
    return bl;
}

blacklist blacklist::parse(std::string_view text)
{
    blacklist bl;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (line.starts_with("token:")) {
            bl.add({entry_kind::token, std::string(line.substr(6))});
        } else if (line.starts_with("substring:")) {
            bl.add({entry_kind::substring, std::string(line.substr(10))});
        } else {
            throw blacklist_error("line " + std::to_string(line_no) + ": expected 'token:' or 'substring:'");
        }
    }
    return bl;
}

blacklist blacklist::load(const std::filesystem::path &path) { return parse(rdf::read_text_file(path)); }

void blacklist::add(blacklist_entry entry)
{
    if (entry.text.empty()) {
        throw blacklist_error("empty blacklist entry");
    }
    entries_.push_back(std::move(entry));
}

std::string_view to_string(threat_class c) noexcept
{
    switch (c) {
    case threat_class::comment_termination:
        return "comment_termination";
    case threat_class::quote_escape:
        return "quote_escape";
    case threat_class::keyword_smuggle:
        return "keyword_smuggle";
    case threat_class::structure_punctuation:
        return "structure_punctuation";
    case threat_class::clean:
        return "clean";
    }
    return "unknown";
}

threat_class classify(const blacklist_entry &entry)
{
    if (entry.text.find('#') != std::string::npos) {
        return threat_class::comment_termination;
    }
    if (entry.kind == entry_kind::token && sparql::is_keyword(upper(entry.text))) {
        return threat_class::keyword_smuggle;
    }
    if (std::all_of(entry.text.begin(), entry.text.end(), [](char c) { return c == '"' || c == '\\'; })) {
        return threat_class::quote_escape;
    }
    return threat_class::structure_punctuation;
}

filter_verdict filter_input(std::string_view input, const blacklist &bl)
{
    filter_verdict v;
    auto haystack = upper(input);
    std::vector<sparql::token> tokens;
    bool lexed = false;
    for (const auto &entry : bl.entries()) {
        auto cls = classify(entry);
        if (entry.kind == entry_kind::substring) {
            auto needle = upper(entry.text);
            for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) {
                v.offending.push_back({entry, pos, cls});
            }
            continue;
        }
        if (!lexed) {
            tokens = splice_tokens(input);
            lexed = true;
        }
        auto needle = upper(entry.text);
        for (const auto &t : tokens) {
            if (upper(t.lexeme) == needle) {
                v.offending.push_back({entry, t.offset, cls});
            }
        }
    }
    std::sort(v.offending.begin(), v.offending.end(), [](const offense &a, const offense &b) {
        return std::tie(a.position, a.entry) < std::tie(b.position, b.entry);
    });
    if (!v.offending.empty()) {
        v.outcome = decision::reject;
        v.classification.clear();
        for (const auto &o : v.offending) {
            v.classification.insert(o.cls);
        }
    }
    return v;
}

std::string explain_verdict(const filter_verdict &v)
{
    if (v.accepted()) {
        return "input accepted\n";
    }
    std::string out;
    for (const auto &o : v.offending) {
        std::string shown;
        for (char c : o.entry.text) {
            shown += c == '\n' ? std::string("\\n") : std::string(1, c);
        }
        out += "position " + std::to_string(o.position) + ": " +
               (o.entry.kind == entry_kind::token ? "token" : "substring") + " '" + shown + "' (" +
               std::string(to_string(o.cls)) + ")\n";
    }
    return out;
}

} // namespace sparqlsec::filter
