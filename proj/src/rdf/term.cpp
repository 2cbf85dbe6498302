#include "sparqlsec/rdf/term.hpp"

namespace sparqlsec::rdf {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

bool is_valid_iri(std::string_view iri) noexcept
{
    if (iri.empty()) {
        return false;
    }
    for (char ch : iri) {
        auto c = static_cast<unsigned char>(ch);
        if (c <= 0x20) {
            return false;
        }
        switch (c) {
        case '<':
        case '>':
        case '"':
        case '{':
        case '}':
        case '|':
        case '^':
        case '`':
        case '\\':
            return false;
        default:
            break;
        }
    }
    return true;
}

bool is_valid_language_tag(std::string_view tag) noexcept
{
    // [A-Za-z]+ ('-' [A-Za-z0-9]+)*
    bool first = true;
    while (true) {
        auto dash = tag.find('-');
        auto part = tag.substr(0, dash);
        if (part.empty()) {
            return false;
        }
        for (char c : part) {
            if (!is_alpha(c) && (first || !is_digit(c))) {
                return false;
            }
        }
        if (dash == std::string_view::npos) {
            return true;
        }
        tag.remove_prefix(dash + 1);
        first = false;
    }
}

bool is_valid_name(std::string_view name, bool allow_empty) noexcept
{
    if (name.empty()) {
        return allow_empty;
    }
    for (char c : name) {
        if (!is_alpha(c) && !is_digit(c) && c != '_' && c != '-') {
            return false;
        }
    }
    return true;
}

term term::iri(std::string value)
{
    if (!is_valid_iri(value)) {
        throw term_error("invalid IRI: '" + value + "'");
    }
    return {term_kind::iri, std::move(value), {}, {}};
}

term term::literal(std::string lexical) { return {term_kind::literal, std::move(lexical), {}, {}}; }

term term::typed_literal(std::string lexical, std::string datatype)
{
    if (!is_valid_iri(datatype)) {
        throw term_error("invalid datatype IRI: '" + datatype + "'");
    }
    return {term_kind::literal, std::move(lexical), std::move(datatype), {}};
}

term term::lang_literal(std::string lexical, std::string language)
{
    if (!is_valid_language_tag(language)) {
        throw term_error("invalid language tag: '" + language + "'");
    }
    return {term_kind::literal, std::move(lexical), {}, std::move(language)};
}

term term::blank(std::string label)
{
    if (!is_valid_name(label)) {
        throw term_error("invalid blank node label: '" + label + "'");
    }
    return {term_kind::blank, std::move(label), {}, {}};
}

std::string escape_string(std::string_view raw)
{
    std::string out;
    out.reserve(raw.size() + 2);
    for (char c : raw) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        case '\r':
            out += "\\r";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string to_ntriples(const term &t)
{
    switch (t.kind()) {
    case term_kind::iri:
        return "<" + t.value() + ">";
    case term_kind::blank:
        return "_:" + t.value();
    case term_kind::literal: {
        std::string out = "\"" + escape_string(t.value()) + "\"";
        if (!t.datatype().empty()) {
            out += "^^<" + t.datatype() + ">";
        } else if (!t.language().empty()) {
            out += "@" + t.language();
        }
        return out;
    }
    }
    return {};
}

std::string_view local_name(std::string_view iri) noexcept
{
    auto pos = iri.find_last_of("#/");
    if (pos == std::string_view::npos) {
        return iri;
    }
    return iri.substr(pos + 1);
}

const prefix_map &standard_prefixes()
{
    static const prefix_map prefixes{
        {"hc", std::string(ns::hc)},
        {"foaf", std::string(ns::foaf)},
        {"dbo", std::string(ns::dbo)},
        {"dbr", std::string(ns::dbr)},
        {"rdf", std::string(ns::rdf)},
        {"rdfs", std::string(ns::rdfs)},
        {"owl", std::string(ns::owl)},
        {"xsd", std::string(ns::xsd)},
    };
    return prefixes;
}

} // namespace sparqlsec::rdf
