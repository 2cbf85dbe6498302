#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sparqlsec::rdf {

/// Prefix label (without the trailing colon) to namespace IRI.
using prefix_map = std::map<std::string, std::string>;

class term_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class term_kind { iri, literal, blank };

/// An RDF term. Equality is lexical: kind, value, datatype and language tag
/// must all match.
class term {
public:
    static term iri(std::string value);
    static term literal(std::string lexical);
    static term typed_literal(std::string lexical, std::string datatype);
    static term lang_literal(std::string lexical, std::string language);
    static term blank(std::string label);

    [[nodiscard]] term_kind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_iri() const noexcept { return kind_ == term_kind::iri; }
    [[nodiscard]] bool is_literal() const noexcept { return kind_ == term_kind::literal; }
    [[nodiscard]] bool is_blank() const noexcept { return kind_ == term_kind::blank; }

    /// IRI string, literal lexical form, or blank node label.
    [[nodiscard]] const std::string &value() const noexcept { return value_; }
    /// Datatype IRI of a typed literal, empty otherwise.
    [[nodiscard]] const std::string &datatype() const noexcept { return datatype_; }
    /// Language tag of a language-tagged literal, empty otherwise.
    [[nodiscard]] const std::string &language() const noexcept { return language_; }

    auto operator<=>(const term &) const = default;
    bool operator==(const term &) const = default;

private:
    term(term_kind kind, std::string value, std::string datatype, std::string language)
        : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)),
          language_(std::move(language))
    {}

    term_kind kind_;
    std::string value_;
    std::string datatype_;
    std::string language_;
};

/// True when `iri` is non-empty and free of the characters the IRIREF
/// production excludes (`<>"{}|^`\`, and anything at or below U+0020).
bool is_valid_iri(std::string_view iri) noexcept;

bool is_valid_language_tag(std::string_view tag) noexcept;

/// Blank labels and local names share this alphabet: letters, digits, `_`, `-`.
bool is_valid_name(std::string_view name, bool allow_empty = false) noexcept;

/// Escapes `"`, `\`, newline, tab and carriage return. Everything else is
/// copied byte for byte.
std::string escape_string(std::string_view raw);

/// Canonical N-Triples style rendering: `<iri>`, `"lit"`, `"lit"^^<dt>`,
/// `"lit"@tag`, `_:label`.
std::string to_ntriples(const term &t);

/// Text after the last `#` or `/` of an IRI. Returns the whole IRI when it
/// has neither.
std::string_view local_name(std::string_view iri) noexcept;

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view foaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view hc = "http://hcsws.example/ontology#";
inline constexpr std::string_view dbo = "http://dbpedia.org/ontology/";
inline constexpr std::string_view dbr = "http://dbpedia.org/resource/";
} // namespace ns

inline const std::string rdf_type = std::string(ns::rdf) + "type";
inline const std::string xsd_integer = std::string(ns::xsd) + "integer";

/// hc, foaf, dbo, dbr, rdf, rdfs, owl, xsd.
const prefix_map &standard_prefixes();

} // namespace sparqlsec::rdf
