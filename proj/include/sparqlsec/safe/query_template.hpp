#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sparqlsec/sparql/ast.hpp"
#include "sparqlsec/sparql/parser.hpp"
#include "sparqlsec/sparql/shape.hpp"

namespace sparqlsec::safe {

class template_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class bind_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class template_kind { query, update };

/// A value for one placeholder: an RDF term or a variable.
class param_value {
public:
    static param_value plain(std::string s);
    static param_value typed(std::string s, std::string datatype);
    static param_value lang(std::string s, std::string tag);
    /// Throws bind_error if `s` is not a valid IRI.
    static param_value iri(std::string s);
    /// Throws bind_error unless `name` lexes as a single variable.
    static param_value var(std::string name);

    [[nodiscard]] const sparql::pattern_term &term() const noexcept { return term_; }
    [[nodiscard]] bool is_plain_literal() const noexcept;
    [[nodiscard]] bool is_literal() const noexcept;
    [[nodiscard]] bool is_iri() const noexcept;
    [[nodiscard]] bool is_variable() const noexcept;

    /// Source text for the value with every special character escaped.
    [[nodiscard]] std::string render() const;

    bool operator==(const param_value &) const = default;

private:
    explicit param_value(sparql::pattern_term t) : term_(std::move(t)) {}

    sparql::pattern_term term_;
};

class bound_template;

/// Immutable parsed template with `@{name}` placeholders. Each placeholder
/// must occupy one term position; a name may be used more than once.
class query_template {
public:
    /// Throws template_error if the text does not parse with stand-in terms,
    /// or if a `@{...}` sequence sits somewhere other than a term position.
    query_template(std::string text, template_kind kind, rdf::prefix_map prefixes = {});

    [[nodiscard]] const std::string &text() const noexcept { return data_->text; }
    [[nodiscard]] template_kind kind() const noexcept { return data_->kind; }
    [[nodiscard]] const rdf::prefix_map &prefixes() const noexcept { return data_->prefixes; }
    [[nodiscard]] const sparql::ast_shape &skeleton_shape() const noexcept { return data_->shape; }
    /// Parse of the template with stand-ins in place of the placeholders.
    [[nodiscard]] const sparql::operation &standin() const noexcept { return data_->standin; }
    [[nodiscard]] const std::vector<sparql::placeholder_site> &sites() const noexcept { return data_->sites; }
    /// Distinct placeholder names in order of first appearance.
    [[nodiscard]] std::vector<std::string> placeholder_names() const;

    [[nodiscard]] bound_template bind(const std::vector<std::pair<std::string, param_value>> &params) const;

private:
    struct data {
        std::string text;
        template_kind kind;
        rdf::prefix_map prefixes;
        std::vector<sparql::placeholder_site> sites;
        sparql::ast_shape shape;
        sparql::operation standin;
    };
    std::shared_ptr<const data> data_;
};

/// A template plus values. Binding returns a new view and never renders.
class bound_template {
public:
    explicit bound_template(query_template t) : template_(std::move(t)) {}

    /// Replaces any previous value for `name`. Throws bind_error for a name
    /// the template does not use or a value kind its positions cannot hold.
    [[nodiscard]] bound_template bind(const std::string &name, param_value value) const;

    [[nodiscard]] const query_template &source() const noexcept { return template_; }
    [[nodiscard]] const std::map<std::string, param_value> &values() const noexcept { return values_; }

    /// Substitutes every placeholder and reparses the result. Throws
    /// bind_error on an unbound placeholder or if the parsed result does
    /// not have the template's shape.
    [[nodiscard]] std::string render() const;

    /// render() plus the parsed result.
    [[nodiscard]] sparql::operation render_parsed(std::string *text_out = nullptr) const;

private:
    [[nodiscard]] sparql::ast_shape expected_shape() const;

    query_template template_;
    std::map<std::string, param_value> values_;
};

} // namespace sparqlsec::safe
