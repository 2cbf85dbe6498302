#include <gtest/gtest.h>

#include "sparqlsec/sparql/parser.hpp"
#include "sparqlsec/sparql/serializer.hpp"
#include "sparqlsec/sparql/shape.hpp"
#include "support/generators.hpp"

using namespace sparqlsec;
using namespace sparqlsec::sparql;

namespace {

std::vector<token_class> classes(const std::vector<token> &ts)
{
    std::vector<token_class> out;
    for (const auto &t : ts) {
        out.push_back(t.cls);
    }
    return out;
}

bool same_tokens(const std::vector<token> &a, const std::vector<token> &b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].cls != b[i].cls || a[i].value != b[i].value) {
            return false;
        }
    }
    return true;
}

const rdf::prefix_map &std_prefixes() { return rdf::standard_prefixes(); }

} // namespace

TEST(Lexer, ClassifiesTokens)
{
    auto ts = tokenize_strict("select DISTINCT ?name WHERE { <urn:a> foaf:firstName \"S\\\"am\"@en , 42 . } # tail");
    ASSERT_EQ(ts.size(), 13U);
    EXPECT_TRUE(ts[0].is(token_class::keyword, "SELECT"));
    EXPECT_TRUE(ts[1].is(token_class::keyword, "DISTINCT"));
    EXPECT_TRUE(ts[2].is(token_class::variable, "name"));
    EXPECT_TRUE(ts[5].is(token_class::iri_ref, "urn:a"));
    EXPECT_EQ(ts[6].cls, token_class::prefixed_name);
    EXPECT_TRUE(ts[7].is(token_class::string_literal, "S\"am"));
    EXPECT_TRUE(ts[8].is(token_class::lang_tag, "en"));
    EXPECT_TRUE(ts[10].is(token_class::numeric, "42"));
    EXPECT_TRUE(ts[12].is(token_class::punctuation, "}"));
}

TEST(Lexer, ReportsPositions)
{
    auto r = tokenize("SELECT ?x\nWHERE { \"open");
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.error->where.line, 2U);
    EXPECT_THROW(tokenize_strict("SELECT \"a\nb\""), syntax_error);
    EXPECT_THROW(tokenize_strict("?x ~"), syntax_error);
}

TEST(Lexer, PlaceholdersOnlyWhenEnabled)
{
    EXPECT_FALSE(tokenize("?x @{name}").ok());
    auto ts = tokenize_strict("?x @{name}", {.placeholders = true});
    ASSERT_EQ(ts.size(), 2U);
    EXPECT_TRUE(ts[1].is(token_class::placeholder, "name"));
}

TEST(LexerProperty, CommentTotality)
{
    testkit::rng_t rng(21);
    const std::vector<std::string> pieces = {"SELECT", "?x", "{", "}", ".", "<urn:a>", "foaf:name", "\"v\"",
        "\"a#b\"", "'q'", "12", "@en", ";", ",", "DELETE", "a", "*", "(", ")"};
    int checked = 0;
    for (int round = 0; round < 2000; ++round) {
        std::string prefix;
        auto n = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int i = 0; i < n; ++i) {
            prefix += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
            prefix += std::bernoulli_distribution(0.3)(rng) ? "\n" : " ";
        }
        auto base = tokenize(prefix);
        if (!base.ok()) {
            continue;
        }
        std::string tail = testkit::random_unicode(rng, 20);
        std::erase_if(tail, [](char c) { return c == '"' || c == '<' || c == '\n' || c == '\r'; });
        auto with_comment = tokenize(prefix + " #" + tail);
        ASSERT_TRUE(with_comment.ok()) << prefix << " #" << tail;
        EXPECT_TRUE(same_tokens(base.tokens, with_comment.tokens)) << prefix;
        ++checked;
    }
    EXPECT_GT(checked, 1000);
}

TEST(LexerProperty, EscapeRoundTrip)
{
    testkit::rng_t rng(22);
    for (int round = 0; round < 3000; ++round) {
        auto v = testkit::random_unicode(rng, 24);
        auto ts = tokenize_strict("\"" + rdf::escape_string(v) + "\"");
        ASSERT_EQ(ts.size(), 1U);
        EXPECT_EQ(ts[0].cls, token_class::string_literal);
        EXPECT_EQ(ts[0].value, v);
    }
}

TEST(Parser, SelectBasics)
{
    auto q = parse_query("SELECT DISTINCT ?name\nWHERE {?s foaf:firstName \"Sam\". ?r hc:editedBy ?s.} LIMIT 5",
        std_prefixes());
    EXPECT_TRUE(q.distinct);
    ASSERT_EQ(q.projection.size(), 1U);
    EXPECT_EQ(q.projection[0].name, "name");
    ASSERT_EQ(q.where.elements.size(), 2U);
    EXPECT_EQ(q.limit, 5U);
    const auto &tp = std::get<triple_pattern>(q.where.elements[0]);
    EXPECT_EQ(std::get<rdf::term>(tp.predicate), rdf::term::iri(std::string(rdf::ns::foaf) + "firstName"));
    EXPECT_EQ(std::get<rdf::term>(tp.object), rdf::term::literal("Sam"));
}

TEST(Parser, PredicateObjectListsAndTypeKeyword)
{
    auto q = parse_query("SELECT * { ?s a hc:Patient ; foaf:firstName ?n , \"x\" }", std_prefixes());
    EXPECT_TRUE(q.select_all);
    ASSERT_EQ(q.where.elements.size(), 3U);
    const auto &first = std::get<triple_pattern>(q.where.elements[0]);
    EXPECT_EQ(std::get<rdf::term>(first.predicate), rdf::term::iri(rdf::rdf_type));
}

TEST(Parser, FilterAndService)
{
    auto q = parse_query(
        "SELECT ?n WHERE { ?c foaf:email ?n . FILTER regex(?n, \"^B\", \"i\") "
        "SERVICE <http://dbpedia.org/sparql> { SELECT ?o WHERE { ?a dbo:occupation ?o } } }",
        std_prefixes());
    ASSERT_EQ(q.where.elements.size(), 3U);
    const auto &f = std::get<regex_filter>(q.where.elements[1]);
    EXPECT_EQ(f.target.name, "n");
    EXPECT_EQ(f.pattern, "^B");
    EXPECT_EQ(f.flags, "i");
    const auto &svc = std::get<service_clause>(q.where.elements[2]);
    EXPECT_EQ(svc.endpoint.value(), "http://dbpedia.org/sparql");
    EXPECT_TRUE(std::holds_alternative<box<select_query>>(svc.body));
}

TEST(Parser, DeclaredPrefixesWin)
{
    auto q = parse_query("PREFIX foaf: <urn:other#>\nSELECT ?x { ?x foaf:name ?y }", std_prefixes());
    const auto &tp = std::get<triple_pattern>(q.where.elements[0]);
    EXPECT_EQ(std::get<rdf::term>(tp.predicate).value(), "urn:other#name");
}

TEST(Parser, Updates)
{
    auto u = parse_update(
        "DELETE { ?p foaf:firstName \"Gareath\" } INSERT { ?p foaf:firstName \"G\" } WHERE { ?p foaf:firstName \"Gareath\" }",
        std_prefixes());
    EXPECT_EQ(u.form, update_form::delete_insert_where);
    EXPECT_EQ(u.delete_template.size(), 1U);
    EXPECT_EQ(u.insert_template.size(), 1U);
    auto dw = parse_update("DELETE WHERE { ?a ?b ?c }");
    EXPECT_EQ(dw.form, update_form::delete_where);
    EXPECT_EQ(dw.where.elements.size(), 1U);
    EXPECT_TRUE(std::holds_alternative<update_request>(parse_operation("DELETE WHERE { ?a ?b ?c }")));
    EXPECT_TRUE(std::holds_alternative<select_query>(parse_operation("SELECT * { ?a ?b ?c }")));
}

TEST(Parser, Errors)
{
    EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x ?y ?z "), syntax_error);
    EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x ?y ?z } }"), syntax_error);
    EXPECT_THROW(parse_query("SELECT ?x WHERE { \"lit\" ?y ?z }"), syntax_error);
    EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x nope:y ?z }"), syntax_error);
    EXPECT_THROW(parse_update("DELETE { ?a ?b ?c } INSERT { ?a ?b ?new } WHERE { ?a ?b ?c }"), syntax_error);
    EXPECT_THROW(parse_query("DELETE WHERE { ?a ?b ?c }"), syntax_error);
    EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x ?y ?z FILTER regex(?x) }"), syntax_error);
}

TEST(Parser, CommentCutsRestOfLineOnly)
{
    auto single = "SELECT ?n WHERE {?s foaf:firstName \"Sam\". ?s foaf:email ?n }# \". ?r hc:editedBy ?s.}";
    EXPECT_NO_THROW(parse_query(single, std_prefixes()));
    auto multi = "SELECT ?n WHERE {?s foaf:firstName \"Sam\". ?s foaf:email ?n }#\n\". ?r hc:editedBy ?s.}";
    EXPECT_THROW(parse_query(multi, std_prefixes()), syntax_error);
}

TEST(Parser, Placeholders)
{
    auto p = parse_with_placeholders(
        "SELECT @{proj} WHERE { @{s} @{p} @{o} . FILTER regex(?x, @{re}, @{fl}) SERVICE @{ep} { ?x ?y ?z } }", false);
    ASSERT_EQ(p.sites.size(), 7U);
    EXPECT_EQ(p.sites[0].role, slot_role::projection);
    EXPECT_EQ(p.sites[1].role, slot_role::subject);
    EXPECT_EQ(p.sites[2].role, slot_role::predicate);
    EXPECT_EQ(p.sites[3].role, slot_role::object);
    EXPECT_EQ(p.sites[4].role, slot_role::regex_pattern);
    EXPECT_EQ(p.sites[5].role, slot_role::regex_flags);
    EXPECT_EQ(p.sites[6].role, slot_role::endpoint);
    EXPECT_TRUE(parse_with_placeholders("SELECT ?x WHERE { ?x ?y \"@{o}\" }", false).sites.empty());
    EXPECT_THROW(parse_with_placeholders("SELECT ?x WHERE { ?x ?y @{o} }", true), syntax_error);
}

TEST(SerializerProperty, SelectRoundTrip)
{
    testkit::rng_t rng(31);
    for (int round = 0; round < 1000; ++round) {
        auto q = testkit::random_select_ast(rng);
        auto text = serialize(q);
        select_query back;
        ASSERT_NO_THROW(back = parse_query(text)) << text;
        EXPECT_EQ(back, q) << text;
        EXPECT_EQ(serialize(back), text);
    }
}

TEST(SerializerProperty, UpdateRoundTrip)
{
    testkit::rng_t rng(32);
    for (int round = 0; round < 1000; ++round) {
        auto u = testkit::random_update_ast(rng);
        auto text = serialize(u);
        update_request back;
        ASSERT_NO_THROW(back = parse_update(text)) << text;
        EXPECT_EQ(back, u) << text;
    }
}

TEST(Serializer, CompactsOnlyPlainLocalNames)
{
    rdf::prefix_map p{{"ex", "http://example.org/"}};
    EXPECT_EQ(serialize_term(rdf::term::iri("http://example.org/name"), p), "ex:name");
    EXPECT_EQ(serialize_term(rdf::term::iri("http://example.org/a.b"), p), "<http://example.org/a.b>");
    EXPECT_EQ(serialize_term(rdf::term::iri("http://example.org/"), p), "<http://example.org/>");
    EXPECT_EQ(serialize_term(rdf::term::lang_literal("a\"b", "en"), p), "\"a\\\"b\"@en");
}

TEST(Shape, ErasesConstantsAndRenamesVariables)
{
    auto a = parse_query("SELECT ?n WHERE { ?s foaf:firstName \"Sam\" . ?s foaf:email ?n }", std_prefixes());
    auto b = parse_query("SELECT ?q WHERE { ?z foaf:lastName \"Other\" . ?z hc:x ?q }", std_prefixes());
    auto c = parse_query("SELECT ?n WHERE { ?s foaf:firstName ?v . ?s foaf:email ?n }", std_prefixes());
    auto d = parse_query("SELECT ?n WHERE { ?s foaf:firstName \"Sam\" . ?n foaf:email ?s }", std_prefixes());
    EXPECT_EQ(shape_of(a), shape_of(b));
    EXPECT_NE(shape_of(a), shape_of(c));
    EXPECT_NE(shape_of(a), shape_of(d));
    EXPECT_EQ(to_string(shape_of(parse_query("SELECT ?x { ?x ?y \"v\" }"))),
        "(select (project var0) (group (triple var0 var1 literal)))");
}

TEST(ShapeProperty, LiteralSubstitutionKeepsShape)
{
    testkit::rng_t rng(33);
    for (int round = 0; round < 500; ++round) {
        auto q = testkit::random_select_ast(rng);
        auto mutated = q;
        for (auto &e : mutated.where.elements) {
            if (auto *tp = std::get_if<triple_pattern>(&e)) {
                if (auto *t = std::get_if<rdf::term>(&tp->object); t != nullptr && t->is_literal()) {
                    *t = rdf::term::literal(testkit::random_unicode(rng, 8));
                }
            } else if (auto *f = std::get_if<regex_filter>(&e)) {
                f->pattern = testkit::random_unicode(rng, 5);
            }
        }
        EXPECT_EQ(shape_of(q), shape_of(mutated));
        auto reparsed = parse_query(serialize(mutated));
        EXPECT_EQ(shape_of(reparsed), shape_of(q));
    }
}

TEST(ShapeProperty, EquivalenceRelation)
{
    testkit::rng_t rng(34);
    std::vector<ast_shape> shapes;
    for (int i = 0; i < 80; ++i) {
        auto q = testkit::random_select_ast(rng);
        shapes.push_back(shape_of(q));
        shapes.push_back(shape_of(parse_query(serialize(q))));
    }
    for (const auto &a : shapes) {
        EXPECT_EQ(a, a);
        for (const auto &b : shapes) {
            EXPECT_EQ(a == b, b == a);
            if (!(a == b)) {
                continue;
            }
            for (const auto &c : shapes) {
                if (b == c) {
                    EXPECT_EQ(a, c);
                }
            }
        }
    }
}

TEST(Lexer, TokenClassesOfInjectedQuery)
{
    auto ts = tokenize_strict("WHERE {?s foaf:firstName \"Sam\". ?p foaf:firstName \"Ben\". }#\". ?r");
    auto cls = classes(ts);
    EXPECT_EQ(cls.back(), token_class::punctuation);
    EXPECT_EQ(ts.back().value, "}");
}
