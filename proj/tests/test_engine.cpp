#include <gtest/gtest.h>

#include "sparqlsec/engine/evaluator.hpp"
#include "sparqlsec/engine/federation.hpp"
#include "sparqlsec/engine/sparql_json.hpp"
#include "sparqlsec/rdf/store.hpp"
#include "sparqlsec/rdf/turtle.hpp"
#include "sparqlsec/sparql/parser.hpp"
#include "sparqlsec/sparql/serializer.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"

using namespace sparqlsec;
using namespace sparqlsec::engine;

namespace {

class EngineFixture : public ::testing::Test {
protected:
    void SetUp() override
    {
        fixtures = rdf::load_default_fixtures();
        external = std::make_shared<const rdf::graph>(fixtures.external);
        fed.add_graph("http://dbpedia.org/sparql", external);
    }

    solution_set query(const std::string &text)
    {
        return eval_select(sparql::parse_query(text, rdf::standard_prefixes()), fixtures.local, fed);
    }

    std::vector<std::string> column(const solution_set &s, const std::string &var)
    {
        std::vector<std::string> out;
        for (const auto &row : s.rows) {
            if (auto it = row.find(var); it != row.end()) {
                out.push_back(it->second.value());
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    rdf::fixture_set fixtures;
    std::shared_ptr<const rdf::graph> external;
    federation_registry fed;
};

} // namespace

TEST_F(EngineFixture, LegitimateSearch)
{
    auto r = query("SELECT DISTINCT ?name WHERE {?s foaf:firstName \"Sam\". ?r hc:editedBy ?s. ?r hc:reportFor ?p. "
                   "?p foaf:firstName ?name.}");
    EXPECT_EQ(column(r, "name"), std::vector<std::string>{"Ben"});
    EXPECT_EQ(r.variables, std::vector<std::string>{"name"});
}

TEST_F(EngineFixture, RegexFilterStrictAndLenient)
{
    auto q = sparql::parse_query("SELECT ?p WHERE { ?s ?p ?o . FILTER regex(?p, \"^reportDat\") }", rdf::standard_prefixes());
    EXPECT_FALSE(eval_select(q, fixtures.local, fed).empty());
    EXPECT_TRUE(eval_select(q, fixtures.local, fed, {.regex = regex_mode::strict}).empty());
    EXPECT_TRUE(eval_regex(rdf::term::literal("BenHolt"), "^b", "i"));
    EXPECT_FALSE(eval_regex(rdf::term::literal("BenHolt"), "^b", ""));
    EXPECT_THROW(eval_regex(rdf::term::literal("x"), "(", ""), evaluation_error);
    EXPECT_THROW(eval_regex(rdf::term::literal("x"), "x", "s"), evaluation_error);
}

TEST_F(EngineFixture, ServiceSubselectReadsExternalOnly)
{
    auto r = query("SELECT ?n WHERE { SERVICE <http://dbpedia.org/sparql> { SELECT ?n WHERE { ?a foaf:name ?n } } }");
    EXPECT_EQ(column(r, "n").size(), 5U);
    auto local_only = query("SELECT ?n WHERE { SERVICE <http://dbpedia.org/sparql> { ?a foaf:firstName ?n } }");
    EXPECT_TRUE(local_only.empty());
    EXPECT_THROW(query("SELECT ?n WHERE { SERVICE <http://unknown.example/> { ?a ?b ?n } }"), federation_error);
}

TEST_F(EngineFixture, ServiceJoinsWithLocalBindings)
{
    auto r = query("SELECT ?name ?occ WHERE { ?s foaf:firstName \"Sam\" . "
                   "SERVICE <http://dbpedia.org/sparql> { ?a foaf:name ?name . ?a dbo:occupation ?occ } }");
    EXPECT_EQ(r.size(), 6U);
}

TEST_F(EngineFixture, ServiceNeverMutatesExternal)
{
    auto before = rdf::dump_snapshot(*external);
    auto local_before = rdf::dump_snapshot(fixtures.local);
    query("SELECT * WHERE { ?s ?p ?o . SERVICE <http://dbpedia.org/sparql> { ?a ?b ?c } } LIMIT 3");
    auto u = sparql::parse_update(
        "DELETE { ?a ?b ?c } WHERE { SERVICE <http://dbpedia.org/sparql> { ?a ?b ?c } }", rdf::standard_prefixes());
    auto local = fixtures.local;
    auto report = eval_update(u, local, fed);
    EXPECT_EQ(report.removed, 0U);
    EXPECT_EQ(rdf::dump_snapshot(*external), before);
    EXPECT_EQ(rdf::dump_snapshot(local), local_before);
}

TEST(Engine, LimitAndDistinct)
{
    auto g = rdf::parse_turtle("<urn:a> <urn:p> \"x\" . <urn:b> <urn:p> \"x\" . <urn:c> <urn:p> \"y\" .");
    auto all = eval_select(sparql::parse_query("SELECT ?o { ?s <urn:p> ?o }"), g);
    EXPECT_EQ(all.size(), 3U);
    auto distinct = eval_select(sparql::parse_query("SELECT DISTINCT ?o { ?s <urn:p> ?o }"), g);
    EXPECT_EQ(distinct.size(), 2U);
    EXPECT_TRUE(distinct.distinct_applied);
    auto limited = eval_select(sparql::parse_query("SELECT ?o { ?s <urn:p> ?o } LIMIT 1"), g);
    EXPECT_EQ(limited.size(), 1U);
}

TEST(Engine, UnboundProjectionComesBackUnbound)
{
    auto g = rdf::parse_turtle("<urn:a> <urn:p> \"x\" .");
    auto r = eval_select(sparql::parse_query("SELECT ?s ?missing { ?s <urn:p> ?o }"), g);
    ASSERT_EQ(r.size(), 1U);
    EXPECT_EQ(r.rows[0].count("missing"), 0U);
    EXPECT_EQ(r.variables, (std::vector<std::string>{"s", "missing"}));
}

TEST(Engine, UpdateSemantics)
{
    auto g = rdf::parse_turtle("<urn:p1> <urn:name> \"Gareath\" . <urn:p2> <urn:name> \"Ben\" .");
    auto u = sparql::parse_update(
        "DELETE { ?p <urn:name> \"Gareath\" } INSERT { ?p <urn:name> \"Gary\" } WHERE { ?p <urn:name> \"Gareath\" }");
    auto report = eval_update(u, g);
    EXPECT_EQ(report.added, 1U);
    EXPECT_EQ(report.removed, 1U);
    EXPECT_TRUE(g.contains({rdf::term::iri("urn:p1"), rdf::term::iri("urn:name"), rdf::term::literal("Gary")}));
    EXPECT_EQ(g.size(), 2U);

    auto wipe = sparql::parse_update("DELETE WHERE { ?a ?b ?c }");
    auto r2 = eval_update(wipe, g);
    EXPECT_EQ(r2.removed, 2U);
    EXPECT_TRUE(g.empty());
}

TEST(Engine, DeleteTemplateWithUnboundVariableIsSkipped)
{
    auto g = rdf::parse_turtle("<urn:a> <urn:p> <urn:b> .");
    auto u = sparql::parse_update("DELETE { ?a <urn:p> ?zz . ?a <urn:p> <urn:b> } WHERE { ?a <urn:p> <urn:b> }");
    auto r = eval_update(u, g);
    EXPECT_EQ(r.removed, 1U);
}

TEST(Engine, WhereSeesPreState)
{
    auto g = rdf::parse_turtle("<urn:a> <urn:p> <urn:b> .");
    auto u = sparql::parse_update("DELETE { ?s <urn:p> ?o } INSERT { ?o <urn:p> ?s } WHERE { ?s <urn:p> ?o }");
    eval_update(u, g);
    EXPECT_TRUE(g.contains({rdf::term::iri("urn:b"), rdf::term::iri("urn:p"), rdf::term::iri("urn:a")}));
    EXPECT_EQ(g.size(), 1U);
}

TEST(EngineProperty, MatchesBruteForce)
{
    testkit::rng_t rng(41);
    auto vocab = testkit::small_vocabulary();
    for (int round = 0; round < 300; ++round) {
        auto g = testkit::random_graph(rng, vocab, 50);
        for (int k = 0; k < 3; ++k) {
            auto q = testkit::random_bgp_query(rng, vocab);
            auto plain = q;
            plain.distinct = false;
            plain.limit.reset();
            auto got = eval_select(plain, g);
            auto expected = testkit::brute_force_select(plain, g);
            ASSERT_EQ(testkit::multiset(got.rows), testkit::multiset(expected)) << sparql::serialize(plain);
            if (q.distinct) {
                auto d = eval_select(q, g);
                std::set<solution> want(expected.begin(), expected.end());
                std::set<solution> have(d.rows.begin(), d.rows.end());
                EXPECT_EQ(have, want);
                EXPECT_EQ(d.rows.size(), have.size());
            }
        }
    }
}

TEST(EngineProperty, DistinctIdempotent)
{
    testkit::rng_t rng(42);
    auto vocab = testkit::small_vocabulary();
    for (int round = 0; round < 200; ++round) {
        auto g = testkit::random_graph(rng, vocab, 40);
        auto q = testkit::random_bgp_query(rng, vocab);
        q.distinct = false;
        auto once = eval_select(q, g);
        apply_distinct(once);
        auto twice = once;
        apply_distinct(twice);
        EXPECT_EQ(once.rows, twice.rows);
    }
}

TEST(EngineProperty, UpdateConservationAndOracle)
{
    testkit::rng_t rng(43);
    auto vocab = testkit::small_vocabulary();
    for (int round = 0; round < 400; ++round) {
        auto g = testkit::random_graph(rng, vocab, 40);
        auto u = testkit::random_update(rng, vocab);
        auto expected = testkit::brute_force_update(u, g);
        auto pre = g.size();
        auto report = eval_update(u, g);
        EXPECT_EQ(g.size(), pre - report.removed + report.added);
        EXPECT_EQ(report.added, report.added_triples.size());
        EXPECT_EQ(report.removed, report.removed_triples.size());
        EXPECT_EQ(g, expected) << sparql::serialize(u);
    }
}

TEST(SparqlJson, RoundTrip)
{
    solution_set s;
    s.variables = {"a", "b"};
    s.rows.push_back({{"a", rdf::term::iri("urn:x")}, {"b", rdf::term::lang_literal("v", "en")}});
    s.rows.push_back({{"a", rdf::term::typed_literal("4", rdf::xsd_integer)}});
    s.rows.push_back({{"b", rdf::term::blank("n1")}});
    auto j = to_sparql_json(s);
    EXPECT_EQ(j["head"]["vars"].size(), 2U);
    auto back = from_sparql_json(j);
    EXPECT_EQ(back.variables, s.variables);
    EXPECT_EQ(back.rows, s.rows);
}

TEST(Federation, HandlerAndErrors)
{
    federation_registry fed;
    int calls = 0;
    fed.add_handler("urn:ep", [&](const sparql::select_query &) {
        ++calls;
        solution_set s;
        s.variables = {"x"};
        s.rows.push_back({{"x", rdf::term::literal("remote")}});
        return s;
    });
    EXPECT_TRUE(fed.serves("urn:ep"));
    auto q = sparql::parse_query("SELECT ?x { SERVICE <urn:ep> { ?x ?y ?z } }");
    auto r = eval_select(q, rdf::graph{}, fed);
    EXPECT_EQ(calls, 1);
    ASSERT_EQ(r.size(), 1U);
    no_federation none;
    EXPECT_THROW(eval_select(q, rdf::graph{}, none), federation_error);
}
