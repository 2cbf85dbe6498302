#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "sparqlsec/rdf/store.hpp"
#include "sparqlsec/rdf/turtle.hpp"
#include "support/generators.hpp"

using namespace sparqlsec;
using namespace sparqlsec::rdf;

namespace {

term hc(const std::string &local) { return term::iri(std::string(ns::hc) + local); }
term foaf(const std::string &local) { return term::iri(std::string(ns::foaf) + local); }

} // namespace

TEST(Term, RejectsInvalidIris)
{
    EXPECT_THROW(term::iri(""), term_error);
    EXPECT_THROW(term::iri("http://a b"), term_error);
    EXPECT_THROW(term::iri("http://a>b"), term_error);
    EXPECT_NO_THROW(term::iri("urn:x"));
}

TEST(Term, RejectsBadLanguageTags)
{
    EXPECT_THROW(term::lang_literal("x", ""), term_error);
    EXPECT_THROW(term::lang_literal("x", "en_GB"), term_error);
    EXPECT_NO_THROW(term::lang_literal("x", "en-GB"));
}

TEST(Term, EqualityIsLexical)
{
    EXPECT_NE(term::literal("1"), term::typed_literal("1", xsd_integer));
    EXPECT_NE(term::literal("a"), term::lang_literal("a", "en"));
    EXPECT_EQ(term::iri("urn:a"), term::iri("urn:a"));
}

TEST(Term, EscapeString)
{
    EXPECT_EQ(escape_string("a\"b\\c\nd\te\rf"), "a\\\"b\\\\c\\nd\\te\\rf");
    EXPECT_EQ(escape_string("caf\xC3\xA9 #"), "caf\xC3\xA9 #");
}

TEST(Term, LocalName)
{
    EXPECT_EQ(local_name("http://hcsws.example/ontology#reportDate"), "reportDate");
    EXPECT_EQ(local_name("http://dbpedia.org/ontology/occupation"), "occupation");
    EXPECT_EQ(local_name("urn:x"), "urn:x");
}

TEST(Graph, RejectsInvalidTriples)
{
    graph g;
    EXPECT_THROW(g.insert(triple{term::literal("s"), hc("p"), hc("o")}), term_error);
    EXPECT_THROW(g.insert(triple{hc("s"), term::literal("p"), hc("o")}), term_error);
    std::vector<triple> batch = {{hc("a"), hc("p"), hc("b")}, {term::literal("s"), hc("p"), hc("o")}};
    EXPECT_THROW(g.insert(batch), term_error);
    EXPECT_TRUE(g.empty());
}

TEST(Graph, MatchWildcards)
{
    graph g;
    g.insert({hc("a"), hc("p"), hc("b")});
    g.insert({hc("a"), hc("q"), hc("b")});
    g.insert({hc("c"), hc("p"), term::literal("x")});
    EXPECT_EQ(g.match(hc("a"), std::nullopt, std::nullopt).size(), 2U);
    EXPECT_EQ(g.match(std::nullopt, hc("p"), std::nullopt).size(), 2U);
    EXPECT_EQ(g.match(std::nullopt, std::nullopt, term::literal("x")).size(), 1U);
    EXPECT_EQ(g.match(hc("c"), hc("q"), std::nullopt).size(), 0U);
}

TEST(GraphProperty, InsertThenDeleteRestores)
{
    testkit::rng_t rng(11);
    auto vocab = testkit::small_vocabulary();
    for (int round = 0; round < 300; ++round) {
        auto g = testkit::random_graph(rng, vocab, 30);
        auto before = g;
        auto extra = testkit::random_graph(rng, vocab, 10);
        std::vector<triple> fresh;
        for (const auto &t : extra) {
            if (!g.contains(t)) {
                fresh.push_back(t);
            }
        }
        auto added = g.insert(fresh);
        EXPECT_EQ(added, fresh.size());
        EXPECT_EQ(g.size(), before.size() + added);
        auto removed = g.erase(fresh);
        EXPECT_EQ(removed, fresh.size());
        EXPECT_EQ(g, before);
    }
}

TEST(GraphProperty, SizeTracksReturnedCounts)
{
    testkit::rng_t rng(12);
    auto vocab = testkit::small_vocabulary();
    for (int round = 0; round < 300; ++round) {
        auto g = testkit::random_graph(rng, vocab, 30);
        auto batch = testkit::random_graph(rng, vocab, 20);
        std::vector<triple> ts(batch.begin(), batch.end());
        auto size = g.size();
        auto added = g.insert(ts);
        EXPECT_EQ(g.size(), size + added);
        size = g.size();
        auto removed = g.erase(ts);
        EXPECT_EQ(g.size(), size - removed);
        EXPECT_EQ(removed, ts.size());
    }
}

TEST(Turtle, ParsesPrefixesListsAndDatatypes)
{
    auto g = parse_turtle(R"(@prefix ex: <http://example.org/> .
ex:a a ex:C ; ex:p "x" , "y"@en ; ex:q 42 .
ex:b ex:r "2016-03-14"^^<http://www.w3.org/2001/XMLSchema#date> . # trailing comment
_:n ex:p ex:a .
)");
    EXPECT_EQ(g.size(), 6U);
    EXPECT_TRUE(g.contains({term::iri("http://example.org/a"), term::iri(rdf_type), term::iri("http://example.org/C")}));
    EXPECT_TRUE(g.contains({term::iri("http://example.org/a"), term::iri("http://example.org/p"), term::lang_literal("y", "en")}));
    EXPECT_TRUE(g.contains({term::iri("http://example.org/a"), term::iri("http://example.org/q"), term::typed_literal("42", xsd_integer)}));
    EXPECT_TRUE(g.contains({term::blank("n"), term::iri("http://example.org/p"), term::iri("http://example.org/a")}));
}

TEST(Turtle, ReportsErrors)
{
    EXPECT_THROW(parse_turtle("ex:a ex:b ex:c ."), std::exception);
    EXPECT_THROW(parse_turtle("<urn:a> <urn:b> \"open ."), std::exception);
    EXPECT_THROW(parse_turtle("\"lit\" <urn:b> <urn:c> ."), std::exception);
}

TEST(Turtle, SnapshotRoundTrip)
{
    testkit::rng_t rng(13);
    auto vocab = testkit::small_vocabulary();
    for (int round = 0; round < 200; ++round) {
        auto g = testkit::random_graph(rng, vocab, 40);
        graph odd;
        odd.insert({term::iri("urn:x"), term::iri("urn:p"), term::literal(testkit::random_unicode(rng, 10))});
        g.insert(std::vector<triple>(odd.begin(), odd.end()));
        auto text = dump_snapshot(g);
        auto back = load_snapshot(text);
        EXPECT_EQ(back, g);
        EXPECT_EQ(dump_snapshot(back), text);
    }
}

TEST(Fixtures, LocalDatasetHasThePeopleAndOntology)
{
    auto f = load_default_fixtures();
    const auto &g = f.local;
    for (const char *name : {"Sam", "Mark", "Ben", "Sarah", "Ethan", "Gareath"}) {
        EXPECT_EQ(g.match(std::nullopt, foaf("firstName"), term::literal(name)).size(), 1U) << name;
    }
    EXPECT_TRUE(g.contains({hc("P1"), foaf("email"), term::literal("BenHolt@hcsws.example")}));
    EXPECT_TRUE(g.contains({hc("R1"), hc("reportFor"), hc("P1")}));
    EXPECT_TRUE(g.contains({hc("R1"), hc("editedBy"), hc("D1")}));
    std::size_t ontology = 0;
    for (const auto &t : g) {
        ontology += is_ontology_triple(t) ? 1 : 0;
    }
    EXPECT_GT(ontology, 0U);
    EXPECT_LT(ontology, g.size());
    EXPECT_LE(g.size(), 60U);
}

TEST(Fixtures, ExternalDatasetIsSeparate)
{
    auto f = load_default_fixtures();
    EXPECT_FALSE(f.external.match(std::nullopt, term::iri(std::string(ns::foaf) + "name"), std::nullopt).empty());
    EXPECT_TRUE(f.local.match(std::nullopt, term::iri(std::string(ns::foaf) + "name"), std::nullopt).empty());
}

TEST(Store, SnapshotRestore)
{
    auto f = load_default_fixtures();
    triple_store store(f.local);
    auto snap = store.snapshot();
    store.write([](graph &g) { g.clear(); });
    EXPECT_EQ(store.size(), 0U);
    store.restore(snap);
    EXPECT_EQ(store.snapshot(), snap);
    EXPECT_EQ(store.copy(), f.local);
}

TEST(Store, ConcurrentReadersAndWriters)
{
    triple_store store;
    std::vector<std::thread> threads;
    for (int w = 0; w < 4; ++w) {
        threads.emplace_back([&store, w] {
            for (int i = 0; i < 200; ++i) {
                store.write([&](graph &g) {
                    g.insert({term::iri("urn:s" + std::to_string(w)), term::iri("urn:p"),
                        term::literal(std::to_string(i))});
                });
                (void)store.size();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    EXPECT_EQ(store.size(), 800U);
}
