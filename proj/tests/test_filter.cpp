#include <gtest/gtest.h>

#include <filesystem>
#include <regex>

#include "sparqlsec/attack/corpus.hpp"
#include "sparqlsec/filter/blacklist.hpp"
#include "sparqlsec/rdf/store.hpp"
#include "support/generators.hpp"

using namespace sparqlsec;
using namespace sparqlsec::filter;

namespace {

bool has_class(const filter_verdict &v, threat_class c) { return v.classification.contains(c); }

} // namespace

TEST(Blacklist, DefaultFileMatchesDefaults)
{
    auto loaded = blacklist::load(rdf::default_data_dir() / "blacklist" / "default.txt");
    EXPECT_EQ(loaded.entries(), blacklist::defaults().entries());
}

TEST(Blacklist, ParseFormat)
{
    auto bl = blacklist::parse("token:UNION\n\nsubstring:--\r\n");
    ASSERT_EQ(bl.entries().size(), 2U);
    EXPECT_EQ(bl.entries()[0].kind, entry_kind::token);
    EXPECT_EQ(bl.entries()[1].text, "--");
    EXPECT_THROW(blacklist::parse("UNION\n"), blacklist_error);
    EXPECT_THROW(blacklist::parse("token:\n"), blacklist_error);
}

TEST(Blacklist, Classification)
{
    EXPECT_EQ(classify({entry_kind::substring, "#"}), threat_class::comment_termination);
    EXPECT_EQ(classify({entry_kind::substring, "\""}), threat_class::quote_escape);
    EXPECT_EQ(classify({entry_kind::substring, "\\"}), threat_class::quote_escape);
    EXPECT_EQ(classify({entry_kind::token, "WHERE"}), threat_class::keyword_smuggle);
    EXPECT_EQ(classify({entry_kind::substring, "{"}), threat_class::structure_punctuation);
    EXPECT_EQ(classify({entry_kind::substring, "\"."}), threat_class::structure_punctuation);
}

TEST(Filter, AcceptsAndExplains)
{
    auto v = filter_input("Sam", blacklist::defaults());
    EXPECT_TRUE(v.accepted());
    EXPECT_EQ(v.classification, std::set<threat_class>{threat_class::clean});
    EXPECT_EQ(explain_verdict(v), "input accepted\n");
    auto r = filter_input("Sam\"#", blacklist::defaults());
    EXPECT_FALSE(r.accepted());
    EXPECT_EQ(explain_verdict(r), "position 3: substring '\"' (quote_escape)\nposition 4: substring '#' (comment_termination)\n");
}

TEST(Filter, KeywordsOnlyCountOutsideData)
{
    EXPECT_TRUE(filter_input("Selma Wheredale", blacklist::defaults()).accepted());
    EXPECT_TRUE(filter_input("where", blacklist::defaults()).accepted());
    auto v = filter_input("x\" } where", blacklist::defaults());
    EXPECT_TRUE(has_class(v, threat_class::keyword_smuggle));
}

TEST(FilterProperty, SoundOnCorpus)
{
    for (const auto &c : attack::load_default_corpus()) {
        for (const auto *p : {&c.payload_canonical, &c.payload_verbatim}) {
            auto v = filter_input(*p, blacklist::defaults());
            EXPECT_FALSE(v.accepted()) << c.id;
            EXPECT_FALSE(v.offending.empty()) << c.id;
            EXPECT_FALSE(has_class(v, threat_class::clean)) << c.id;
        }
    }
}

TEST(FilterProperty, BenignPassThrough)
{
    for (const char *name : {"Sam", "Mark", "Sarah", "Ben", "Ethan", "Gareath", "Mary-Jane O'Neil", "J. R. Smith"}) {
        EXPECT_TRUE(filter_input(name, blacklist::defaults()).accepted()) << name;
    }
    testkit::rng_t rng(61);
    const std::string first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    const std::string rest = first + " .'-";
    const std::regex benign("^[A-Za-z][A-Za-z .'-]*$");
    for (int i = 0; i < 5000; ++i) {
        std::string s(1, first[rng() % first.size()]);
        auto n = rng() % 20;
        for (std::size_t k = 0; k < n; ++k) {
            s += rest[rng() % rest.size()];
        }
        ASSERT_TRUE(std::regex_match(s, benign));
        EXPECT_TRUE(filter_input(s, blacklist::defaults()).accepted()) << s;
    }
}

TEST(FilterProperty, Monotonic)
{
    testkit::rng_t rng(62);
    const std::vector<blacklist_entry> extras = {{entry_kind::token, "UNION"}, {entry_kind::substring, "--"},
        {entry_kind::substring, "a"}, {entry_kind::token, "LIMIT"}, {entry_kind::substring, "'"},
        {entry_kind::token, "Sam"}};
    std::vector<std::string> payloads;
    for (const auto &c : attack::load_default_corpus()) {
        payloads.push_back(c.payload_canonical);
    }
    const auto defaults = blacklist::defaults();
    for (int i = 0; i < 2000; ++i) {
        auto input = testkit::adversarial_value(rng, payloads);
        blacklist small;
        blacklist large;
        for (const auto &e : defaults.entries()) {
            if (rng() % 2 == 0) {
                small.add(e);
                large.add(e);
            } else if (rng() % 2 == 0) {
                large.add(e);
            }
        }
        for (const auto &e : extras) {
            if (rng() % 3 == 0) {
                large.add(e);
            }
        }
        auto a = filter_input(input, small);
        auto b = filter_input(input, large);
        if (!a.accepted()) {
            EXPECT_FALSE(b.accepted()) << input;
            EXPECT_GE(b.offending.size(), a.offending.size());
        }
    }
}

TEST(FilterProperty, ClassesTriggerIndependently)
{
    const std::vector<std::pair<threat_class, std::vector<std::string>>> families = {
        {threat_class::comment_termination, {"Sam#", "#", "Ben #tail", "a#b"}},
        {threat_class::quote_escape, {"Sam\"", "O\\Brien", "\"\"", "x\"y"}},
        {threat_class::keyword_smuggle, {"x\" DELETE", "Sam\" SELECT ?x", "a\" . FILTER", "b\" INSERT DATA", "q\" PREFIX"}},
        {threat_class::structure_punctuation, {"Sam}", "{x", "a;b", "}}", "x;"}},
    };
    const auto defaults = blacklist::defaults();
    for (const auto &[cls, inputs] : families) {
        blacklist only;
        for (const auto &e : defaults.entries()) {
            if (classify(e) == cls) {
                only.add(e);
            }
        }
        for (const auto &input : inputs) {
            auto v = filter_input(input, only);
            EXPECT_FALSE(v.accepted()) << input;
            EXPECT_EQ(v.classification, std::set<threat_class>{cls}) << input;
            EXPECT_TRUE(has_class(filter_input(input, blacklist::defaults()), cls)) << input;
        }
    }
}

TEST(FilterProperty, SingleClassFamiliesUnderDefaults)
{
    auto bl = blacklist::defaults();
    for (const auto &[cls, input] : std::vector<std::pair<threat_class, std::string>>{
             {threat_class::comment_termination, "Sam#"}, {threat_class::quote_escape, "x\"y"},
             {threat_class::structure_punctuation, "a;b"}}) {
        EXPECT_EQ(filter_input(input, bl).classification, std::set<threat_class>{cls}) << input;
    }
}

TEST(Filter, KnownIncompleteness)
{
    auto v = filter_input("Sam' UNION", blacklist::defaults());
    EXPECT_TRUE(v.accepted());
}
