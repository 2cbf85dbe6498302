#include <gtest/gtest.h>

#include <httplib.h>

#include "sparqlsec/attack/runner.hpp"
#include "sparqlsec/engine/federation.hpp"
#include "sparqlsec/engine/sparql_json.hpp"
#include "sparqlsec/service/http_server.hpp"
#include "sparqlsec/sparql/parser.hpp"

using namespace sparqlsec;
using namespace sparqlsec::service;

namespace {

class HttpFixture : public ::testing::Test {
protected:
    void start(bool admin, bool debug = false)
    {
        service_config c;
        c.unsafe = true;
        c.admin = admin;
        c.debug_effective_query = debug;
        c.default_mode = endpoint_mode::vulnerable;
        svc = hcsws_service::from_config(c);
        server = std::make_unique<http_server>(*svc);
        ASSERT_GT(server->bind("127.0.0.1", 0), 0);
        server->start();
        client = std::make_unique<httplib::Client>("127.0.0.1", server->port());
    }

    void TearDown() override
    {
        if (server) {
            server->stop();
        }
    }

    std::string url() const { return "http://127.0.0.1:" + std::to_string(server->port()); }

    nlohmann::json post_json(const std::string &path, const nlohmann::json &body, int expect_status)
    {
        auto res = client->Post(path, body.dump(), "application/json");
        EXPECT_TRUE(res);
        if (!res) {
            return {};
        }
        EXPECT_EQ(res->status, expect_status) << res->body;
        return nlohmann::json::parse(res->body);
    }

    std::unique_ptr<hcsws_service> svc;
    std::unique_ptr<http_server> server;
    std::unique_ptr<httplib::Client> client;
};

} // namespace

TEST_F(HttpFixture, Health)
{
    start(false);
    auto res = client->Get("/health");
    ASSERT_TRUE(res);
    auto j = nlohmann::json::parse(res->body);
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["default_mode"], "vulnerable");
    EXPECT_EQ(j["triples"], svc->store().size());
}

TEST_F(HttpFixture, SearchUpdateDelete)
{
    start(false);
    auto s = post_json("/search", {{"doctor_name", "Sam"}, {"mode", "parameterized"}}, 200);
    EXPECT_EQ(s["state"], "results");
    EXPECT_EQ(s["values"], nlohmann::json::array({"Ben"}));
    EXPECT_FALSE(s.contains("effective_query"));
    auto u = post_json("/update", {{"old_name", "Gareath"}, {"new_name", "Gary"}}, 200);
    EXPECT_EQ(u["state"], "results");
    auto d = post_json("/delete", {{"name", "Gary"}}, 200);
    EXPECT_EQ(d["state"], "results");
    auto bad = post_json("/search", {{"doctor_name", "Sam\" }} {{"}}, 400);
    EXPECT_EQ(bad["error"], "parse_error");
    auto rejected = post_json("/search", {{"doctor_name", "Sam#"}, {"mode", "filtered"}}, 400);
    EXPECT_EQ(rejected["error"], "filter_rejected");
    auto res = client->Post("/search", "not json", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    auto missing = client->Post("/search", "{}", "application/json");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 400);
}

TEST_F(HttpFixture, DebugIncludesEffectiveQuery)
{
    start(false, true);
    auto s = post_json("/search", {{"doctor_name", "Sam"}}, 200);
    ASSERT_TRUE(s.contains("effective_query"));
    EXPECT_NE(s["effective_query"].get<std::string>().find("\"Sam\""), std::string::npos);
}

TEST_F(HttpFixture, AdminEndpointsGated)
{
    start(false);
    for (const char *path : {"/store/dump", "/log"}) {
        auto res = client->Get(path);
        ASSERT_TRUE(res);
        EXPECT_EQ(res->status, 403) << path;
    }
    auto res = client->Post("/store/reset");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 403);
}

TEST_F(HttpFixture, AdminDumpResetLoadLog)
{
    start(true);
    auto dump = client->Get("/store/dump");
    ASSERT_TRUE(dump);
    EXPECT_EQ(dump->body, svc->fixture_snapshot());
    post_json("/delete", {{"name", "Gareath\".\n?a ?b ?c.}\nWHERE{\n?a ?b ?c.\n}#"}}, 200);
    EXPECT_EQ(svc->store().size(), 0U);
    auto reset = client->Post("/store/reset");
    ASSERT_TRUE(reset);
    EXPECT_EQ(reset->status, 200);
    EXPECT_EQ(svc->snapshot(), svc->fixture_snapshot());
    auto log = client->Get("/log");
    ASSERT_TRUE(log);
    auto entries = nlohmann::json::parse(log->body);
    ASSERT_FALSE(entries.empty());
    auto load = client->Post("/store/load", "<urn:a> <urn:b> <urn:c> .", "text/turtle");
    ASSERT_TRUE(load);
    EXPECT_EQ(load->status, 200);
    EXPECT_EQ(svc->store().size(), 1U);
    auto broken = client->Post("/store/load", "<urn:a> <urn:b> .", "text/turtle");
    ASSERT_TRUE(broken);
    EXPECT_EQ(broken->status, 400);
}

TEST_F(HttpFixture, ExternalSparqlProtocol)
{
    start(false);
    auto res = client->Post("/external/sparql", "SELECT ?n WHERE { ?a <http://xmlns.com/foaf/0.1/name> ?n }",
        "application/sparql-query");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_NE(res->get_header_value("Content-Type").find("application/sparql-results+json"), std::string::npos);
    auto set = engine::from_sparql_json(nlohmann::json::parse(res->body));
    EXPECT_EQ(set.size(), 5U);
    auto get = client->Get("/external/sparql?query=SELECT%20%3Fs%20WHERE%20%7B%20%3Fs%20%3Fp%20%3Fo%20%7D%20LIMIT%202");
    ASSERT_TRUE(get);
    EXPECT_EQ(get->status, 200);
    auto upd = client->Post("/external/sparql", "DELETE WHERE { ?a ?b ?c }", "application/sparql-query");
    ASSERT_TRUE(upd);
    EXPECT_EQ(upd->status, 400);
}

TEST_F(HttpFixture, FederationOverHttp)
{
    start(false);
    auto q = sparql::parse_query("SELECT ?n WHERE { ?a <http://xmlns.com/foaf/0.1/name> ?n }");
    auto r = engine::http_select(url() + "/external/sparql", q);
    EXPECT_EQ(r.size(), 5U);
    engine::federation_registry fed;
    fed.add_http("http://remote.example/sparql", url() + "/external/sparql");
    auto outer = sparql::parse_query(
        "SELECT ?n WHERE { SERVICE <http://remote.example/sparql> { ?a <http://xmlns.com/foaf/0.1/name> ?n } }");
    EXPECT_EQ(engine::eval_select(outer, rdf::graph{}, fed).size(), 5U);
    EXPECT_THROW(engine::http_select("http://127.0.0.1:1/sparql", q), engine::federation_error);
}

TEST_F(HttpFixture, RemoteAttackRunMatchesInProcess)
{
    start(true);
    attack::http_target target(url());
    auto corpus = attack::load_default_corpus();
    auto fixtures = rdf::load_default_fixtures();
    for (auto mode : {endpoint_mode::vulnerable, endpoint_mode::parameterized}) {
        auto report = attack::run_corpus(corpus, mode, target, fixtures);
        ASSERT_TRUE(report.valid) << report.invalid_reason;
        EXPECT_TRUE(report.matches_expected()) << attack::render_table(report.matrix);
        for (const auto &o : report.outcomes) {
            EXPECT_FALSE(o.effective_query.empty() && o.error != error_kind::filter_rejected) << o.id;
        }
    }
}

TEST(HttpTarget, UnreachableServiceIsEnvironmentError)
{
    attack::http_target target("http://127.0.0.1:1");
    auto corpus = attack::load_default_corpus();
    auto report = attack::run_corpus(corpus, endpoint_mode::vulnerable, target, rdf::load_default_fixtures());
    EXPECT_FALSE(report.valid);
    EXPECT_FALSE(report.invalid_reason.empty());
}
