#include "sparqlsec/service/hcsws_service.hpp"

#include "sparqlsec/engine/sparql_json.hpp"
#include "sparqlsec/rdf/turtle.hpp"
#include "sparqlsec/service/templates.hpp"
#include "sparqlsec/sparql/parser.hpp"

namespace sparqlsec::service {

namespace {

nlohmann::json triples_json(const std::vector<rdf::triple> &ts)
{
    auto out = nlohmann::json::array();
    for (const auto &t : ts) {
        out.push_back(rdf::to_ntriples(t.subject) + " " + rdf::to_ntriples(t.predicate) + " " +
                      rdf::to_ntriples(t.object) + " .");
    }
    return out;
}

std::vector<rdf::triple> triples_from_json(const nlohmann::json &j)
{
    std::string text;
    for (const auto &line : j) {
        text += line.get<std::string>() + "\n";
    }
    auto g = rdf::load_snapshot(text);
    return {g.begin(), g.end()};
}

} // namespace

std::string_view to_string(response_state s) noexcept
{
    switch (s) {
    case response_state::results:
        return "results";
    case response_state::empty:
        return "empty";
    case response_state::error:
        return "error";
    }
    return "unknown";
}

std::string_view to_string(error_kind k) noexcept
{
    switch (k) {
    case error_kind::none:
        return "none";
    case error_kind::filter_rejected:
        return "filter_rejected";
    case error_kind::parse_error:
        return "parse_error";
    case error_kind::federation_error:
        return "federation_error";
    case error_kind::evaluation_error:
        return "evaluation_error";
    case error_kind::mode_locked:
        return "mode_locked";
    case error_kind::bad_request:
        return "bad_request";
    }
    return "unknown";
}

response_state parse_state(std::string_view s)
{
    for (auto v : {response_state::results, response_state::empty, response_state::error}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw std::invalid_argument("unknown response state '" + std::string(s) + "'");
}

error_kind parse_error_kind(std::string_view s)
{
    for (auto v : {error_kind::none, error_kind::filter_rejected, error_kind::parse_error, error_kind::federation_error,
             error_kind::evaluation_error, error_kind::mode_locked, error_kind::bad_request}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw std::invalid_argument("unknown error kind '" + std::string(s) + "'");
}

std::vector<std::string> service_response::values() const
{
    std::vector<std::string> out;
    for (const auto &row : results.rows) {
        for (const auto &name : results.variables) {
            if (auto it = row.find(name); it != row.end()) {
                out.push_back(it->second.value());
            }
        }
    }
    return out;
}

nlohmann::json to_json(const service_response &r, bool include_query)
{
    nlohmann::json j{
        {"state", to_string(r.state)},
        {"error", to_string(r.error)},
        {"message", r.message},
        {"mode", to_string(r.mode)},
        {"results", engine::to_sparql_json(r.results)},
        {"values", r.values()},
        {"log_sequence", r.log_sequence},
    };
    if (r.mutation) {
        j["mutation"] = {{"added", r.mutation->added}, {"removed", r.mutation->removed},
            {"added_triples", triples_json(r.mutation->added_triples)},
            {"removed_triples", triples_json(r.mutation->removed_triples)}};
    }
    if (r.verdict) {
        auto classes = nlohmann::json::array();
        for (auto c : r.verdict->classification) {
            classes.push_back(filter::to_string(c));
        }
        auto offending = nlohmann::json::array();
        for (const auto &o : r.verdict->offending) {
            offending.push_back({{"kind", o.entry.kind == filter::entry_kind::token ? "token" : "substring"},
                {"text", o.entry.text}, {"position", o.position}, {"class", filter::to_string(o.cls)}});
        }
        j["verdict"] = {{"decision", r.verdict->accepted() ? "accept" : "reject"}, {"classification", classes},
            {"offending", offending}};
    }
    if (include_query) {
        j["effective_query"] = r.effective_query;
    }
    return j;
}

service_response response_from_json(const nlohmann::json &j)
{
    service_response r;
    r.state = parse_state(j.at("state").get<std::string>());
    r.error = parse_error_kind(j.at("error").get<std::string>());
    r.message = j.value("message", "");
    r.mode = parse_mode(j.at("mode").get<std::string>());
    r.results = engine::from_sparql_json(j.at("results"));
    r.log_sequence = j.value("log_sequence", std::uint64_t{0});
    r.effective_query = j.value("effective_query", "");
    if (j.contains("mutation")) {
        const auto &m = j.at("mutation");
        engine::mutation_report report;
        report.added = m.at("added").get<std::size_t>();
        report.removed = m.at("removed").get<std::size_t>();
        report.added_triples = triples_from_json(m.at("added_triples"));
        report.removed_triples = triples_from_json(m.at("removed_triples"));
        r.mutation = std::move(report);
    }
    if (j.contains("verdict")) {
        const auto &v = j.at("verdict");
        filter::filter_verdict verdict;
        verdict.outcome = v.at("decision") == "accept" ? filter::decision::accept : filter::decision::reject;
        verdict.classification.clear();
        for (const auto &c : v.at("classification")) {
            for (auto k : {filter::threat_class::comment_termination, filter::threat_class::quote_escape,
                     filter::threat_class::keyword_smuggle, filter::threat_class::structure_punctuation,
                     filter::threat_class::clean}) {
                if (filter::to_string(k) == c.get<std::string>()) {
                    verdict.classification.insert(k);
                }
            }
        }
        for (const auto &o : v.at("offending")) {
            filter::offense off;
            off.entry = {o.at("kind") == "token" ? filter::entry_kind::token : filter::entry_kind::substring,
                o.at("text").get<std::string>()};
            off.position = o.at("position").get<std::size_t>();
            off.cls = filter::classify(off.entry);
            verdict.offending.push_back(std::move(off));
        }
        r.verdict = std::move(verdict);
    }
    return r;
}

hcsws_service::hcsws_service(service_config config, rdf::fixture_set fixtures)
    : config_(std::move(config)), fixture_local_(fixtures.local),
      external_(std::make_shared<const rdf::graph>(std::move(fixtures.external))), store_(std::move(fixtures.local)),
      blacklist_(config_.blacklist_path ? filter::blacklist::load(*config_.blacklist_path) : filter::blacklist::defaults())
{
    for (const auto &[iri, target] : config_.rewrite) {
        if (target == internal_endpoint) {
            federation_.add_graph(iri, external_);
        } else {
            federation_.add_http(iri, target);
        }
    }
    if (config_.query_log_path) {
        log_.open(*config_.query_log_path);
    }
}

std::unique_ptr<hcsws_service> hcsws_service::from_config(service_config config)
{
    config = with_default_paths(std::move(config));
    auto fixtures = rdf::load_fixtures(config.local_fixture, config.external_fixture);
    return std::make_unique<hcsws_service>(std::move(config), std::move(fixtures));
}

service_response hcsws_service::search(std::string_view doctor_name, std::optional<endpoint_mode> mode)
{
    return run(operation_kind::search, mode.value_or(config_.default_mode), {doctor_name});
}

service_response hcsws_service::update_name(
    std::string_view old_name, std::string_view new_name, std::optional<endpoint_mode> mode)
{
    return run(operation_kind::update, mode.value_or(config_.default_mode), {old_name, new_name});
}

service_response hcsws_service::delete_patient(std::string_view name, std::optional<endpoint_mode> mode)
{
    return run(operation_kind::remove, mode.value_or(config_.default_mode), {name});
}

service_response hcsws_service::run(operation_kind op, endpoint_mode mode, const std::vector<std::string_view> &inputs)
{
    service_response r;
    r.mode = mode;
    if (!mode_permitted(config_, mode)) {
        r.state = response_state::error;
        r.error = error_kind::mode_locked;
        r.message = std::string(to_string(mode)) + " mode is disabled; start the service with --unsafe";
        return finish(op, std::move(r));
    }
    if (mode == endpoint_mode::parameterized) {
        return execute_bound(op, inputs, std::move(r));
    }
    if (mode == endpoint_mode::filtered) {
        for (auto input : inputs) {
            auto verdict = filter::filter_input(input, blacklist_);
            if (!verdict.accepted()) {
                r.state = response_state::error;
                r.error = error_kind::filter_rejected;
                r.message = filter::explain_verdict(verdict);
                r.verdict = std::move(verdict);
                return finish(op, std::move(r));
            }
        }
        r.verdict = filter::filter_verdict{};
    }
    auto layout = mode == endpoint_mode::multiline ? template_layout::multiline : template_layout::single_line;
    bool exact = config_.paper_exact && mode == endpoint_mode::vulnerable;
    std::string text;
    switch (op) {
    case operation_kind::search:
        text = splice_search(inputs[0], layout);
        break;
    case operation_kind::update:
        text = splice_update(inputs[0], inputs[1], layout, exact);
        break;
    case operation_kind::remove:
        text = splice_delete(inputs[0], layout, exact);
        break;
    }
    return execute_text(op, text, std::move(r));
}

service_response hcsws_service::execute_text(operation_kind op, const std::string &text, service_response r)
{
    r.effective_query = text;
    try {
        if (op == operation_kind::search) {
            auto q = sparql::parse_query(text, rdf::standard_prefixes());
            r.results = store_.read([&](const rdf::graph &g) { return engine::eval_select(q, g, federation_); });
        } else {
            auto u = sparql::parse_update(text, rdf::standard_prefixes());
            r.mutation = store_.write([&](rdf::graph &g) { return engine::eval_update(u, g, federation_); });
        }
    } catch (const sparql::syntax_error &e) {
        r.state = response_state::error;
        r.error = error_kind::parse_error;
        r.message = e.what();
    } catch (const engine::federation_error &e) {
        r.state = response_state::error;
        r.error = error_kind::federation_error;
        r.message = e.what();
    } catch (const engine::evaluation_error &e) {
        r.state = response_state::error;
        r.error = error_kind::evaluation_error;
        r.message = e.what();
    }
    return finish(op, std::move(r));
}

service_response hcsws_service::execute_bound(
    operation_kind op, const std::vector<std::string_view> &inputs, service_response r)
{
    try {
        sparql::operation parsed = sparql::select_query{};
        std::string text;
        switch (op) {
        case operation_kind::search:
            parsed = search_template().bind({{"doctor", safe::param_value::plain(std::string(inputs[0]))}})
                         .render_parsed(&text);
            break;
        case operation_kind::update:
            parsed = update_template()
                         .bind({{"old", safe::param_value::plain(std::string(inputs[0]))},
                             {"new", safe::param_value::plain(std::string(inputs[1]))}})
                         .render_parsed(&text);
            break;
        case operation_kind::remove:
            parsed = delete_template().bind({{"name", safe::param_value::plain(std::string(inputs[0]))}})
                         .render_parsed(&text);
            break;
        }
        r.effective_query = text;
        if (const auto *q = std::get_if<sparql::select_query>(&parsed)) {
            r.results = store_.read([&](const rdf::graph &g) { return engine::eval_select(*q, g, federation_); });
        } else {
            const auto &u = std::get<sparql::update_request>(parsed);
            r.mutation = store_.write([&](rdf::graph &g) { return engine::eval_update(u, g, federation_); });
        }
    } catch (const safe::bind_error &e) {
        r.state = response_state::error;
        r.error = error_kind::bad_request;
        r.message = e.what();
    } catch (const engine::federation_error &e) {
        r.state = response_state::error;
        r.error = error_kind::federation_error;
        r.message = e.what();
    } catch (const engine::evaluation_error &e) {
        r.state = response_state::error;
        r.error = error_kind::evaluation_error;
        r.message = e.what();
    }
    return finish(op, std::move(r));
}

service_response hcsws_service::finish(operation_kind op, service_response r)
{
    if (r.error == error_kind::none) {
        bool any = op == operation_kind::search ? !r.results.empty()
                                                : r.mutation && (r.mutation->added + r.mutation->removed) > 0;
        r.state = any ? response_state::results : response_state::empty;
    }
    r.log_sequence = log_.append({0, op == operation_kind::search ? "search" : op == operation_kind::update ? "update" : "delete", std::string(to_string(r.mode)),
        r.effective_query, r.error == error_kind::none ? std::string(to_string(r.state)) : std::string(to_string(r.error))});
    return r;
}

engine::solution_set hcsws_service::external_sparql(std::string_view query_text)
{
    auto op = sparql::parse_operation(query_text, rdf::standard_prefixes());
    const auto *q = std::get_if<sparql::select_query>(&op);
    if (q == nullptr) {
        throw std::invalid_argument("the external endpoint is read-only");
    }
    engine::no_federation none;
    return engine::eval_select(*q, *external_, none);
}

void hcsws_service::reset() { store_.replace(fixture_local_.copy()); }

void hcsws_service::load(rdf::graph local)
{
    fixture_local_.replace(local);
    store_.replace(std::move(local));
}

std::string hcsws_service::snapshot() const { return store_.snapshot(); }

std::string hcsws_service::fixture_snapshot() const { return fixture_local_.snapshot(); }

} // namespace sparqlsec::service
