#include "sparqlsec/attack/runner.hpp"

#include <algorithm>
#include <chrono>

#include "sparqlsec/rdf/turtle.hpp"

namespace sparqlsec::attack {

namespace {

using service::endpoint_mode;
using service::response_state;

constexpr injection_class all_classes[] = {injection_class::sparql, injection_class::blind_sparql, injection_class::sparul};
constexpr asset all_assets[] = {asset::local_rdf, asset::external_rdf, asset::local_owl, asset::external_owl};

std::set<std::string> predicates_of(const rdf::graph &g)
{
    std::set<std::string> out;
    for (const auto &t : g) {
        out.insert(t.predicate.value());
    }
    return out;
}

std::set<std::string> objects_of(const rdf::graph &g, const std::string &predicate)
{
    std::set<std::string> out;
    for (const auto &t : g.match(std::nullopt, rdf::term::iri(predicate), std::nullopt)) {
        out.insert(t.object.value());
    }
    return out;
}

std::string first_common(const std::set<std::string> &candidates, const std::vector<std::string> &values)
{
    for (const auto &v : values) {
        if (candidates.contains(v)) {
            return v;
        }
    }
    return {};
}

bool matches(const triple_shape &shape, const rdf::triple &t)
{
    return (!shape.subject || t.subject.value() == *shape.subject) &&
           (!shape.predicate || t.predicate.value() == *shape.predicate) &&
           (!shape.object || t.object.value() == *shape.object);
}

std::string describe(const rdf::triple &t)
{
    return rdf::to_ntriples(t.subject) + " " + rdf::to_ntriples(t.predicate) + " " + rdf::to_ntriples(t.object);
}

service::service_response submit(const attack_case &c, const std::string &payload, endpoint_mode mode, attack_target &target)
{
    switch (c.endpoint) {
    case target_endpoint::search:
        return target.search(payload, mode);
    case target_endpoint::update_new_name:
        return target.update_name(c.old_name.value_or(""), payload, mode);
    case target_endpoint::delete_name:
        return target.delete_patient(payload, mode);
    }
    throw std::logic_error("unhandled endpoint");
}

/// Sets outcome.succeeded and outcome.evidence.
void judge(const attack_case &c, attack_outcome &out, const service::service_response &r,
    const std::optional<service::service_response> &control, const rdf::graph &pre, const rdf::graph &post,
    const rdf::fixture_set &fixtures)
{
    auto values = r.values();
    const auto &o = c.oracle;
    switch (o.kind) {
    case oracle_kind::reads_object_of:
        if (auto hit = first_common(objects_of(pre, o.predicate), values); !hit.empty()) {
            out.succeeded = true;
            out.evidence = "returned \"" + hit + "\"";
        }
        break;
    case oracle_kind::reads_all_predicates: {
        auto preds = predicates_of(pre);
        std::set<std::string> seen(values.begin(), values.end());
        if (!preds.empty() && std::includes(seen.begin(), seen.end(), preds.begin(), preds.end())) {
            out.succeeded = true;
            out.evidence = "returned all " + std::to_string(preds.size()) + " local predicates";
        }
        break;
    }
    case oracle_kind::reads_external_object_of:
        if (auto hit = first_common(objects_of(fixtures.external, o.predicate), values); !hit.empty()) {
            out.succeeded = true;
            out.evidence = "returned external value \"" + hit + "\"";
        }
        break;
    case oracle_kind::reads_external_predicates: {
        auto external = predicates_of(fixtures.external);
        for (const auto &p : predicates_of(pre)) {
            external.erase(p);
        }
        if (auto hit = first_common(external, values); !hit.empty()) {
            out.succeeded = true;
            out.evidence = "returned external predicate <" + hit + ">";
        }
        break;
    }
    case oracle_kind::blind_differential:
        if (control && r.state == response_state::results && control->state == response_state::empty) {
            out.succeeded = true;
            out.evidence = "probe returned " + std::to_string(r.results.size()) + " row(s), control returned none";
        }
        break;
    case oracle_kind::adds_triples: {
        std::vector<std::string> found;
        for (const auto &shape : o.patterns) {
            for (const auto &t : post) {
                if (!pre.contains(t) && matches(shape, t)) {
                    found.push_back(describe(t));
                    break;
                }
            }
        }
        if (!o.patterns.empty() && found.size() == o.patterns.size()) {
            out.succeeded = true;
            for (const auto &f : found) {
                out.evidence += (out.evidence.empty() ? "added " : "; added ") + f;
            }
        }
        break;
    }
    case oracle_kind::introduces_predicate:
        if (!predicates_of(pre).contains(o.predicate) && predicates_of(post).contains(o.predicate)) {
            out.succeeded = true;
            out.evidence = "new predicate <" + o.predicate + "> present";
        }
        break;
    case oracle_kind::empties_store:
        if (!pre.empty() && post.empty()) {
            out.succeeded = true;
            out.evidence = "store emptied (" + std::to_string(pre.size()) + " triples removed)";
        }
        break;
    case oracle_kind::removes_ontology: {
        auto count = [](const rdf::graph &g) {
            return std::count_if(g.begin(), g.end(), [](const rdf::triple &t) { return rdf::is_ontology_triple(t); });
        };
        auto before = count(pre);
        if (before > 0 && count(post) == 0) {
            out.succeeded = true;
            out.evidence = std::to_string(before) + " ontology triples removed";
        }
        break;
    }
    }
}

std::size_t display_width(std::string_view s)
{
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string cell_text(const report_matrix &m, injection_class c, asset a)
{
    if (!applicable(c, a)) {
        return "—";
    }
    auto effects = m.at(c, a);
    if (effects.empty()) {
        return "none";
    }
    std::string out;
    for (auto e : effects) {
        auto name = std::string(to_string(e));
        name[0] = static_cast<char>(name[0] - 'a' + 'A');
        out += (out.empty() ? "" : " ") + name;
    }
    return out;
}

} // namespace

std::set<effect> report_matrix::at(injection_class c, asset a) const
{
    auto it = cells.find({c, a});
    return it == cells.end() ? std::set<effect>{} : it->second;
}

bool report_matrix::empty() const
{
    return std::all_of(cells.begin(), cells.end(), [](const auto &kv) { return kv.second.empty(); });
}

bool applicable(injection_class c, asset a) noexcept
{
    return c != injection_class::sparul || a == asset::local_rdf || a == asset::local_owl;
}

report_matrix expected_matrix(endpoint_mode mode)
{
    report_matrix m;
    if (mode == endpoint_mode::vulnerable) {
        for (auto c : {injection_class::sparql, injection_class::blind_sparql}) {
            for (auto a : all_assets) {
                m.cells[{c, a}] = {effect::read};
            }
        }
        m.cells[{injection_class::sparul, asset::local_rdf}] = {effect::write, effect::remove};
        m.cells[{injection_class::sparul, asset::local_owl}] = {effect::write, effect::remove};
    } else if (mode == endpoint_mode::multiline) {
        m.cells[{injection_class::sparul, asset::local_rdf}] = {effect::write};
    }
    return m;
}

report_matrix aggregate(const std::vector<attack_case> &cases, const std::vector<attack_outcome> &outcomes)
{
    report_matrix m;
    for (const auto &o : outcomes) {
        if (!o.succeeded) {
            continue;
        }
        auto it = std::find_if(cases.begin(), cases.end(), [&](const attack_case &c) { return c.id == o.id; });
        if (it != cases.end()) {
            m.cells[{it->cls, it->target_asset}].insert(it->intended);
        }
    }
    return m;
}

std::size_t corpus_report::succeeded() const
{
    return static_cast<std::size_t>(
        std::count_if(outcomes.begin(), outcomes.end(), [](const attack_outcome &o) { return o.succeeded; }));
}

attack_outcome run_case(const attack_case &c, endpoint_mode mode, attack_target &target, const rdf::fixture_set &fixtures)
{
    auto start = std::chrono::steady_clock::now();
    attack_outcome out;
    out.id = c.id;
    out.mode = mode;

    target.reset();
    out.pre_snapshot = target.snapshot();
    auto response = submit(c, c.payload_canonical, mode, target);
    out.post_snapshot = target.snapshot();
    std::optional<service::service_response> control;
    if (c.control_payload) {
        target.reset();
        control = submit(c, *c.control_payload, mode, target);
    }
    target.reset();

    out.state = response.state;
    out.error = response.error;
    out.verdict = response.verdict;
    out.effective_query = response.effective_query;
    auto pre = rdf::load_snapshot(out.pre_snapshot);
    auto post = rdf::load_snapshot(out.post_snapshot);
    judge(c, out, response, control, pre, post, fixtures);
    if (!out.succeeded) {
        out.evidence = response.error == service::error_kind::none
                           ? std::string("goal not reached (") + std::string(service::to_string(response.state)) + ")"
                           : std::string(service::to_string(response.error)) + ": " + response.message;
        while (!out.evidence.empty() && out.evidence.back() == '\n') {
            out.evidence.pop_back();
        }
        std::replace(out.evidence.begin(), out.evidence.end(), '\n', ';');
    }
    out.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

verbatim_outcome run_verbatim(const attack_case &c, endpoint_mode mode, attack_target &target)
{
    target.reset();
    auto r = submit(c, c.payload_verbatim, mode, target);
    target.reset();
    verbatim_outcome v;
    v.state = r.state;
    v.error = std::string(service::to_string(r.error));
    v.accepted = r.error != service::error_kind::filter_rejected && r.error != service::error_kind::mode_locked &&
                 r.effective_query.find(c.payload_verbatim) != std::string::npos;
    v.parsed = r.error != service::error_kind::parse_error && r.error != service::error_kind::mode_locked &&
               r.error != service::error_kind::filter_rejected;
    return v;
}

corpus_report run_corpus(
    const std::vector<attack_case> &cases, endpoint_mode mode, attack_target &target, const rdf::fixture_set &fixtures)
{
    auto start = std::chrono::steady_clock::now();
    corpus_report report;
    report.mode = mode;
    report.expected = expected_matrix(mode);
    try {
        for (const auto &c : cases) {
            auto outcome = run_case(c, mode, target, fixtures);
            if (mode == endpoint_mode::vulnerable) {
                outcome.verbatim = run_verbatim(c, mode, target);
            }
            report.outcomes.push_back(std::move(outcome));
        }
    } catch (const environment_error &e) {
        report.valid = false;
        report.invalid_reason = e.what();
    }
    report.matrix = aggregate(cases, report.outcomes);
    report.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string render_table(const report_matrix &m)
{
    const std::vector<std::string> header = {"Assets / Injections", "Local RDF", "External RDF", "Local OWL", "External OWL"};
    std::vector<std::vector<std::string>> rows = {header};
    const char *names[] = {"SPARQL", "Blind SPARQL", "SPARUL"};
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<std::string> row = {names[i]};
        for (auto a : all_assets) {
            row.push_back(cell_text(m, all_classes[i], a));
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], display_width(row[i]));
        }
    }
    std::string out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            out += (i == 0 ? "| " : " | ") + rows[r][i] + std::string(widths[i] - display_width(rows[r][i]), ' ');
        }
        out += " |\n";
        if (r == 0) {
            for (std::size_t i = 0; i < widths.size(); ++i) {
                out += "|" + std::string(widths[i] + 2, '-');
            }
            out += "|\n";
        }
    }
    return out;
}

nlohmann::json to_json(const report_matrix &m)
{
    nlohmann::json j = nlohmann::json::object();
    for (auto c : all_classes) {
        nlohmann::json row = nlohmann::json::object();
        for (auto a : all_assets) {
            if (!applicable(c, a)) {
                row[std::string(to_string(a))] = nullptr;
                continue;
            }
            auto effects = nlohmann::json::array();
            for (auto e : m.at(c, a)) {
                effects.push_back(to_string(e));
            }
            row[std::string(to_string(a))] = effects;
        }
        j[std::string(to_string(c))] = row;
    }
    return j;
}

nlohmann::json to_json(const corpus_report &r, const std::vector<attack_case> &cases)
{
    auto outcomes = nlohmann::json::array();
    for (const auto &o : r.outcomes) {
        auto it = std::find_if(cases.begin(), cases.end(), [&](const attack_case &c) { return c.id == o.id; });
        nlohmann::json j{
            {"id", o.id},
            {"succeeded", o.succeeded},
            {"evidence", o.evidence},
            {"state", service::to_string(o.state)},
            {"error", service::to_string(o.error)},
            {"duration_ms", o.duration_ms},
        };
        if (it != cases.end()) {
            j["injection_class"] = to_string(it->cls);
            j["asset"] = to_string(it->target_asset);
            j["effect"] = to_string(it->intended);
            j["cia"] = to_string(it->objective);
            j["goal"] = it->goal;
        }
        if (o.verdict && !o.verdict->accepted()) {
            auto classes = nlohmann::json::array();
            for (auto c : o.verdict->classification) {
                classes.push_back(filter::to_string(c));
            }
            j["filter_classification"] = classes;
        }
        if (o.verbatim) {
            j["verbatim"] = {{"accepted", o.verbatim->accepted}, {"parsed", o.verbatim->parsed},
                {"state", service::to_string(o.verbatim->state)}, {"error", o.verbatim->error}};
        }
        outcomes.push_back(std::move(j));
    }
    return {
        {"mode", service::to_string(r.mode)},
        {"valid", r.valid},
        {"invalid_reason", r.invalid_reason},
        {"cases", r.outcomes.size()},
        {"succeeded", r.succeeded()},
        {"matrix", to_json(r.matrix)},
        {"expected_matrix", to_json(r.expected)},
        {"matches_expected", r.matches_expected()},
        {"duration_ms", r.duration_ms},
        {"risk", {{"assets", {"local RDF", "external RDF", "local OWL", "external OWL"}}, {"threat", "malicious code"},
                     {"threat_agent", "malicious user"}, {"vulnerability", "unvalidated user input"}}},
        {"outcomes", outcomes},
    };
}

} // namespace sparqlsec::attack
