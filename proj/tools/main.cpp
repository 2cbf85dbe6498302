#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "sparqlsec/attack/blind.hpp"
#include "sparqlsec/attack/runner.hpp"
#include "sparqlsec/rdf/turtle.hpp"
#include "sparqlsec/service/http_server.hpp"

namespace {

using namespace sparqlsec;

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;
constexpr int exit_environment = 3;

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

service::http_server *running_server = nullptr;

void on_signal(int)
{
    if (running_server != nullptr) {
        running_server->stop();
    }
}

std::vector<std::string> split_ids(const std::string &s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        auto part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!part.empty()) {
            out.push_back(part);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

httplib::Client admin_client(const std::string &url)
{
    httplib::Client client(url);
    if (!client.is_valid()) {
        throw usage_error("invalid --url '" + url + "'");
    }
    client.set_connection_timeout(5);
    return client;
}

std::string expect_ok(const httplib::Result &res, const std::string &what)
{
    if (!res) {
        throw std::runtime_error(what + ": service unreachable (" + httplib::to_string(res.error()) + ")");
    }
    if (res->status != 200) {
        throw std::runtime_error(what + ": HTTP " + std::to_string(res->status) + " " + res->body);
    }
    return res->body;
}

struct serve_args {
    std::string config_path;
    std::string host;
    int port = -1;
    std::string mode;
    std::string local;
    std::string external;
    std::string blacklist;
    std::string query_log;
    bool unsafe = false;
    bool paper_exact = false;
    bool debug = false;
    bool admin = false;
};

int serve(const serve_args &a)
{
    service::service_config config = a.config_path.empty() ? service::service_config{} : service::load_config(a.config_path);
    if (!a.host.empty()) {
        config.host = a.host;
    }
    if (a.port >= 0) {
        config.port = static_cast<std::uint16_t>(a.port);
    }
    if (!a.mode.empty()) {
        config.default_mode = service::parse_mode(a.mode);
    }
    if (!a.local.empty()) {
        config.local_fixture = a.local;
    }
    if (!a.external.empty()) {
        config.external_fixture = a.external;
    }
    if (!a.blacklist.empty()) {
        config.blacklist_path = a.blacklist;
    }
    if (!a.query_log.empty()) {
        config.query_log_path = a.query_log;
    }
    config.unsafe = config.unsafe || a.unsafe;
    config.paper_exact = config.paper_exact || a.paper_exact;
    config.debug_effective_query = config.debug_effective_query || a.debug;
    config.admin = config.admin || a.admin;
    if (!service::mode_permitted(config, config.default_mode)) {
        throw usage_error(std::string(service::to_string(config.default_mode)) + " mode requires --unsafe");
    }

    auto svc = service::hcsws_service::from_config(config);
    service::http_server server(*svc);
    int port = server.bind(config.host, config.port);
    if (port < 0) {
        throw std::runtime_error("cannot bind " + config.host + ":" + std::to_string(config.port));
    }
    std::cout << "listening on http://" << config.host << ":" << port << " (default mode "
              << service::to_string(config.default_mode) << (config.unsafe ? ", unsafe" : "") << ")" << std::endl;
    running_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen();
    running_server = nullptr;
    return exit_ok;
}

struct attack_args {
    std::string mode = "parameterized";
    bool unsafe = false;
    std::string cases;
    std::string report_dir = "reports";
    bool paper_exact = false;
    std::string url;
    std::string corpus;
};

int attack_run(const attack_args &a)
{
    auto mode = service::parse_mode(a.mode);
    service::service_config config;
    config.unsafe = a.unsafe;
    config.paper_exact = a.paper_exact;
    config.debug_effective_query = true;
    config.admin = true;
    if (!service::mode_permitted(config, mode)) {
        throw usage_error(a.mode + " mode requires --unsafe");
    }
    auto corpus = a.corpus.empty() ? attack::load_default_corpus() : attack::load_corpus(a.corpus);
    if (!a.cases.empty()) {
        corpus = attack::select_cases(corpus, split_ids(a.cases));
    }
    auto fixtures = rdf::load_default_fixtures();

    std::unique_ptr<service::hcsws_service> svc;
    std::unique_ptr<attack::attack_target> target;
    if (a.url.empty()) {
        svc = service::hcsws_service::from_config(config);
        target = std::make_unique<attack::in_process_target>(*svc);
    } else {
        target = std::make_unique<attack::http_target>(a.url);
    }

    auto report = attack::run_corpus(corpus, mode, *target, fixtures);
    if (!report.valid) {
        std::cerr << "error: run aborted: " << report.invalid_reason << "\n";
        return exit_environment;
    }
    auto table = attack::render_table(report.matrix);
    std::filesystem::path dir(a.report_dir);
    write_file(dir / ("attack-" + a.mode + ".json"), attack::to_json(report, corpus).dump(2) + "\n");
    write_file(dir / ("attack-" + a.mode + ".txt"), table);

    std::cout << "mode: " << a.mode << "\n";
    for (const auto &o : report.outcomes) {
        std::cout << "  case " << o.id << ": " << (o.succeeded ? "succeeded" : "failed") << " - " << o.evidence << "\n";
    }
    std::cout << "\n" << table << "\n";
    std::cout << report.succeeded() << "/" << report.outcomes.size() << " succeeded in "
              << static_cast<long>(report.duration_ms) << " ms\n";
    bool full_corpus = a.cases.empty();
    if (full_corpus && !report.matches_expected()) {
        std::cout << "matrix differs from the expected matrix for " << a.mode << " mode:\n"
                  << attack::render_table(report.expected);
        return exit_mismatch;
    }
    std::cout << (full_corpus ? "matrix matches the expected matrix\n" : "");
    return exit_ok;
}

int check(const std::string &payload, const std::string &blacklist_path)
{
    auto bl = blacklist_path.empty() ? filter::blacklist::defaults() : filter::blacklist::load(blacklist_path);
    auto verdict = filter::filter_input(payload, bl);
    std::cout << filter::explain_verdict(verdict);
    return verdict.accepted() ? exit_ok : exit_mismatch;
}

struct blind_args {
    std::string target = "Ben";
    std::size_t length = 4;
    std::string mode = "vulnerable";
    bool unsafe = false;
    std::string url;
};

int blind_demo(const blind_args &a)
{
    attack::blind_options options;
    options.target = a.target;
    options.max_len = a.length;
    options.mode = service::parse_mode(a.mode);
    service::service_config config;
    config.unsafe = a.unsafe;
    if (!service::mode_permitted(config, options.mode)) {
        throw usage_error(a.mode + " mode requires --unsafe");
    }
    std::unique_ptr<service::hcsws_service> svc;
    std::unique_ptr<attack::attack_target> target;
    if (a.url.empty()) {
        svc = service::hcsws_service::from_config(config);
        target = std::make_unique<attack::in_process_target>(*svc);
    } else {
        target = std::make_unique<attack::http_target>(a.url);
    }
    try {
        auto r = attack::blind_extract(*target, options);
        for (const auto &p : r.log) {
            std::cout << "  regex(?n, \"" << p.regex << "\", \"" << p.flags << "\") -> " << service::to_string(p.state)
                      << "\n";
        }
        std::cout << "recovered \"" << r.recovered << "\" in " << r.probes << " probes (bound "
                  << attack::blind_probe_bound(a.length) << ")\n";
        return exit_ok;
    } catch (const attack::extraction_impossible &e) {
        std::cout << "extraction impossible: " << e.what() << "\n";
        return exit_mismatch;
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"SPARQL injection workbench"};
    app.require_subcommand(1);

    serve_args sa;
    auto *serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--config", sa.config_path, "JSON config file");
    serve_cmd->add_option("--host", sa.host, "Listen address");
    serve_cmd->add_option("--port", sa.port, "Listen port (0 picks one)");
    serve_cmd->add_option("--mode", sa.mode, "Default mode")
        ->check(CLI::IsMember({"vulnerable", "multiline", "filtered", "parameterized"}));
    serve_cmd->add_option("--local", sa.local, "Local fixture (.ttl)");
    serve_cmd->add_option("--external", sa.external, "External fixture (.ttl)");
    serve_cmd->add_option("--blacklist", sa.blacklist, "Blacklist file");
    serve_cmd->add_option("--query-log", sa.query_log, "Append effective queries to this file");
    serve_cmd->add_flag("--unsafe", sa.unsafe, "Allow vulnerable and multiline modes");
    serve_cmd->add_flag("--paper-exact", sa.paper_exact, "Hardcode hc:P2, Gareath and Ethan in the vulnerable templates");
    serve_cmd->add_flag("--debug-effective-query", sa.debug, "Return effective queries in responses");
    serve_cmd->add_flag("--admin", sa.admin, "Enable /store and /log endpoints");

    std::string url;
    std::string load_path;
    auto *load_cmd = app.add_subcommand("store-load", "Replace a running service's store with a Turtle file");
    load_cmd->add_option("path", load_path, "Turtle file")->required()->check(CLI::ExistingFile);
    load_cmd->add_option("--url", url, "Service URL")->required();

    auto *reset_cmd = app.add_subcommand("store-reset", "Reset a running service's store to its fixture");
    reset_cmd->add_option("--url", url, "Service URL")->required();

    std::string dump_path;
    auto *dump_cmd = app.add_subcommand("store-dump", "Write a store snapshot (the fixture when --url is absent)");
    dump_cmd->add_option("path", dump_path, "Output file (stdout when absent)");
    dump_cmd->add_option("--url", url, "Service URL");

    attack_args aa;
    auto *attack_cmd = app.add_subcommand("attack-run", "Run the attack corpus and report");
    attack_cmd->add_option("--mode", aa.mode, "Endpoint mode")
        ->check(CLI::IsMember({"vulnerable", "multiline", "filtered", "parameterized"}));
    attack_cmd->add_flag("--unsafe", aa.unsafe, "Acknowledge vulnerable and multiline modes");
    attack_cmd->add_option("--cases", aa.cases, "Comma-separated case ids");
    attack_cmd->add_option("--report-dir", aa.report_dir, "Report directory");
    attack_cmd->add_flag("--paper-exact", aa.paper_exact, "Hardcode hc:P2, Gareath and Ethan in the vulnerable templates");
    attack_cmd->add_option("--url", aa.url, "Attack a running service instead of an in-process one");
    attack_cmd->add_option("--corpus", aa.corpus, "Corpus file");

    std::string payload;
    std::string blacklist_path;
    auto *check_cmd = app.add_subcommand("check", "Run the blacklist filter on a payload");
    check_cmd->add_option("--payload", payload, "Input to check")->required();
    check_cmd->add_option("--blacklist", blacklist_path, "Blacklist file")->check(CLI::ExistingFile);

    blind_args ba;
    auto *blind_cmd = app.add_subcommand("blind-demo", "Recover an email prefix through the search endpoint");
    blind_cmd->add_option("--target", ba.target, "Patient first name");
    blind_cmd->add_option("--length", ba.length, "Characters to recover")->check(CLI::Range(1, 64));
    blind_cmd->add_option("--mode", ba.mode, "Endpoint mode")
        ->check(CLI::IsMember({"vulnerable", "multiline", "filtered", "parameterized"}));
    blind_cmd->add_flag("--unsafe", ba.unsafe, "Acknowledge vulnerable mode");
    blind_cmd->add_option("--url", ba.url, "Attack a running service");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*serve_cmd) {
            return serve(sa);
        }
        if (*load_cmd) {
            auto client = admin_client(url);
            auto body = expect_ok(client.Post("/store/load", rdf::read_text_file(load_path), "text/turtle"), "store-load");
            std::cout << body << "\n";
            return exit_ok;
        }
        if (*reset_cmd) {
            auto client = admin_client(url);
            std::cout << expect_ok(client.Post("/store/reset"), "store-reset") << "\n";
            return exit_ok;
        }
        if (*dump_cmd) {
            std::string snapshot = url.empty() ? rdf::dump_snapshot(rdf::load_default_fixtures().local)
                                               : expect_ok(admin_client(url).Get("/store/dump"), "store-dump");
            if (dump_path.empty()) {
                std::cout << snapshot;
            } else {
                write_file(dump_path, snapshot);
            }
            return exit_ok;
        }
        if (*attack_cmd) {
            return attack_run(aa);
        }
        if (*check_cmd) {
            return check(payload, blacklist_path);
        }
        if (*blind_cmd) {
            return blind_demo(ba);
        }
    } catch (const usage_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_environment;
    }
    return exit_usage;
}
