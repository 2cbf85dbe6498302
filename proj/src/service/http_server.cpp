#include "sparqlsec/service/http_server.hpp"

#include <httplib.h>

#include "sparqlsec/engine/sparql_json.hpp"
#include "sparqlsec/rdf/turtle.hpp"
#include "sparqlsec/sparql/lexer.hpp"

namespace sparqlsec::service {

namespace {

constexpr const char *json_type = "application/json";

int status_for(error_kind k)
{
    switch (k) {
    case error_kind::none:
        return 200;
    case error_kind::mode_locked:
        return 403;
    case error_kind::federation_error:
        return 502;
    default:
        return 400;
    }
}

void send_error(httplib::Response &res, int status, error_kind kind, const std::string &message)
{
    res.status = status;
    res.set_content(nlohmann::json{{"state", "error"}, {"error", to_string(kind)}, {"message", message}}.dump(),
        json_type);
}

std::string dump(const nlohmann::json &j) { return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace); }

} // namespace

http_server::http_server(hcsws_service &service) : service_(service), server_(std::make_unique<httplib::Server>())
{
    routes();
}

http_server::~http_server() { stop(); }

int http_server::bind(const std::string &host, int port)
{
    port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    return port_;
}

bool http_server::listen() { return server_->listen_after_bind(); }

void http_server::start()
{
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void http_server::stop()
{
    server_->stop();
    if (thread_.joinable()) {
        thread_.join();
    }
}

void http_server::routes()
{
    auto handle = [this](const httplib::Request &req, httplib::Response &res, const std::vector<const char *> &fields,
                      auto call) {
        nlohmann::json body;
        std::vector<std::string> values;
        std::optional<endpoint_mode> mode;
        try {
            body = nlohmann::json::parse(req.body);
            for (const char *f : fields) {
                values.push_back(body.at(f).get<std::string>());
            }
            if (body.contains("mode") && !body.at("mode").is_null()) {
                mode = parse_mode(body.at("mode").get<std::string>());
            }
        } catch (const std::exception &e) {
            send_error(res, 400, error_kind::bad_request, e.what());
            return;
        }
        auto r = call(values, mode);
        res.status = status_for(r.error);
        res.set_content(dump(to_json(r, service_.config().debug_effective_query)), json_type);
    };

    server_->Post("/search", [this, handle](const httplib::Request &req, httplib::Response &res) {
        handle(req, res, {"doctor_name"}, [this](const auto &v, auto mode) { return service_.search(v[0], mode); });
    });
    server_->Post("/update", [this, handle](const httplib::Request &req, httplib::Response &res) {
        handle(req, res, {"old_name", "new_name"},
            [this](const auto &v, auto mode) { return service_.update_name(v[0], v[1], mode); });
    });
    server_->Post("/delete", [this, handle](const httplib::Request &req, httplib::Response &res) {
        handle(req, res, {"name"}, [this](const auto &v, auto mode) { return service_.delete_patient(v[0], mode); });
    });

    auto external = [this](const httplib::Request &req, httplib::Response &res) {
        std::string text;
        if (req.has_param("query")) {
            text = req.get_param_value("query");
        } else if (req.method == "POST") {
            text = req.body;
        }
        if (text.empty()) {
            send_error(res, 400, error_kind::bad_request, "missing query");
            return;
        }
        try {
            res.set_content(dump(engine::to_sparql_json(service_.external_sparql(text))),
                "application/sparql-results+json");
        } catch (const sparql::syntax_error &e) {
            send_error(res, 400, error_kind::parse_error, e.what());
        } catch (const std::invalid_argument &e) {
            send_error(res, 400, error_kind::bad_request, e.what());
        } catch (const std::runtime_error &e) {
            send_error(res, 400, error_kind::evaluation_error, e.what());
        }
    };
    server_->Post("/external/sparql", external);
    server_->Get("/external/sparql", external);

    server_->Get("/health", [this](const httplib::Request &, httplib::Response &res) {
        const auto &c = service_.config();
        res.set_content(dump({{"status", "ok"}, {"default_mode", to_string(c.default_mode)}, {"unsafe", c.unsafe},
                            {"paper_exact", c.paper_exact}, {"admin", c.admin}, {"triples", service_.store().size()}}),
            json_type);
    });

    auto admin = [this](httplib::Response &res) {
        if (!service_.config().admin) {
            send_error(res, 403, error_kind::mode_locked, "store administration is disabled");
            return false;
        }
        return true;
    };
    server_->Get("/store/dump", [this, admin](const httplib::Request &, httplib::Response &res) {
        if (admin(res)) {
            res.set_content(service_.snapshot(), "application/n-triples");
        }
    });
    server_->Post("/store/reset", [this, admin](const httplib::Request &, httplib::Response &res) {
        if (admin(res)) {
            service_.reset();
            res.set_content(dump({{"status", "ok"}, {"triples", service_.store().size()}}), json_type);
        }
    });
    server_->Post("/store/load", [this, admin](const httplib::Request &req, httplib::Response &res) {
        if (!admin(res)) {
            return;
        }
        try {
            service_.load(rdf::parse_turtle(req.body, rdf::standard_prefixes()));
            res.set_content(dump({{"status", "ok"}, {"triples", service_.store().size()}}), json_type);
        } catch (const std::exception &e) {
            send_error(res, 400, error_kind::parse_error, e.what());
        }
    });
    server_->Get("/log", [this, admin](const httplib::Request &, httplib::Response &res) {
        if (!admin(res)) {
            return;
        }
        auto entries = nlohmann::json::array();
        for (const auto &e : service_.log().entries()) {
            entries.push_back({{"sequence", e.sequence}, {"endpoint", e.endpoint}, {"mode", e.mode},
                {"effective_query", e.effective_query}, {"outcome", e.outcome}});
        }
        res.set_content(dump(entries), json_type);
    });
}

} // namespace sparqlsec::service
