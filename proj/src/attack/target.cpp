#include "sparqlsec/attack/target.hpp"

#include <httplib.h>

namespace sparqlsec::attack {

service::service_response in_process_target::search(std::string_view doctor_name, service::endpoint_mode mode)
{
    return service_.search(doctor_name, mode);
}

service::service_response in_process_target::update_name(
    std::string_view old_name, std::string_view new_name, service::endpoint_mode mode)
{
    return service_.update_name(old_name, new_name, mode);
}

service::service_response in_process_target::delete_patient(std::string_view name, service::endpoint_mode mode)
{
    return service_.delete_patient(name, mode);
}

std::string in_process_target::snapshot() { return service_.snapshot(); }

void in_process_target::reset() { service_.reset(); }

struct http_target::impl {
    explicit impl(const std::string &url) : client(url)
    {
        client.set_connection_timeout(5);
        client.set_read_timeout(30);
    }

    httplib::Client client;
};

http_target::http_target(std::string base_url) : impl_(std::make_unique<impl>(base_url))
{
    if (!impl_->client.is_valid()) {
        throw environment_error("invalid service URL '" + base_url + "'");
    }
}

http_target::~http_target() = default;

service::service_response http_target::post(const std::string &path, nlohmann::json body)
{
    auto res = impl_->client.Post(path, body.dump(), "application/json");
    if (!res) {
        throw environment_error("service unreachable: " + httplib::to_string(res.error()));
    }
    service::service_response r;
    try {
        r = service::response_from_json(nlohmann::json::parse(res->body));
    } catch (const std::exception &e) {
        throw environment_error("unexpected answer from " + path + " (HTTP " + std::to_string(res->status) +
                                "): " + e.what());
    }
    if (r.effective_query.empty() && r.log_sequence != 0) {
        if (auto log = impl_->client.Get("/log"); log && log->status == 200) {
            for (const auto &e : nlohmann::json::parse(log->body, nullptr, false)) {
                if (e.is_object() && e.value("sequence", std::uint64_t{0}) == r.log_sequence) {
                    r.effective_query = e.value("effective_query", "");
                }
            }
        }
    }
    return r;
}

service::service_response http_target::search(std::string_view doctor_name, service::endpoint_mode mode)
{
    return post("/search", {{"doctor_name", doctor_name}, {"mode", service::to_string(mode)}});
}

service::service_response http_target::update_name(
    std::string_view old_name, std::string_view new_name, service::endpoint_mode mode)
{
    return post("/update", {{"old_name", old_name}, {"new_name", new_name}, {"mode", service::to_string(mode)}});
}

service::service_response http_target::delete_patient(std::string_view name, service::endpoint_mode mode)
{
    return post("/delete", {{"name", name}, {"mode", service::to_string(mode)}});
}

std::string http_target::snapshot()
{
    auto res = impl_->client.Get("/store/dump");
    if (!res) {
        throw environment_error("service unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw environment_error("store dump refused (HTTP " + std::to_string(res->status) +
                                "); start the service with --admin");
    }
    return res->body;
}

void http_target::reset()
{
    auto res = impl_->client.Post("/store/reset");
    if (!res) {
        throw environment_error("service unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw environment_error("store reset refused (HTTP " + std::to_string(res->status) +
                                "); start the service with --admin");
    }
}

} // namespace sparqlsec::attack
