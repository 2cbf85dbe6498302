#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sparqlsec/service/hcsws_service.hpp"

namespace sparqlsec::attack {

/// The service is unreachable or answered something that is not a service
/// response. Distinct from an attack that simply failed.
class environment_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// What the harness can do to a running service.
class attack_target {
public:
    attack_target() = default;
    attack_target(const attack_target &) = delete;
    attack_target &operator=(const attack_target &) = delete;
    virtual ~attack_target() = default;

    virtual service::service_response search(std::string_view doctor_name, service::endpoint_mode mode) = 0;
    virtual service::service_response update_name(
        std::string_view old_name, std::string_view new_name, service::endpoint_mode mode) = 0;
    virtual service::service_response delete_patient(std::string_view name, service::endpoint_mode mode) = 0;

    /// Canonical snapshot of the local store.
    virtual std::string snapshot() = 0;
    /// Restores the local store to its fixture.
    virtual void reset() = 0;
};

class in_process_target : public attack_target {
public:
    explicit in_process_target(service::hcsws_service &service) : service_(service) {}

    service::service_response search(std::string_view doctor_name, service::endpoint_mode mode) override;
    service::service_response update_name(
        std::string_view old_name, std::string_view new_name, service::endpoint_mode mode) override;
    service::service_response delete_patient(std::string_view name, service::endpoint_mode mode) override;
    std::string snapshot() override;
    void reset() override;

private:
    service::hcsws_service &service_;
};

/// Talks to a service started with admin endpoints enabled. Effective
/// queries come from the response when the service includes them, else from
/// its query log.
class http_target : public attack_target {
public:
    /// `base_url` like `http://127.0.0.1:8080`.
    explicit http_target(std::string base_url);
    ~http_target() override;

    service::service_response search(std::string_view doctor_name, service::endpoint_mode mode) override;
    service::service_response update_name(
        std::string_view old_name, std::string_view new_name, service::endpoint_mode mode) override;
    service::service_response delete_patient(std::string_view name, service::endpoint_mode mode) override;
    std::string snapshot() override;
    void reset() override;

private:
    service::service_response post(const std::string &path, nlohmann::json body);

    struct impl;
    std::unique_ptr<impl> impl_;
};

} // namespace sparqlsec::attack
