#pragma once

#include <memory>
#include <string>
#include <thread>

#include "sparqlsec/service/hcsws_service.hpp"

namespace httplib {
class Server;
}

namespace sparqlsec::service {

/// HTTP front end:
///
///   POST /search           {"doctor_name": ..., "mode"?: ...}
///   POST /update           {"old_name": ..., "new_name": ..., "mode"?: ...}
///   POST /delete           {"name": ..., "mode"?: ...}
///   POST /external/sparql  SPARQL protocol, read-only
///   GET  /health
///   GET  /store/dump, POST /store/reset, POST /store/load, GET /log   (admin only)
class http_server {
public:
    explicit http_server(hcsws_service &service);
    http_server(const http_server &) = delete;
    http_server &operator=(const http_server &) = delete;
    ~http_server();

    /// Binds to `port` (0 picks a free one). Returns the bound port, or -1.
    int bind(const std::string &host, int port);

    /// Serves on the calling thread until stop().
    bool listen();

    /// Serves on a background thread.
    void start();
    void stop();

    [[nodiscard]] int port() const noexcept { return port_; }

private:
    void routes();

    hcsws_service &service_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = -1;
};

} // namespace sparqlsec::service
