#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/service/engine.hpp"

namespace hsearch::service {

struct ApiRequest {
    std::string method = "GET";
    std::string path;
    std::multimap<std::string, std::string> params;

    std::vector<std::string> all(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
};

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

/// Transport-independent router; the HTTP server and tests both call it.
class Api {
  public:
    explicit Api(const Engine& engine) : engine_(engine) {}
    ApiResponse handle(const ApiRequest& request) const;

    /// Parses /api/search parameters; throws ArgumentError with a message.
    static SearchRequest parse_search(const ApiRequest& request);

  private:
    const Engine& engine_;
};

ApiResponse error_response(int status, std::string_view code, std::string_view message);

/// Blocks serving the API until stop() is called from another thread.
class Server {
  public:
    explicit Server(const Engine& engine);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and serves; returns false if the address could not be bound.
    bool listen(const std::string& host, int port);
    /// Binds to an ephemeral port; returns it, or -1.
    int bind_any(const std::string& host);
    /// Serves on a port obtained from bind_any().
    bool serve();
    void stop();
    void wait_until_ready() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct BenchReport {
    std::size_t requests = 0;
    double p50_ms = 0.0;
    double p95_ms = 0.0;
    double max_ms = 0.0;
    nlohmann::json to_json() const;
};

/// Runs the bundled query suite through Api::handle `rounds` times.
BenchReport bench(const Engine& engine, std::size_t rounds);
const std::vector<std::string>& bench_queries();

}  // namespace hsearch::service
