#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "hsearch/error.hpp"
#include "hsearch/service/api.hpp"
#include "hsearch/service/config.hpp"
#include "hsearch/service/engine.hpp"

namespace svc = hsearch::service;

int main(int argc, char** argv) {
    CLI::App app{"hsearch: hybrid search over data sources and visualizations"};
    app.require_subcommand(1);

    std::string config_path = "hsearch.json";
    app.add_option("--config", config_path, "Engine configuration file")->capture_default_str();

    auto* index_cmd = app.add_subcommand("index", "Build and persist the search indices");

    auto* query_cmd = app.add_subcommand("query", "Run one query and print the result as JSON");
    std::string query;
    std::size_t limit = 0;
    bool no_llm = false;
    std::string source;
    query_cmd->add_option("text", query, "Query text")->required();
    query_cmd->add_option("--limit", limit, "Maximum number of visualization results");
    query_cmd->add_option("--source", source, "Pin question answering to this data source");
    query_cmd->add_flag("--no-llm", no_llm, "Skip summary rephrasing");

    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
    std::string host;
    int port = -1;
    serve_cmd->add_option("--host", host, "Listen address (overrides config)");
    serve_cmd->add_option("--port", port, "Listen port (overrides config)");
    serve_cmd->add_flag("--no-llm", no_llm, "Never call the text generation endpoint");

    auto* bench_cmd = app.add_subcommand("bench", "Measure end-to-end search latency");
    std::size_t rounds = 20;
    bench_cmd->add_option("--rounds", rounds, "Passes over the query suite")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        auto config = svc::EngineConfig::load(config_path);
        if (no_llm) config.llm.enabled = false;

        if (*index_cmd) {
            auto report = svc::cmd_index(config);
            std::cout << report.manifest.dump(2) << '\n';
            return 0;
        }
        svc::Engine engine(config);
        if (*query_cmd) {
            svc::SearchRequest req;
            req.query = query;
            if (limit > 0) req.limit = limit;
            if (!source.empty()) req.source = source;
            req.use_llm = !no_llm;
            std::cout << engine.search(req).dump(2) << '\n';
            return 0;
        }
        if (*serve_cmd) {
            const auto h = host.empty() ? config.host : host;
            const auto p = port >= 0 ? port : config.port;
            svc::Server server(engine);
            spdlog::info("listening on http://{}:{}", h, p);
            if (!server.listen(h, p)) {
                spdlog::error("cannot listen on {}:{}", h, p);
                return 1;
            }
            return 0;
        }
        if (*bench_cmd) {
            auto report = svc::bench(engine, rounds);
            std::cout << report.to_json().dump(2) << '\n';
            return report.p95_ms < 100.0 ? 0 : 1;
        }
    } catch (const hsearch::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
