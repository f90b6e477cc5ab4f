#include "hsearch/service/api.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::service {

std::vector<std::string> ApiRequest::all(const std::string& key) const {
    std::vector<std::string> out;
    auto [lo, hi] = params.equal_range(key);
    for (auto it = lo; it != hi; ++it) out.push_back(it->second);
    return out;
}

std::optional<std::string> ApiRequest::get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

ApiResponse error_response(int status, std::string_view code, std::string_view message) {
    return {status, {{"error", {{"code", code}, {"message", message}}}}};
}

namespace {

class BadRequest : public Error {
  public:
    BadRequest(std::string code, const std::string& message) : Error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

std::size_t parse_count(const std::string& key, const std::string& value, std::size_t min, std::size_t max) {
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc{} || ptr != value.data() + value.size() || n < min || n > max) {
        throw BadRequest("invalid_parameter",
                         key + " must be an integer in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    }
    return n;
}

bool parse_flag(const std::string& key, const std::string& value) {
    const auto v = text::to_lower(value);
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw BadRequest("invalid_parameter", key + " must be true or false");
}

std::vector<std::string> list_param(const ApiRequest& r, const std::string& key) {
    std::vector<std::string> out;
    for (const auto& v : r.all(key)) {
        for (auto& item : text::split_list(v, ',')) out.push_back(std::move(item));
    }
    return out;
}

}  // namespace

SearchRequest Api::parse_search(const ApiRequest& r) {
    SearchRequest req;
    auto q = r.get("q");
    if (!q) throw BadRequest("missing_query", "query parameter q is required");
    req.query = *q;
    for (auto& a : list_param(r, "authors")) req.facets.authors.insert(std::move(a));
    for (auto& c : list_param(r, "chartTypes")) req.facets.chart_types.insert(text::to_lower(c));
    if (auto from = r.get("from")) {
        req.facets.from = CivilDate::parse_range_start(*from);
        if (!req.facets.from) throw BadRequest("invalid_parameter", "from must be YYYY-MM or YYYY-MM-DD");
    }
    if (auto to = r.get("to")) {
        req.facets.to = CivilDate::parse_range_end(*to);
        if (!req.facets.to) throw BadRequest("invalid_parameter", "to must be YYYY-MM or YYYY-MM-DD");
    }
    if (req.facets.from && req.facets.to && *req.facets.to < *req.facets.from) {
        throw BadRequest("invalid_parameter", "from must not be after to");
    }
    if (auto limit = r.get("limit")) req.limit = parse_count("limit", *limit, 1, 1000);
    if (auto source = r.get("source"); source && !source->empty()) req.source = *source;
    if (auto fm = r.get("fieldMatch")) req.field_match = parse_count("fieldMatch", *fm, 0, 1000);
    if (auto nm = r.get("normMatch")) {
        auto v = text::parse_number(*nm);
        if (!v || *v < 0.0 || *v > 1.0) throw BadRequest("invalid_parameter", "normMatch must be a number in [0, 1]");
        req.norm_match = v;
    }
    if (auto llm = r.get("llm")) req.use_llm = parse_flag("llm", *llm);
    return req;
}

ApiResponse Api::handle(const ApiRequest& r) const {
    try {
        if (r.method != "GET") return error_response(405, "method_not_allowed", "only GET is supported");
        const auto& path = r.path;
        if (path == "/healthz") return {200, {{"status", "ok"}}};
        if (path == "/api/search") {
            auto req = parse_search(r);
            if (req.source && !engine_.state()->source(*req.source)) {
                return error_response(400, "unknown_source", "unknown data source: " + *req.source);
            }
            return {200, engine_.search(req)};
        }
        if (path == "/api/datasources") return {200, engine_.datasources()};
        constexpr std::string_view ds_prefix = "/api/datasources/";
        if (path.starts_with(ds_prefix)) {
            try {
                return {200, engine_.datasource(path.substr(ds_prefix.size()))};
            } catch (const LookupError& e) {
                return error_response(404, "not_found", e.what());
            }
        }
        if (path == "/api/suggestions") {
            auto source = r.get("source");
            if (!source) return error_response(400, "missing_source", "query parameter source is required");
            const auto k = r.get("k") ? parse_count("k", *r.get("k"), 0, 100) : 5;
            try {
                return {200, engine_.suggestions(*source, k)};
            } catch (const LookupError& e) {
                return error_response(404, "not_found", e.what());
            }
        }
        constexpr std::string_view geo_prefix = "/api/geometry/";
        if (path.starts_with(geo_prefix)) {
            try {
                return {200, engine_.geometry(path.substr(geo_prefix.size()))};
            } catch (const LookupError& e) {
                return error_response(404, "not_found", e.what());
            }
        }
        return error_response(404, "not_found", "no such endpoint: " + path);
    } catch (const BadRequest& e) {
        return error_response(400, e.code(), e.what());
    } catch (const std::exception& e) {
        spdlog::error("{} {} failed: {}", r.method, r.path, e.what());
        return error_response(500, "internal_error", "internal server error");
    }
}

struct Server::Impl {
    explicit Impl(const Engine& engine) : api(engine) {}
    httplib::Server server;
    Api api;
};

Server::Server(const Engine& engine) : impl_(std::make_unique<Impl>(engine)) {
    auto& svr = impl_->server;
    svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                             {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
    svr.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    svr.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
        ApiRequest r;
        r.method = "GET";
        r.path = req.path;
        for (const auto& [k, v] : req.params) r.params.emplace(k, v);
        const auto out = impl_->api.handle(r);
        res.status = out.status;
        res.set_content(out.body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace), "application/json; charset=utf-8");
    });
}

Server::~Server() {
    stop();
}

bool Server::listen(const std::string& host, int port) {
    return impl_->server.listen(host, port);
}

int Server::bind_any(const std::string& host) {
    return impl_->server.bind_to_any_port(host);
}

bool Server::serve() {
    return impl_->server.listen_after_bind();
}

void Server::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void Server::wait_until_ready() const {
    impl_->server.wait_until_ready();
}

nlohmann::json BenchReport::to_json() const {
    return {{"requests", requests}, {"p50Ms", p50_ms}, {"p95Ms", p95_ms}, {"maxMs", max_ms}};
}

const std::vector<std::string>& bench_queries() {
    static const std::vector<std::string> kQueries = {
        "How has the trend of movie budgets changed over time for different genres?",
        "elections",
        "treemap stocks",
        "housing prices usa",
        "sales by region",
        "average price by neighborhood",
        "covid cases in Canada",
        "top 5 genres by gross",
        "correlate budget and gross",
        "world population",
        "crime in usa",
        "bar and line charts of covid",
    };
    return kQueries;
}

BenchReport bench(const Engine& engine, std::size_t rounds) {
    Api api(engine);
    std::vector<double> samples;
    for (std::size_t r = 0; r < rounds; ++r) {
        for (const auto& q : bench_queries()) {
            ApiRequest req;
            req.path = "/api/search";
            req.params.emplace("q", q);
            const auto start = std::chrono::steady_clock::now();
            auto res = api.handle(req);
            samples.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
            if (res.status != 200) throw Error("bench query failed: " + q);
        }
    }
    BenchReport out;
    out.requests = samples.size();
    if (samples.empty()) return out;
    std::sort(samples.begin(), samples.end());
    auto pct = [&](double p) {
        const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(samples.size())));
        return samples[std::clamp<std::size_t>(rank, 1, samples.size()) - 1];
    };
    out.p50_ms = pct(0.50);
    out.p95_ms = pct(0.95);
    out.max_ms = samples.back();
    return out;
}

}  // namespace hsearch::service
