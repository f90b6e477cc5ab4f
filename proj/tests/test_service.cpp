#include <doctest.h>

#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "hsearch/error.hpp"
#include "hsearch/service/api.hpp"
#include "hsearch/service/engine.hpp"
#include "support.hpp"

using namespace hsearch;
using namespace hsearch::service;
namespace ts = testing_support;
namespace fs = std::filesystem;

namespace {

ApiResponse get(const std::string& path, std::multimap<std::string, std::string> params = {}) {
    Api api(ts::bundled_engine());
    return api.handle({"GET", path, std::move(params)});
}

struct FixedClient : qa::TextGenerationClient {
    std::string reply;
    explicit FixedClient(std::string r) : reply(std::move(r)) {}
    std::string complete(const std::string&) override { return reply; }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("search response shape") {
    SearchRequest req;
    req.query = "sales by region";
    auto j = ts::bundled_engine().search(req);
    CHECK(j["query"] == "sales by region");
    CHECK(j["plan"]["invokeQA"] == true);
    REQUIRE(j["plan"]["intents"].is_array());
    for (const auto& i : j["plan"]["intents"]) {
        CHECK(i.contains("kind"));
        CHECK(i["arguments"].is_array());
    }
    const auto& g = j["general"];
    CHECK(g["mode"] == "exploratory");
    CHECK(g["results"].size() <= 50);
    for (const auto& r : g["results"]) {
        CHECK(r.contains("id"));
        CHECK(r.contains("rawScore"));
        CHECK(r["normScore"].get<double>() <= 1.0);
        CHECK(r["document"].contains("title"));
    }
    CHECK(g["facets"].is_object());
    const auto& qa = j["qa"];
    CHECK(qa["source"]["id"] == "sales");
    CHECK(qa["chartSpec"]["mark"] == "bar");
    CHECK(qa["summarySource"] == "template");
    CHECK(qa["keyStats"]["lines"].size() == 3);
    double pct = 0;
    for (const auto& r : qa["sourceRanking"]) pct += r["percentage"].get<double>();
    CHECK(pct == doctest::Approx(100.0));
    for (const char* k : {"parse", "classify", "general", "execute", "total"}) CHECK(j["timings"].contains(k));
}

TEST_CASE("general-only queries omit qa") {
    SearchRequest req;
    req.query = "elections";
    auto j = ts::bundled_engine().search(req);
    CHECK_FALSE(j.contains("qa"));
    CHECK(j["general"]["total"].get<std::size_t>() > 0);

    req.query = "treemap stocks";
    auto d = ts::bundled_engine().search(req);
    CHECK(d["general"]["mode"] == "design");
    CHECK(d["general"]["chartTypes"] == nlohmann::json::array({"treemap"}));
}

TEST_CASE("pinned source and its errors") {
    SearchRequest req;
    req.query = "average zzqx by wibble";
    req.source = "sales";
    auto j = ts::bundled_engine().search(req);
    REQUIRE(j.contains("qa"));
    CHECK(j["qa"]["source"]["id"] == "sales");
    CHECK(j["qa"]["chartSpec"].is_null());
    CHECK(j["qa"]["error"]["code"] == "spec_unresolvable");
    CHECK_FALSE(j["qa"]["suggestions"].empty());
}

TEST_CASE("facets narrow the general results") {
    SearchRequest req;
    req.query = "elections";
    req.facets.from = CivilDate::parse_range_start("2020-08");
    req.facets.to = CivilDate::parse_range_end("2020-12");
    auto j = ts::bundled_engine().search(req);
    REQUIRE(j["general"]["total"].get<std::size_t>() > 0);
    for (const auto& r : j["general"]["results"]) {
        const auto date = r["document"]["createdDate"].get<std::string>();
        CHECK(date >= "2020-08-01");
        CHECK(date <= "2020-12-31");
    }
}

TEST_CASE("hallucinated numbers fall back to the template") {
    Engine engine(ts::bundled_state());
    engine.set_text_client(std::make_shared<FixedClient>("Sales peaked at $999 in the West."));
    SearchRequest req;
    req.query = "sales by region";
    auto j = engine.search(req);
    CHECK(j["qa"]["summarySource"] == "template");
    CHECK(j["qa"].contains("warning"));
    CHECK(j["qa"]["summaryText"].get<std::string>().find("999") == std::string::npos);

    req.use_llm = false;
    auto off = engine.search(req);
    CHECK(off["qa"]["summarySource"] == "template");
    CHECK_FALSE(off["qa"].contains("warning"));
}

TEST_CASE("api routing and validation") {
    CHECK(get("/healthz").status == 200);
    CHECK(get("/api/search").status == 400);
    CHECK(get("/api/search", {{"q", "sales"}, {"limit", "0"}}).status == 400);
    CHECK(get("/api/search", {{"q", "sales"}, {"limit", "abc"}}).status == 400);
    CHECK(get("/api/search", {{"q", "sales"}, {"from", "2020-13"}}).status == 400);
    CHECK(get("/api/search", {{"q", "sales"}, {"from", "2021-01"}, {"to", "2020-01"}}).status == 400);
    CHECK(get("/api/search", {{"q", "sales"}, {"normMatch", "2"}}).status == 400);
    CHECK(get("/api/search", {{"q", "sales"}, {"source", "nope"}}).status == 400);
    CHECK(get("/api/nothing").status == 404);
    CHECK(get("/api/datasources/nope").status == 404);
    CHECK(get("/api/suggestions").status == 400);
    CHECK(get("/api/suggestions", {{"source", "nope"}}).status == 404);
    CHECK(get("/api/geometry/world-countries").status == 404);

    Api api(ts::bundled_engine());
    CHECK(api.handle({"POST", "/api/search", {{"q", "x"}}}).status == 405);

    auto ok = get("/api/search", {{"q", "elections"}, {"limit", "3"}, {"authors", "Nobody Here"}});
    CHECK(ok.status == 200);
    CHECK(ok.body["general"]["results"].empty());

    auto list = get("/api/datasources");
    CHECK(list.body["dataSources"].size() == 8);
    auto one = get("/api/datasources/housing");
    CHECK(one.status == 200);
    CHECK(one.body["id"] == "housing");
    auto sugg = get("/api/suggestions", {{"source", "sales"}, {"k", "2"}});
    CHECK(sugg.body["suggestions"].size() <= 2);
    auto geo = get("/api/geometry/us-states");
    CHECK(geo.status == 200);
    CHECK(geo.body["type"] == "FeatureCollection");
}

TEST_CASE("parse_search reads every parameter") {
    ApiRequest r{"GET", "/api/search",
                 {{"q", "x"}, {"authors", "A,B"}, {"authors", "C"}, {"chartTypes", "Bar"}, {"limit", "7"},
                  {"fieldMatch", "3"}, {"normMatch", "0.5"}, {"llm", "false"}, {"source", "sales"}}};
    auto req = Api::parse_search(r);
    CHECK(req.facets.authors == std::set<std::string>{"A", "B", "C"});
    CHECK(req.facets.chart_types == std::set<std::string>{"bar"});
    CHECK(req.limit == 7u);
    CHECK(req.field_match == 3u);
    CHECK(req.norm_match == 0.5);
    CHECK_FALSE(req.use_llm);
    CHECK(req.source == "sales");
}

TEST_CASE("http server end to end") {
    Server server(ts::bundled_engine());
    const int port = server.bind_any("127.0.0.1");
    REQUIRE(port > 0);
    std::thread t([&] { server.serve(); });
    server.wait_until_ready();

    httplib::Client cli("127.0.0.1", port);
    auto res = cli.Get("/api/search?q=sales%20by%20region");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    auto body = nlohmann::json::parse(res->body);
    CHECK(body["qa"]["source"]["id"] == "sales");
    auto missing = cli.Get("/api/unknown");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    auto post = cli.Post("/api/search", "", "text/plain");
    REQUIRE(post);
    CHECK(post->status >= 400);

    server.stop();
    t.join();
}

TEST_CASE("index command writes a deterministic manifest") {
    ts::TempDir a, b;
    auto config = ts::bundled_config();
    config.index_dir = a.path();
    auto ra = cmd_index(config);
    config.index_dir = b.path();
    auto rb = cmd_index(config);
    CHECK(ra.manifest == rb.manifest);
    CHECK(slurp(a.path() / kManifestFile) == slurp(b.path() / kManifestFile));
    CHECK(ra.manifest["dataSources"]["documents"] == 8);
    CHECK(ra.manifest["visualizations"]["documents"] == 1000);
    CHECK(ra.manifest["dataSources"]["sha256"] == sha256_hex(slurp(a.path() / kDataSourceIndexFile)));

    // A persisted engine answers exactly like the in-memory one.
    config.index_dir = a.path();
    Engine persisted(config);
    for (const auto& q : bench_queries()) {
        SearchRequest req;
        req.query = q;
        auto x = persisted.search(req);
        auto y = ts::bundled_engine().search(req);
        CHECK(x["plan"] == y["plan"]);
        CHECK(x["general"] == y["general"]);
        CHECK(x.value("qa", nlohmann::json()) == y.value("qa", nlohmann::json()));
    }
}

TEST_CASE("missing index has a remediation hint") {
    ts::TempDir empty;
    auto config = ts::bundled_config();
    config.index_dir = empty.path();
    try {
        Engine e(config);
        FAIL("expected IngestionError");
    } catch (const IngestionError& e) {
        CHECK(std::string(e.what()).find("hsearch index") != std::string::npos);
    }
}

TEST_CASE("config validation") {
    auto j = nlohmann::json::parse(slurp(ts::config_path()));
    const auto base = ts::config_path().parent_path();
    CHECK_NOTHROW(EngineConfig::from_json(j, base));
    auto bad = j;
    bad["bm25"]["k1"] = 0.5;
    CHECK_THROWS_AS(EngineConfig::from_json(bad, base), ConfigError);
    bad = j;
    bad["corpus"]["lexicon"] = "nope.json";
    CHECK_THROWS_AS(EngineConfig::from_json(bad, base), ConfigError);
    bad = j;
    bad["analyzer"]["maxNgram"] = 4;
    CHECK_THROWS_AS(EngineConfig::from_json(bad, base), ConfigError);
    CHECK_THROWS_AS(EngineConfig::load("/nonexistent/hsearch.json"), ConfigError);
}

TEST_CASE("latency over the bundled suite") {
    auto report = bench(ts::bundled_engine(), 5);
    CHECK(report.requests == 5 * bench_queries().size());
    CHECK(report.p50_ms <= report.p95_ms);
    CHECK(report.p95_ms <= report.max_ms);
    CHECK(report.p95_ms < 100.0);
}
