#include "hsearch/service/config.hpp"

#include <fstream>

#include <fmt/format.h>

#include "hsearch/error.hpp"

namespace hsearch::service {

namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

}  // namespace

EngineConfig EngineConfig::from_json(const nlohmann::json& j, const fs::path& base_dir) {
    EngineConfig c;
    try {
        const auto& corpus = j.at("corpus");
        c.sources_dir = resolve(base_dir, corpus.at("sources").get<std::string>());
        c.viz_corpus = resolve(base_dir, corpus.at("visualizations").get<std::string>());
        c.lexicon = resolve(base_dir, corpus.at("lexicon").get<std::string>());
        c.gazetteer = resolve(base_dir, corpus.at("gazetteer").get<std::string>());
        c.stopwords = resolve(base_dir, corpus.at("stopwords").get<std::string>());
        c.grammar = resolve(base_dir, corpus.at("grammar").get<std::string>());
        c.chart_types = resolve(base_dir, corpus.at("chartTypes").get<std::string>());
        c.geometry_dir = resolve(base_dir, corpus.at("geometry").get<std::string>());
        c.index_dir = resolve(base_dir, j.value("indexDir", std::string("index")));

        if (auto it = j.find("analyzer"); it != j.end()) {
            c.max_ngram = it->value("maxNgram", c.max_ngram);
            c.fuzzy = it->value("fuzzy", c.fuzzy);
            c.match.fuzzy_threshold = it->value("fuzzyThreshold", c.match.fuzzy_threshold);
        }
        if (auto it = j.find("matching"); it != j.end()) {
            c.match.taxonomy_threshold = it->value("taxonomyThreshold", c.match.taxonomy_threshold);
            c.match.max_values = it->value("maxValues", c.match.max_values);
        }
        if (auto it = j.find("bm25"); it != j.end()) {
            c.bm25.k1 = it->value("k1", c.bm25.k1);
            c.bm25.b = it->value("b", c.bm25.b);
        }
        if (auto it = j.find("classifier"); it != j.end()) {
            c.thresholds.field_match = it->value("fieldMatch", c.thresholds.field_match);
            c.thresholds.norm_match = it->value("normMatch", c.thresholds.norm_match);
        }
        c.result_limit = j.value("resultLimit", c.result_limit);
        if (auto it = j.find("llm"); it != j.end()) {
            c.llm.enabled = it->value("enabled", false);
            c.llm.endpoint = it->value("endpoint", std::string());
            c.llm.model = it->value("model", std::string());
            c.llm.api_key_env = it->value("apiKeyEnv", c.llm.api_key_env);
            c.llm.timeout = std::chrono::milliseconds(it->value("timeoutMs", 10000));
        }
        if (auto it = j.find("listen"); it != j.end()) {
            c.host = it->value("host", c.host);
            c.port = it->value("port", c.port);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

EngineConfig EngineConfig::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }
    return from_json(j, fs::absolute(path).parent_path());
}

nlohmann::json EngineConfig::to_json() const {
    return {
        {"corpus",
         {{"sources", sources_dir.string()},
          {"visualizations", viz_corpus.string()},
          {"lexicon", lexicon.string()},
          {"gazetteer", gazetteer.string()},
          {"stopwords", stopwords.string()},
          {"grammar", grammar.string()},
          {"chartTypes", chart_types.string()},
          {"geometry", geometry_dir.string()}}},
        {"indexDir", index_dir.string()},
        {"analyzer", {{"maxNgram", max_ngram}, {"fuzzy", fuzzy}, {"fuzzyThreshold", match.fuzzy_threshold}}},
        {"matching", {{"taxonomyThreshold", match.taxonomy_threshold}, {"maxValues", match.max_values}}},
        {"bm25", {{"k1", bm25.k1}, {"b", bm25.b}}},
        {"classifier", {{"fieldMatch", thresholds.field_match}, {"normMatch", thresholds.norm_match}}},
        {"resultLimit", result_limit},
        {"llm",
         {{"enabled", llm.enabled},
          {"endpoint", llm.endpoint},
          {"model", llm.model},
          {"apiKeyEnv", llm.api_key_env},
          {"timeoutMs", llm.timeout.count()}}},
        {"listen", {{"host", host}, {"port", port}}},
    };
}

void EngineConfig::validate() const {
    auto require_file = [](const fs::path& p, std::string_view key) {
        if (!fs::is_regular_file(p)) throw ConfigError(fmt::format("{}: file not found: {}", key, p.string()));
    };
    if (!fs::is_directory(sources_dir)) {
        throw ConfigError(fmt::format("corpus.sources: directory not found: {}", sources_dir.string()));
    }
    require_file(viz_corpus, "corpus.visualizations");
    require_file(lexicon, "corpus.lexicon");
    require_file(gazetteer, "corpus.gazetteer");
    require_file(stopwords, "corpus.stopwords");
    require_file(grammar, "corpus.grammar");
    require_file(chart_types, "corpus.chartTypes");
    if (!fs::is_directory(geometry_dir)) {
        throw ConfigError(fmt::format("corpus.geometry: directory not found: {}", geometry_dir.string()));
    }
    if (max_ngram < 1 || max_ngram > 3) throw ConfigError("analyzer.maxNgram must be 1, 2 or 3");
    if (match.fuzzy_threshold < 0.0 || match.fuzzy_threshold >= 1.0) {
        throw ConfigError("analyzer.fuzzyThreshold must be in [0, 1)");
    }
    if (match.taxonomy_threshold <= 0.0 || match.taxonomy_threshold > 1.0) {
        throw ConfigError("matching.taxonomyThreshold must be in (0, 1]");
    }
    if (match.max_values == 0) throw ConfigError("matching.maxValues must be positive");
    try {
        bm25.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("bm25: ") + e.what());
    }
    if (thresholds.norm_match < 0.0 || thresholds.norm_match > 1.0) {
        throw ConfigError("classifier.normMatch must be in [0, 1]");
    }
    if (result_limit == 0) throw ConfigError("resultLimit must be positive");
    if (llm.enabled && llm.endpoint.find("://") == std::string::npos) {
        throw ConfigError("llm.endpoint must be an http(s) URL when llm.enabled is true");
    }
    if (llm.timeout.count() <= 0) throw ConfigError("llm.timeoutMs must be positive");
    if (port < 0 || port > 65535) throw ConfigError("listen.port must be in [0, 65535]");
}

}  // namespace hsearch::service
