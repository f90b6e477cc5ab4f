#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "hsearch/classifier/classifier.hpp"
#include "hsearch/index/search_index.hpp"
#include "hsearch/parser/parser.hpp"

namespace hsearch::service {

struct LlmSettings {
    bool enabled = false;
    std::string endpoint;
    std::string model;
    std::string api_key_env = "HSEARCH_LLM_API_KEY";
    std::chrono::milliseconds timeout{10000};
};

/// Engine configuration. Relative paths resolve against the config file's
/// directory.
struct EngineConfig {
    std::filesystem::path sources_dir;  // <id>.csv + <id>.json pairs
    std::filesystem::path viz_corpus;
    std::filesystem::path lexicon;
    std::filesystem::path gazetteer;
    std::filesystem::path stopwords;
    std::filesystem::path grammar;
    std::filesystem::path chart_types;
    std::filesystem::path geometry_dir;
    std::filesystem::path index_dir;

    int max_ngram = 3;
    bool fuzzy = true;
    parser::MatchSettings match;
    index::Bm25Params bm25;
    classifier::Thresholds thresholds;
    std::size_t result_limit = 50;
    LlmSettings llm;
    std::string host = "127.0.0.1";
    int port = 8080;

    /// Throws ConfigError naming the offending key or path.
    static EngineConfig load(const std::filesystem::path& path);
    static EngineConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
    nlohmann::json to_json() const;
    void validate() const;
};

}  // namespace hsearch::service
