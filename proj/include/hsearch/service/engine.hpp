#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/corpus/gazetteer.hpp"
#include "hsearch/corpus/lexicon.hpp"
#include "hsearch/corpus/types.hpp"
#include "hsearch/index/search_index.hpp"
#include "hsearch/index/snapshot.hpp"
#include "hsearch/parser/grammar.hpp"
#include "hsearch/parser/parser.hpp"
#include "hsearch/qa/text_client.hpp"
#include "hsearch/service/config.hpp"
#include "hsearch/vizsearch/vizsearch.hpp"

namespace hsearch::service {

inline constexpr std::string_view kDataSourceIndexFile = "datasources.index.json";
inline constexpr std::string_view kVizIndexFile = "visualizations.index.json";
inline constexpr std::string_view kManifestFile = "manifest.json";

/// Everything a query reads. Immutable once built.
struct EngineState {
    EngineConfig config;
    index::AnalyzerSettings analyzer;
    corpus::Lexicon lexicon;
    corpus::Gazetteer gazetteer;
    parser::Grammar grammar;
    vizsearch::ChartTypeLexicon chart_types;
    std::vector<corpus::DataSource> sources;
    vizsearch::VizCatalog catalog;
    index::SearchIndex ds_index;
    index::SearchIndex viz_index;
    std::unique_ptr<parser::QueryParser> parser;

    const corpus::DataSource* source(std::string_view id) const;
};

/// Loads the corpora (and, unless `build_indices`, the persisted indices).
std::shared_ptr<const EngineState> load_state(const EngineConfig& config, bool build_indices);

/// Index document for a data source: name, description, attribute metadata
/// and distinct dimension values.
index::Document to_document(const corpus::DataSource& source, std::size_t max_values = 10000);

struct SearchRequest {
    std::string query;
    vizsearch::FacetState facets;
    std::optional<std::size_t> limit;
    std::optional<std::string> source;  // pin Q&A to this data source
    std::optional<std::size_t> field_match;
    std::optional<double> norm_match;
    bool use_llm = true;
};

struct IndexReport {
    nlohmann::json manifest;
    std::filesystem::path directory;
};

class Engine {
  public:
    /// Loads corpora and persisted indices; throws with a remediation hint
    /// when the indices are missing.
    explicit Engine(EngineConfig config);
    Engine(std::shared_ptr<const EngineState> state);

    /// HybridResult JSON: {query, plan, qa?, general, timings}.
    nlohmann::json search(const SearchRequest& request) const;
    nlohmann::json datasources() const;
    /// Throws LookupError for an unknown id.
    nlohmann::json datasource(std::string_view id) const;
    /// Throws LookupError for an unknown id.
    nlohmann::json suggestions(std::string_view id, std::size_t k) const;
    /// Bundled geometry set as JSON; throws LookupError when not shipped.
    nlohmann::json geometry(std::string_view id) const;

    /// Atomically replaces the state readers see.
    void swap(std::shared_ptr<const EngineState> next) { state_.swap(std::move(next)); }
    std::shared_ptr<const EngineState> state() const { return state_.get(); }
    /// Replaces the text-generation client (tests inject stubs).
    void set_text_client(std::shared_ptr<qa::TextGenerationClient> client) { client_ = std::move(client); }

  private:
    index::Snapshot<EngineState> state_;
    std::shared_ptr<qa::TextGenerationClient> client_;
};

/// Builds both indices from the corpora and writes them plus a manifest
/// (doc counts, SHA-256 of each index file and of the config).
IndexReport cmd_index(const EngineConfig& config);

std::string sha256_hex(std::string_view bytes);

}  // namespace hsearch::service
