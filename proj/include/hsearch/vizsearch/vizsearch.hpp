#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/corpus/types.hpp"
#include "hsearch/date.hpp"
#include "hsearch/index/search_index.hpp"

namespace hsearch::vizsearch {

/// Chart-type ids with their trigger concepts. Concepts are stored
/// normalized: lowercase words, stopwords removed, space-joined.
class ChartTypeLexicon {
  public:
    struct Entry {
        std::string label;
        std::vector<std::string> concepts;
    };

    ChartTypeLexicon() = default;
    /// {type: {label?, concepts: [...]}}; throws SchemaError.
    static ChartTypeLexicon from_json(const nlohmann::json& j, const std::set<std::string>& stopwords = {});
    static ChartTypeLexicon load(const std::filesystem::path& path, const std::set<std::string>& stopwords = {});

    const std::map<std::string, Entry>& entries() const { return entries_; }
    std::set<std::string> ids() const;
    bool contains(std::string_view id) const { return entries_.count(std::string(id)) != 0; }

  private:
    std::map<std::string, Entry> entries_;
};

struct ChartTypeMatch {
    std::set<std::string> types;
    std::set<std::string> trigger_words;  // query unigrams consumed by a match
};

ChartTypeMatch match_chart_types(const index::TokenSet& tokens, const ChartTypeLexicon& lexicon,
                                 double fuzzy_threshold = 0.2);
/// Every chart type with a concept equal to, or within the fuzzy threshold
/// of, a query n-gram.
std::set<std::string> detect_chart_types(const index::TokenSet& tokens, const ChartTypeLexicon& lexicon,
                                         double fuzzy_threshold = 0.2);

/// Index document for one visualization. chartTypes is indexed as well as
/// stored so that a bare chart-type keyword retrieves its charts.
index::Document to_document(const corpus::VizDocument& doc);

inline constexpr std::size_t kDefaultLimit = 50;

index::RankedResults exploratory_search(std::string_view query, const index::SearchIndex& viz_index,
                                        std::size_t limit = kDefaultLimit);

struct DesignSearchOptions {
    std::size_t limit = kDefaultLimit;
    bool strict = false;  // drop documents outside the detected chart types
    double fuzzy_threshold = 0.2;
};

struct DesignResult {
    index::RankedResults results;
    std::set<std::string> chart_types;
    bool design = false;  // false: plain exploratory search
};

/// Exploratory search when no chart type is detected. Otherwise documents
/// of a detected type are lifted above every other document while the
/// remaining (non-trigger) words order documents by BM25.
DesignResult design_search(std::string_view query, const index::SearchIndex& viz_index,
                           const ChartTypeLexicon& lexicon, const DesignSearchOptions& options = {});

/// Id lookup over the loaded visualization corpus.
class VizCatalog {
  public:
    VizCatalog() = default;
    explicit VizCatalog(std::vector<corpus::VizDocument> docs);

    const corpus::VizDocument* find(std::string_view id) const;
    const std::vector<corpus::VizDocument>& documents() const { return docs_; }
    std::size_t size() const { return docs_.size(); }

  private:
    std::vector<corpus::VizDocument> docs_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

struct FacetSummary {
    std::map<std::string, std::size_t> author_counts;
    std::map<std::string, std::size_t> chart_type_counts;
    std::map<std::string, std::size_t> date_histogram;  // YYYY-MM

    nlohmann::json to_json() const;
    bool operator==(const FacetSummary&) const = default;
};

struct FacetState {
    std::set<std::string> authors;
    std::set<std::string> chart_types;
    std::optional<CivilDate> from;  // inclusive
    std::optional<CivilDate> to;    // inclusive

    bool empty() const { return authors.empty() && chart_types.empty() && !from && !to; }
    bool matches(const corpus::VizDocument& doc) const;
};

FacetSummary compute_facets(std::span<const corpus::VizDocument* const> docs);
FacetSummary compute_facets(const index::RankedResults& results, const VizCatalog& catalog);

/// Keeps entries whose document satisfies every selected facet kind (any
/// value within a kind). Order and scores are untouched.
index::RankedResults apply_facets(const index::RankedResults& results, const VizCatalog& catalog,
                                  const FacetState& state);

}  // namespace hsearch::vizsearch
