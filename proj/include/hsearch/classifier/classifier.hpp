#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/index/search_index.hpp"
#include "hsearch/parser/types.hpp"

namespace hsearch::classifier {

struct DataSourceScore {
    std::string source_id;
    std::size_t field_match_count = 0;  // distinct attributes/values matched
    double raw_score = 0.0;             // BM25 against the data-source index
    double norm_score = 0.0;            // share of the total raw score
};

struct Thresholds {
    std::size_t field_match = 2;
    double norm_match = 0.3;
};

struct SearchPlan {
    bool has_analytical_intent = false;
    bool has_ds_match = false;
    bool invoke_qa = false;
    std::vector<DataSourceScore> ranked_sources;  // raw score descending
    Thresholds thresholds;

    const DataSourceScore* top() const { return ranked_sources.empty() ? nullptr : &ranked_sources.front(); }
    nlohmann::json to_json() const;
};

/// normScore_i = raw_i / sum(raw); all zero when the sum is zero. Order kept.
std::vector<DataSourceScore> normalize_scores(std::vector<DataSourceScore> scores);

/// Distinct attribute/value refs matched for one source.
std::size_t field_match_count(const parser::ParsedQuery& parsed, std::string_view source_id);

/// Routes a parsed query: Q&A when it carries an analytical intent and the
/// best data source clears both thresholds.
SearchPlan classify(const parser::ParsedQuery& parsed, const index::SearchIndex& ds_index,
                    const Thresholds& thresholds = {});

}  // namespace hsearch::classifier
