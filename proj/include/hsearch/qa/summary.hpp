#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/corpus/types.hpp"
#include "hsearch/qa/chart.hpp"
#include "hsearch/qa/text_client.hpp"

namespace hsearch::qa {

struct KeyStats {
    std::vector<std::string> lines;
    std::map<std::string, double> stats;

    nlohmann::json to_json() const;
};

KeyStats compute_key_stats(const ChartSpec& chart);

/// Sample Pearson correlation; nullopt with fewer than two points or zero
/// variance on either side.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

/// "Rephrase the following input more eloquently: \n'<lines>\n'".
std::string rephrase_prompt(const KeyStats& stats);

struct Summary {
    std::string text;
    bool generated = false;         // true when the client's text was kept
    std::optional<std::string> warning;
};

/// Template lines joined with newlines, or the client's rephrasing when every
/// number in it also occurs in the stats.
Summary rephrase_summary(const KeyStats& stats, TextGenerationClient* client);

/// Numbers in free text, thousands separators removed.
std::vector<double> extract_numbers(std::string_view text);

/// "<agg> of M by D", "trend of M over T", "M across G" ranked by measure
/// variance (descending) then dimension cardinality (ascending).
std::vector<std::string> suggest_queries(const corpus::DataSource& source, std::size_t k);

}  // namespace hsearch::qa
