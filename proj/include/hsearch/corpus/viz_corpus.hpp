#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/corpus/types.hpp"

namespace hsearch::corpus {

struct VizLoadResult {
    std::vector<VizDocument> documents;
    std::vector<std::string> diagnostics;  // one per skipped record
    std::size_t skipped() const { return diagnostics.size(); }
};

/// Reads newline-delimited VizDocument records. Invalid records are skipped
/// and reported; an unreadable file throws IngestionError. When
/// `known_chart_types` is given, chartTypes outside it invalidate a record.
VizLoadResult load_viz_corpus(const std::filesystem::path& path,
                              const std::set<std::string>* known_chart_types = nullptr);
VizLoadResult parse_viz_corpus(std::string_view content,
                               const std::set<std::string>* known_chart_types = nullptr);

/// Throws SchemaError describing the first problem.
VizDocument viz_from_json(const nlohmann::json& j);
nlohmann::json viz_to_json(const VizDocument& doc);

}  // namespace hsearch::corpus
