#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "hsearch/corpus/gazetteer.hpp"
#include "hsearch/corpus/lexicon.hpp"
#include "hsearch/corpus/types.hpp"

namespace hsearch::corpus {

/// Share of non-blank cells that must parse as numbers (or dates) for the
/// column to take that type.
inline constexpr double kMajorityThreshold = 0.95;
/// Share of non-blank cells that must be known places for a geospatial column.
inline constexpr double kGeoThreshold = 0.8;

/// Infers (dataType, role) from raw cells; blanks are ignored.
/// Throws RoleInferenceError when every cell is blank.
std::pair<DataType, Role> infer_field_role(std::span<const std::string> column_values,
                                           const Gazetteer& gazetteer);

/// Loads a CSV plus its JSON metadata. Metadata-declared types override
/// inference; columns without metadata are inferred.
DataSource load_data_source(const std::filesystem::path& csv_path,
                            const std::filesystem::path& meta_path,
                            const Gazetteer& gazetteer);

/// Metadata document for a source, in the same schema the loader reads.
nlohmann::json metadata_to_json(const DataSource& source);
Attribute attribute_from_json(const nlohmann::json& j);
nlohmann::json attribute_to_json(const Attribute& a);

/// Adds lexicon synonyms, related terms from the taxonomy neighbourhood (two
/// levels up and down) and the taxonomy anchor. Idempotent.
Attribute enrich_attribute(const Attribute& attr, const Lexicon& lexicon);
void enrich(DataSource& source, const Lexicon& lexicon);

/// Column of raw cells for the attribute at `index`.
std::vector<std::string> column(const DataSource& source, std::size_t index);

}  // namespace hsearch::corpus
