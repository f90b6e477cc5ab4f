#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsearch/date.hpp"

namespace hsearch::corpus {

enum class DataType { Text, Date, Boolean, Geospatial, Temporal, Numeric };
enum class Role { Measure, Dimension };

std::string_view to_string(DataType t);
std::string_view to_string(Role r);
/// Throws SchemaError on anything outside the six-value set.
DataType parse_data_type(std::string_view s);
Role parse_role(std::string_view s);

inline bool is_time_type(DataType t) {
    return t == DataType::Temporal || t == DataType::Date;
}

struct Attribute {
    std::string name;
    DataType data_type = DataType::Text;
    Role role = Role::Dimension;
    std::vector<std::string> synonyms;
    std::vector<std::string> related_terms;
    std::optional<std::string> taxonomy_node;
    std::optional<std::string> unit_semantics;  // e.g. "USD"

    bool operator==(const Attribute&) const = default;
};

struct DataSource {
    std::string id;
    std::string name;
    std::string description;
    std::vector<Attribute> attributes;
    std::vector<std::vector<std::string>> rows;
    /// Aggregate applied to a measure named without an operator.
    std::string default_aggregate = "sum";

    /// Case-insensitive attribute lookup.
    std::optional<std::size_t> attribute_index(std::string_view name) const;
    const Attribute* attribute(std::string_view name) const;
};

struct VizDocument {
    std::string id;
    std::string title;
    std::string caption;
    std::vector<std::string> tags;
    std::string description;
    std::string author_name;
    CivilDate created_date;
    std::vector<std::string> chart_types;
    std::vector<std::string> mark_types;
    std::string source_url;
    std::string thumbnail_ref;

    bool operator==(const VizDocument&) const = default;
};

}  // namespace hsearch::corpus
