#include "hsearch/corpus/types.hpp"

#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::corpus {

std::string_view to_string(DataType t) {
    switch (t) {
        case DataType::Text: return "text";
        case DataType::Date: return "date";
        case DataType::Boolean: return "Boolean";
        case DataType::Geospatial: return "geospatial";
        case DataType::Temporal: return "temporal";
        case DataType::Numeric: return "numeric";
    }
    return "text";
}

std::string_view to_string(Role r) {
    return r == Role::Measure ? "measure" : "dimension";
}

DataType parse_data_type(std::string_view s) {
    const auto key = text::to_lower(s);
    if (key == "text") return DataType::Text;
    if (key == "date") return DataType::Date;
    if (key == "boolean") return DataType::Boolean;
    if (key == "geospatial") return DataType::Geospatial;
    if (key == "temporal") return DataType::Temporal;
    if (key == "numeric") return DataType::Numeric;
    throw SchemaError("unknown dataType '" + std::string(s) + "'");
}

Role parse_role(std::string_view s) {
    const auto key = text::to_lower(s);
    if (key == "measure") return Role::Measure;
    if (key == "dimension") return Role::Dimension;
    throw SchemaError("unknown role '" + std::string(s) + "'");
}

std::optional<std::size_t> DataSource::attribute_index(std::string_view name) const {
    const auto key = text::to_lower(name);
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (text::to_lower(attributes[i].name) == key) return i;
    }
    return std::nullopt;
}

const Attribute* DataSource::attribute(std::string_view name) const {
    auto idx = attribute_index(name);
    return idx ? &attributes[*idx] : nullptr;
}

}  // namespace hsearch::corpus
