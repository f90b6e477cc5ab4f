#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hsearch/corpus/gazetteer.hpp"
#include "hsearch/qa/spec.hpp"

namespace hsearch::qa {

enum class Mark { Bar, Line, Point, Geoshape };
std::string_view to_string(Mark m);

struct Encoding {
    std::string field;
    corpus::DataType data_type = corpus::DataType::Text;
    std::optional<Aggregate> aggregate;
    std::optional<std::string> time_unit;
    std::optional<std::string> unit;
};

struct GeoBinding {
    std::string field;
    std::string geometry_set;  // us-states, world-countries, ca-provinces, world-cities
};

struct ChartSpec {
    static constexpr int kVersion = 1;

    Mark mark = Mark::Bar;
    std::map<std::string, Encoding> encodings;  // x, y, color
    ResultTable table;
    std::string title;
    std::optional<GeoBinding> geo;

    const Encoding* channel(std::string_view name) const;
    nlohmann::json to_json() const;
};

/// Simplified Show Me decision table. Throws EncodingError when the spec
/// needs more than the three channels.
ChartSpec choose_encoding(const AnalyticalSpec& spec, ResultTable table,
                          const corpus::Gazetteer* gazetteer = nullptr);

std::string chart_title(const AnalyticalSpec& spec);

}  // namespace hsearch::qa
