#include "hsearch/qa/chart.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <fmt/format.h>

#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::qa {

std::string_view to_string(Mark m) {
    switch (m) {
        case Mark::Bar: return "bar";
        case Mark::Line: return "line";
        case Mark::Point: return "point";
        case Mark::Geoshape: return "geoshape";
    }
    return "bar";
}

const Encoding* ChartSpec::channel(std::string_view name) const {
    auto it = encodings.find(std::string(name));
    return it == encodings.end() ? nullptr : &it->second;
}

nlohmann::json ChartSpec::to_json() const {
    nlohmann::json enc = nlohmann::json::object();
    for (const auto& [ch, e] : encodings) {
        nlohmann::json j{{"field", e.field}, {"type", corpus::to_string(e.data_type)}};
        if (e.aggregate) j["aggregate"] = to_string(*e.aggregate);
        if (e.time_unit) j["timeUnit"] = *e.time_unit;
        if (e.unit) j["unit"] = *e.unit;
        enc[ch] = std::move(j);
    }
    nlohmann::json j{{"version", kVersion},
                     {"mark", to_string(mark)},
                     {"encodings", std::move(enc)},
                     {"data", table.rows_json()},
                     {"title", title}};
    if (geo) j["geo"] = {{"field", geo->field}, {"geometrySet", geo->geometry_set}};
    return j;
}

std::string chart_title(const AnalyticalSpec& spec) {
    if (spec.correlation_pair) {
        return fmt::format("{} vs {}", spec.correlation_pair->first, spec.correlation_pair->second);
    }
    std::vector<std::string> parts;
    for (const auto& m : spec.measures) {
        if (m.attribute.empty()) {
            parts.push_back(m.column());
            continue;
        }
        auto agg = std::string(to_string(m.aggregate));
        agg[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(agg[0])));
        parts.push_back(fmt::format("{} of {}", agg, m.attribute));
    }
    auto title = text::join(parts, " and ");
    if (spec.temporal_axis) title += " over " + *spec.temporal_axis;
    std::vector<std::string> dims;
    if (spec.geo_axis) dims.push_back(*spec.geo_axis);
    dims.insert(dims.end(), spec.group_bys.begin(), spec.group_bys.end());
    if (!dims.empty()) title += " by " + text::join(dims, ", ");
    if (spec.limit) title = fmt::format("{} {}: {}", spec.limit->top ? "Top" : "Bottom", spec.limit->n, title);
    return title;
}

namespace {

Encoding encoding_of(const ResultTable& table, const std::string& name) {
    auto idx = table.column_index(name);
    if (!idx) throw EncodingError(fmt::format("column '{}' missing from the result table", name));
    const auto& c = table.columns[*idx];
    return {c.name, c.data_type, c.aggregate, std::nullopt, c.unit};
}

std::string geometry_set(const ResultTable& table, const std::string& field, const corpus::Gazetteer* gazetteer) {
    static const std::map<std::string, std::string> kSets = {{"us_state", "us-states"},
                                                             {"country", "world-countries"},
                                                             {"ca_province", "ca-provinces"},
                                                             {"city", "world-cities"}};
    if (!gazetteer) return "us-states";
    const auto col = *table.column_index(field);
    std::map<std::string, std::size_t> votes;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (auto cat = gazetteer->category(text::to_lower(table.label(r, col)))) ++votes[*cat];
    }
    std::string best = "us_state";
    std::size_t best_n = 0;
    for (const auto& [cat, n] : votes) {
        if (n > best_n) {
            best = cat;
            best_n = n;
        }
    }
    auto it = kSets.find(best);
    return it == kSets.end() ? "us-states" : it->second;
}

}  // namespace

ChartSpec choose_encoding(const AnalyticalSpec& spec, ResultTable table, const corpus::Gazetteer* gazetteer) {
    std::vector<std::string> measures;
    if (spec.correlation_pair) {
        measures = {spec.correlation_pair->first, spec.correlation_pair->second};
    } else {
        for (const auto& m : spec.measures) measures.push_back(m.column());
    }
    std::vector<std::string> dims = spec.keys();
    if (measures.empty()) throw EncodingError("nothing to plot: the spec has no measure");
    if (measures.size() + dims.size() > 3) {
        throw EncodingError(fmt::format(
            "{} measures and {} dimensions need {} channels; only x, y and color are available", measures.size(),
            dims.size(), measures.size() + dims.size()));
    }

    ChartSpec chart;
    chart.title = chart_title(spec);
    auto set = [&](const char* ch, const std::string& name) { chart.encodings[ch] = encoding_of(table, name); };

    if (measures.size() >= 2) {
        chart.mark = Mark::Point;
        set("x", measures[0]);
        set("y", measures[1]);
        if (measures.size() == 3) {
            set("color", measures[2]);
        } else if (!dims.empty()) {
            set("color", dims[0]);
        }
    } else if (spec.temporal_axis) {
        chart.mark = Mark::Line;
        set("x", *spec.temporal_axis);
        chart.encodings["x"].time_unit = "year";
        set("y", measures[0]);
        if (dims.size() > 1) set("color", dims[1]);
    } else if (spec.geo_axis && dims.size() == 1) {
        chart.mark = Mark::Geoshape;
        set("color", measures[0]);
        chart.geo = GeoBinding{*spec.geo_axis, geometry_set(table, *spec.geo_axis, gazetteer)};
    } else {
        chart.mark = Mark::Bar;
        if (!dims.empty()) set("x", dims[0]);
        set("y", measures[0]);
        if (dims.size() > 1) set("color", dims[1]);
    }
    chart.table = std::move(table);
    return chart;
}

}  // namespace hsearch::qa
