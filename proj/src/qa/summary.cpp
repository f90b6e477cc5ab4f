#include "hsearch/qa/summary.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "hsearch/corpus/data_source.hpp"
#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::qa {

nlohmann::json KeyStats::to_json() const {
    return {{"lines", lines}, {"stats", stats}};
}

namespace {

std::string format_value(double v, const std::optional<std::string>& unit) {
    if (unit && *unit == "USD") {
        return v < 0 ? "-$" + text::format_number(-v) : "$" + text::format_number(v);
    }
    return text::format_number(v);
}

std::size_t column(const ChartSpec& chart, const Encoding& enc) {
    return *chart.table.column_index(enc.field);
}

void extremes(const ChartSpec& chart, const Encoding& measure, const std::vector<std::string>& categories,
              KeyStats& out) {
    const auto& t = chart.table;
    const auto mc = column(chart, measure);
    std::vector<std::size_t> cat_cols;
    for (const auto& c : categories) cat_cols.push_back(*t.column_index(c));
    auto label = [&](std::size_t r) {
        std::vector<std::string> parts;
        for (auto c : cat_cols) parts.push_back(fmt::format("{}: {}", t.columns[c].name, t.label(r, c)));
        return text::join(parts, ", ");
    };

    if (t.rows.empty()) return;
    std::size_t lo = 0;
    std::size_t hi = 0;
    double sum = 0.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double v = t.number(r, mc);
        sum += v;
        if (v < t.number(lo, mc)) lo = r;
        if (v > t.number(hi, mc)) hi = r;
    }
    const double mean = sum / static_cast<double>(t.rows.size());
    const double vmin = t.number(lo, mc);
    const double vmax = t.number(hi, mc);
    out.stats["min"] = vmin;
    out.stats["max"] = vmax;
    out.stats["mean"] = mean;
    out.stats["count"] = static_cast<double>(t.rows.size());

    const auto& name = measure.field;
    if (cat_cols.empty()) {
        out.lines.push_back(fmt::format("{} is: {}", name, format_value(vmin, measure.unit)));
        return;
    }
    out.lines.push_back(fmt::format("{} has a minimum value of {} for {}", label(lo), format_value(vmin, measure.unit), name));
    out.lines.push_back(fmt::format("{} has the maximum value of {} for {}", label(hi), format_value(vmax, measure.unit), name));
    out.lines.push_back(fmt::format("Average {} across {} is: {}", name, text::join(categories, ", "),
                                    format_value(mean, measure.unit)));
}

void correlation(const ChartSpec& chart, KeyStats& out) {
    const auto& x = *chart.channel("x");
    const auto& y = *chart.channel("y");
    const auto xc = column(chart, x);
    const auto yc = column(chart, y);
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t r = 0; r < chart.table.rows.size(); ++r) {
        xs.push_back(chart.table.number(r, xc));
        ys.push_back(chart.table.number(r, yc));
    }
    if (auto r = pearson(xs, ys)) {
        out.stats["pearsonR"] = *r;
        out.lines.push_back(fmt::format("Pearson's correlation coefficient between {} and {} is: {}", x.field, y.field,
                                        text::format_number(*r)));
    } else {
        out.lines.push_back(fmt::format(
            "Pearson's correlation coefficient between {} and {} is undefined: it needs at least two points with "
            "varying values",
            x.field, y.field));
    }
}

void trends(const ChartSpec& chart, KeyStats& out) {
    const auto& t = chart.table;
    const auto& x = *chart.channel("x");
    const auto& y = *chart.channel("y");
    const auto xc = column(chart, x);
    const auto yc = column(chart, y);
    const auto* color = chart.channel("color");
    const auto cc = color ? std::optional(column(chart, *color)) : std::nullopt;

    std::map<std::string, std::vector<std::size_t>> series;
    for (std::size_t r = 0; r < t.rows.size(); ++r) series[cc ? t.label(r, *cc) : ""].push_back(r);
    for (auto& [name, rows] : series) {
        std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
            return t.number(a, xc) < t.number(b, xc);
        });
        const auto first = rows.front();
        const auto last = rows.back();
        const double v0 = t.number(first, yc);
        const double v1 = t.number(last, yc);
        const double delta = v1 - v0;
        const char* direction = std::abs(delta) < 1e-9 ? "flat" : delta > 0 ? "rising" : "falling";
        const auto subject = name.empty() ? y.field : fmt::format("{} for {}", y.field, name);
        out.lines.push_back(fmt::format("{} is {} from {} in {} to {} in {}", subject, direction,
                                        format_value(v0, y.unit), t.label(first, xc), format_value(v1, y.unit),
                                        t.label(last, xc)));
        out.stats[name.empty() ? "trendDelta" : "trendDelta:" + name] = delta;
    }
}

}  // namespace

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = std::min(x.size(), y.size());
    if (n < 2) return std::nullopt;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

KeyStats compute_key_stats(const ChartSpec& chart) {
    KeyStats out;
    if (chart.table.rows.empty()) {
        out.lines.push_back("No rows matched the query");
        return out;
    }
    switch (chart.mark) {
        case Mark::Bar: {
            std::vector<std::string> cats;
            if (const auto* x = chart.channel("x")) cats.push_back(x->field);
            if (const auto* c = chart.channel("color")) cats.push_back(c->field);
            extremes(chart, *chart.channel("y"), cats, out);
            break;
        }
        case Mark::Geoshape: extremes(chart, *chart.channel("color"), {chart.geo->field}, out); break;
        case Mark::Point: correlation(chart, out); break;
        case Mark::Line: trends(chart, out); break;
    }
    return out;
}

std::string rephrase_prompt(const KeyStats& stats) {
    return "Rephrase the following input more eloquently: \n'" + text::join(stats.lines, "\n") + "\n'";
}

std::vector<double> extract_numbers(std::string_view s) {
    static const std::regex kNumber(R"(\d[\d,]*(?:\.\d+)?)");
    std::vector<double> out;
    const std::string str(s);
    for (auto it = std::sregex_iterator(str.begin(), str.end(), kNumber); it != std::sregex_iterator(); ++it) {
        auto token = it->str();
        token.erase(std::remove(token.begin(), token.end(), ','), token.end());
        if (auto v = text::parse_number(token)) out.push_back(*v);
    }
    return out;
}

Summary rephrase_summary(const KeyStats& stats, TextGenerationClient* client) {
    Summary fallback{text::join(stats.lines, "\n"), false, std::nullopt};
    if (!client) return fallback;

    std::string response;
    try {
        response = std::string(text::trim(client->complete(rephrase_prompt(stats))));
    } catch (const std::exception& e) {
        spdlog::warn("text generation failed: {}", e.what());
        fallback.warning = "text generation failed; showing template summary";
        return fallback;
    }
    if (response.empty()) {
        fallback.warning = "text generation returned nothing; showing template summary";
        return fallback;
    }

    auto allowed = extract_numbers(text::join(stats.lines, "\n"));
    for (const auto& [name, v] : stats.stats) allowed.push_back(std::abs(v));
    for (double n : extract_numbers(response)) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](double a) {
            return std::abs(n - a) <= 1e-9 * std::max(1.0, std::abs(a));
        });
        if (!known) {
            spdlog::warn("discarding rephrased summary: {} does not occur in the statistics", text::format_number(n));
            fallback.warning = "rephrased summary contained numbers not in the statistics; showing template summary";
            return fallback;
        }
    }
    return {response, true, std::nullopt};
}

std::vector<std::string> suggest_queries(const corpus::DataSource& source, std::size_t k) {
    if (k == 0) return {};
    struct Ranked {
        std::size_t index;
        double key;
    };
    std::vector<Ranked> measures;
    std::vector<Ranked> dims;
    std::vector<std::size_t> temporal;
    std::vector<std::size_t> geo;
    for (std::size_t i = 0; i < source.attributes.size(); ++i) {
        const auto& a = source.attributes[i];
        const auto cells = corpus::column(source, i);
        if (a.role == corpus::Role::Measure) {
            double n = 0.0;
            double mean = 0.0;
            double m2 = 0.0;
            for (const auto& c : cells) {
                auto v = text::parse_number(c);
                if (!v) continue;
                n += 1.0;
                const double d = *v - mean;
                mean += d / n;
                m2 += d * (*v - mean);
            }
            measures.push_back({i, n > 0 ? m2 / n : 0.0});
        } else if (corpus::is_time_type(a.data_type)) {
            temporal.push_back(i);
        } else if (a.data_type == corpus::DataType::Geospatial) {
            geo.push_back(i);
        } else {
            std::set<std::string> distinct;
            for (const auto& c : cells) {
                if (!text::is_blank(c)) distinct.insert(std::string(text::trim(c)));
                if (distinct.size() > 12) break;
            }
            if (!distinct.empty() && distinct.size() <= 12) dims.push_back({i, static_cast<double>(distinct.size())});
        }
    }
    std::stable_sort(measures.begin(), measures.end(), [](const Ranked& a, const Ranked& b) { return a.key > b.key; });
    std::stable_sort(dims.begin(), dims.end(), [](const Ranked& a, const Ranked& b) { return a.key < b.key; });

    std::vector<std::string> out;
    auto add = [&](std::string q) {
        if (out.size() < k && std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
    };
    const auto& attrs = source.attributes;
    for (const auto& m : measures) {
        const auto& name = attrs[m.index].name;
        for (const auto& d : dims) add(fmt::format("{} of {} by {}", source.default_aggregate, name, attrs[d.index].name));
        for (auto t : temporal) add(fmt::format("trend of {} over {}", name, attrs[t].name));
        for (auto g : geo) add(fmt::format("{} across {}", name, attrs[g].name));
    }
    return out;
}

}  // namespace hsearch::qa
