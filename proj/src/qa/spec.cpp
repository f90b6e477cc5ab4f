#include "hsearch/qa/spec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "hsearch/date.hpp"
#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::qa {

using corpus::DataSource;
using corpus::DataType;
using corpus::Role;
using parser::Argument;
using parser::IntentKind;

std::string_view to_string(Aggregate a) {
    switch (a) {
        case Aggregate::Sum: return "sum";
        case Aggregate::Average: return "average";
        case Aggregate::Median: return "median";
        case Aggregate::Count: return "count";
        case Aggregate::DistinctCount: return "distinct count";
    }
    return "sum";
}

std::optional<Aggregate> parse_aggregate(std::string_view s) {
    for (auto a : {Aggregate::Sum, Aggregate::Average, Aggregate::Median, Aggregate::Count,
                   Aggregate::DistinctCount}) {
        if (to_string(a) == s) return a;
    }
    return std::nullopt;
}

std::string_view to_string(FilterOp op) {
    switch (op) {
        case FilterOp::Equals: return "equals";
        case FilterOp::AtLeast: return "atLeast";
        case FilterOp::AtMost: return "atMost";
        case FilterOp::GreaterThan: return "greaterThan";
        case FilterOp::LessThan: return "lessThan";
        case FilterOp::Between: return "between";
        case FilterOp::YearEquals: return "yearEquals";
    }
    return "equals";
}

std::vector<std::string> AnalyticalSpec::keys() const {
    std::vector<std::string> out;
    if (temporal_axis) out.push_back(*temporal_axis);
    if (geo_axis) out.push_back(*geo_axis);
    out.insert(out.end(), group_bys.begin(), group_bys.end());
    return out;
}

nlohmann::json AnalyticalSpec::to_json() const {
    nlohmann::json j;
    j["sourceId"] = source_id;
    j["groupBys"] = group_bys;
    j["measures"] = nlohmann::json::array();
    for (const auto& m : measures) {
        j["measures"].push_back({{"attribute", m.column()}, {"aggregate", to_string(m.aggregate)}});
    }
    j["filters"] = nlohmann::json::array();
    for (const auto& f : filters) {
        nlohmann::json fj{{"attribute", f.attribute}, {"op", to_string(f.op)}};
        if (f.op == FilterOp::Equals) {
            fj["values"] = f.values;
        } else {
            fj["low"] = f.low;
            if (f.op == FilterOp::Between) fj["high"] = f.high;
        }
        j["filters"].push_back(std::move(fj));
    }
    if (limit) j["limit"] = {{"direction", limit->top ? "top" : "bottom"}, {"n", limit->n}};
    if (correlation_pair) j["correlationPair"] = {correlation_pair->first, correlation_pair->second};
    if (temporal_axis) j["temporalAxis"] = *temporal_axis;
    if (geo_axis) j["geoAxis"] = *geo_axis;
    return j;
}

namespace {

bool is_geo(const corpus::Attribute& a) {
    return a.data_type == DataType::Geospatial;
}

bool is_temporal(const corpus::Attribute& a) {
    return corpus::is_time_type(a.data_type);
}

std::size_t position_of(const std::string& ngram, const std::vector<std::string>& words) {
    const auto first = ngram.substr(0, ngram.find(' '));
    auto it = std::find(words.begin(), words.end(), first);
    return static_cast<std::size_t>(it - words.begin());
}

std::optional<FilterOp> numeric_filter_op(std::string_view op) {
    if (op == "at least") return FilterOp::AtLeast;
    if (op == "at most") return FilterOp::AtMost;
    if (op == "more than" || op == "greater than") return FilterOp::GreaterThan;
    if (op == "less than") return FilterOp::LessThan;
    if (op == "between") return FilterOp::Between;
    return std::nullopt;
}

struct Binding {
    std::size_t attr;
    std::optional<std::string> value;
    parser::MatchKind kind;
    std::size_t pos;
};

class Resolver {
  public:
    Resolver(const parser::ParsedQuery& parsed, const DataSource& source) : parsed_(parsed), source_(source) {
        spec_.source_id = source.id;
        default_aggregate_ = parse_aggregate(source.default_aggregate).value_or(Aggregate::Sum);
    }

    AnalyticalSpec run() {
        collect_bindings();
        for (const auto& intent : parsed_.intents) apply(intent);
        apply_leftovers();
        finish();
        return std::move(spec_);
    }

  private:
    const corpus::Attribute& attr(std::size_t i) const { return source_.attributes[i]; }

    std::optional<std::size_t> attr_of(const parser::FieldRef& ref) const {
        if (ref.source_id != source_.id) return std::nullopt;
        return source_.attribute_index(ref.attribute);
    }

    std::vector<std::size_t> attributes_of(const Argument& arg) const {
        std::vector<std::size_t> out;
        if (arg.kind != Argument::Kind::Attribute) return out;
        for (const auto& ref : arg.refs) {
            if (ref.value) continue;
            if (auto a = attr_of(ref); a && std::find(out.begin(), out.end(), *a) == out.end()) out.push_back(*a);
        }
        return out;
    }

    std::optional<std::size_t> first_attribute(bool (*pred)(const corpus::Attribute&),
                                               const std::set<std::size_t>& exclude = {}) const {
        for (std::size_t i = 0; i < source_.attributes.size(); ++i) {
            if (pred(attr(i)) && !exclude.count(i)) return i;
        }
        return std::nullopt;
    }

    void collect_bindings() {
        std::set<std::pair<std::size_t, std::optional<std::string>>> seen;
        for (const auto& m : parsed_.field_matches) {
            auto a = attr_of(m.ref);
            if (!a || !seen.emplace(*a, m.ref.value).second) continue;
            bindings_.push_back({*a, m.ref.value, m.kind, position_of(m.ngram, parsed_.words)});
        }
        std::stable_sort(bindings_.begin(), bindings_.end(),
                         [](const Binding& x, const Binding& y) { return x.pos < y.pos; });
    }

    void add_measure(std::size_t a, Aggregate agg) {
        used_.insert(a);
        MeasureSpec m{attr(a).name, agg};
        if (std::find(spec_.measures.begin(), spec_.measures.end(), m) == spec_.measures.end()) {
            spec_.measures.push_back(std::move(m));
        }
    }

    void add_group(std::size_t a) {
        used_.insert(a);
        const auto& name = attr(a).name;
        if (is_temporal(attr(a)) && !spec_.temporal_axis) {
            spec_.temporal_axis = name;
        } else if (is_geo(attr(a)) && !spec_.geo_axis) {
            spec_.geo_axis = name;
        } else if (spec_.temporal_axis != name && spec_.geo_axis != name &&
                   std::find(spec_.group_bys.begin(), spec_.group_bys.end(), name) == spec_.group_bys.end()) {
            spec_.group_bys.push_back(name);
        }
    }

    void add_value_filter(std::size_t a, const std::string& value) {
        used_values_.emplace(a, value);
        filtered_.insert(a);
        for (auto& f : spec_.filters) {
            if (f.op == FilterOp::Equals && f.attribute == attr(a).name) {
                if (std::find(f.values.begin(), f.values.end(), value) == f.values.end()) f.values.push_back(value);
                return;
            }
        }
        Filter f;
        f.attribute = attr(a).name;
        f.values.push_back(value);
        spec_.filters.push_back(std::move(f));
    }

    void add_value_filters(const Argument& arg) {
        for (const auto& ref : arg.refs) {
            if (!ref.value) continue;
            if (auto a = attr_of(ref)) add_value_filter(*a, *ref.value);
        }
    }

    void apply(const parser::Intent& intent) {
        const std::string op = intent.op.value_or("");
        switch (intent.kind) {
            case IntentKind::Aggregation: {
                const auto agg = parse_aggregate(op).value_or(default_aggregate_);
                bool bound = false;
                for (const auto& arg : intent.args) {
                    for (auto a : attributes_of(arg)) {
                        if (attr(a).role == Role::Measure) {
                            add_measure(a, agg);
                            bound = true;
                        } else if (agg == Aggregate::Count || agg == Aggregate::DistinctCount) {
                            add_measure(a, agg);
                            bound = true;
                        }
                    }
                }
                if (!bound) pending_aggregate_ = agg;
                break;
            }
            case IntentKind::Grouping:
                for (const auto& arg : intent.args) {
                    for (auto a : attributes_of(arg)) {
                        if (attr(a).role == Role::Measure) {
                            add_measure(a, pending_aggregate_.value_or(default_aggregate_));
                        } else {
                            add_group(a);
                        }
                    }
                }
                break;
            case IntentKind::Correlation:
                correlation_ = true;
                for (const auto& arg : intent.args) {
                    for (auto a : attributes_of(arg)) {
                        if (attr(a).role == Role::Measure) {
                            used_.insert(a);
                            correlated_.push_back(a);
                        }
                    }
                }
                break;
            case IntentKind::FilterLimit: apply_filter_limit(intent, op); break;
            case IntentKind::Temporal: apply_temporal(intent); break;
            case IntentKind::Geospatial: apply_geo(intent); break;
        }
    }

    void apply_filter_limit(const parser::Intent& intent, const std::string& op) {
        std::vector<double> numbers;
        for (const auto& arg : intent.args) {
            if (arg.kind == Argument::Kind::Number && arg.number) numbers.push_back(*arg.number);
        }
        if (op == "top" || op == "bottom" || op == "highest" || op == "lowest") {
            Limit limit;
            limit.top = op == "top" || op == "highest";
            if (!numbers.empty() && numbers.front() >= 1) limit.n = static_cast<std::size_t>(numbers.front());
            spec_.limit = limit;
            for (const auto& arg : intent.args) {
                for (auto a : attributes_of(arg)) {
                    if (attr(a).role == Role::Measure) {
                        add_measure(a, pending_aggregate_.value_or(default_aggregate_));
                    } else {
                        add_group(a);
                    }
                }
            }
            return;
        }
        for (const auto& arg : intent.args) add_value_filters(arg);
        auto fop = numeric_filter_op(op);
        if (!fop || numbers.empty()) return;
        Filter f;
        f.op = *fop;
        f.low = numbers[0];
        f.high = numbers.size() > 1 ? numbers[1] : numbers[0];
        if (f.op == FilterOp::Between && f.low > f.high) std::swap(f.low, f.high);
        std::optional<std::size_t> target;
        for (const auto& arg : intent.args) {
            for (auto a : attributes_of(arg)) {
                if (!target && attr(a).data_type == DataType::Numeric) target = a;
            }
        }
        pending_filters_.emplace_back(std::move(f), target);
    }

    void apply_temporal(const parser::Intent& intent) {
        std::optional<std::size_t> axis;
        std::optional<double> year;
        for (const auto& arg : intent.args) {
            for (auto a : attributes_of(arg)) {
                if (!axis && is_temporal(attr(a))) axis = a;
            }
            if (arg.kind == Argument::Kind::Number && arg.number) year = arg.number;
        }
        if (!axis) axis = first_attribute(is_temporal);
        if (!axis) return;
        used_.insert(*axis);
        if (year) {
            Filter f;
            f.attribute = attr(*axis).name;
            f.op = FilterOp::YearEquals;
            f.low = f.high = *year;
            spec_.filters.push_back(std::move(f));
            filtered_.insert(*axis);
        } else if (!spec_.temporal_axis) {
            spec_.temporal_axis = attr(*axis).name;
        }
    }

    void apply_geo(const parser::Intent& intent) {
        std::optional<std::size_t> axis;
        for (const auto& arg : intent.args) {
            add_value_filters(arg);
            for (auto a : attributes_of(arg)) {
                if (!axis && is_geo(attr(a))) axis = a;
            }
        }
        if (!axis) axis = first_attribute(is_geo, filtered_);
        if (!axis || spec_.geo_axis) return;
        used_.insert(*axis);
        spec_.geo_axis = attr(*axis).name;
    }

    void apply_leftovers() {
        for (const auto& b : bindings_) {
            if (b.value) {
                if (b.kind == parser::MatchKind::Exact && !used_values_.count({b.attr, *b.value}) &&
                    !(spec_.geo_axis && *spec_.geo_axis == attr(b.attr).name)) {
                    add_value_filter(b.attr, *b.value);
                }
                continue;
            }
            if (used_.count(b.attr)) continue;
            if (attr(b.attr).role == Role::Measure) {
                if (correlation_) {
                    correlated_.push_back(b.attr);
                    used_.insert(b.attr);
                } else {
                    add_measure(b.attr, pending_aggregate_.value_or(default_aggregate_));
                }
            } else {
                add_group(b.attr);
            }
        }
        for (auto& [f, target] : pending_filters_) {
            if (!target) {
                for (const auto& b : bindings_) {
                    if (!b.value && attr(b.attr).data_type == DataType::Numeric) {
                        target = b.attr;
                        break;
                    }
                }
            }
            if (!target) continue;
            f.attribute = attr(*target).name;
            spec_.filters.push_back(std::move(f));
            filtered_.insert(*target);
        }
    }

    void finish() {
        if (correlation_) {
            std::vector<std::size_t> pair;
            for (auto a : correlated_) {
                if (std::find(pair.begin(), pair.end(), a) == pair.end()) pair.push_back(a);
            }
            for (const auto& m : spec_.measures) {
                if (m.attribute.empty()) continue;
                auto a = *source_.attribute_index(m.attribute);
                if (std::find(pair.begin(), pair.end(), a) == pair.end()) pair.push_back(a);
            }
            if (pair.size() >= 2) {
                spec_.correlation_pair = std::make_pair(attr(pair[0]).name, attr(pair[1]).name);
                spec_.measures.clear();
                spec_.temporal_axis.reset();
                spec_.geo_axis.reset();
                if (spec_.group_bys.size() > 1) spec_.group_bys.resize(1);
                spec_.limit.reset();
                return;
            }
            for (auto a : pair) add_measure(a, pending_aggregate_.value_or(default_aggregate_));
        }
        const bool has_keys = !spec_.keys().empty();
        if (spec_.measures.empty()) {
            if (!has_keys && spec_.filters.empty()) {
                throw SpecUnresolvable(fmt::format("query does not reference any attribute of '{}'", source_.id));
            }
            spec_.measures.push_back({"", Aggregate::Count});
        }
    }

    const parser::ParsedQuery& parsed_;
    const DataSource& source_;
    AnalyticalSpec spec_;
    Aggregate default_aggregate_ = Aggregate::Sum;
    std::optional<Aggregate> pending_aggregate_;
    std::vector<Binding> bindings_;
    std::set<std::size_t> used_;
    std::set<std::size_t> filtered_;
    std::set<std::pair<std::size_t, std::string>> used_values_;
    std::vector<std::pair<Filter, std::optional<std::size_t>>> pending_filters_;
    bool correlation_ = false;
    std::vector<std::size_t> correlated_;
};

// Numbers compare numerically, everything else case-sensitively.
bool key_less(const std::string& a, const std::string& b) {
    auto na = text::parse_number(a);
    auto nb = text::parse_number(b);
    if (na && nb) return *na < *nb || (*na == *nb && a < b);
    if (na != nb) return na.has_value();
    return a < b;
}

struct KeyLess {
    bool operator()(const std::vector<std::string>& a, const std::vector<std::string>& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), key_less);
    }
};

std::size_t require_attribute(const DataSource& source, std::string_view name) {
    auto idx = source.attribute_index(name);
    if (!idx) throw ExecutionError(fmt::format("attribute '{}' not in source '{}'", name, source.id));
    return *idx;
}

bool passes(const Filter& f, const std::string& cell, const corpus::Attribute& attr) {
    switch (f.op) {
        case FilterOp::Equals: {
            const auto c = text::to_lower(text::trim(cell));
            for (const auto& v : f.values) {
                if (text::to_lower(text::trim(v)) == c) return true;
                auto nv = text::parse_number(v);
                auto nc = text::parse_number(cell);
                if (nv && nc && *nv == *nc) return true;
            }
            return false;
        }
        case FilterOp::YearEquals: {
            auto y = year_of(cell);
            return y && *y == static_cast<int>(f.low);
        }
        default: break;
    }
    (void)attr;
    auto v = text::parse_number(cell);
    if (!v) return false;
    switch (f.op) {
        case FilterOp::AtLeast: return *v >= f.low;
        case FilterOp::AtMost: return *v <= f.low;
        case FilterOp::GreaterThan: return *v > f.low;
        case FilterOp::LessThan: return *v < f.low;
        case FilterOp::Between: return *v >= f.low && *v <= f.high;
        default: return false;
    }
}

void check_filter(const Filter& f, const corpus::Attribute& attr) {
    switch (f.op) {
        case FilterOp::Equals:
            if (f.values.empty()) throw ExecutionError(fmt::format("equality filter on '{}' has no values", attr.name));
            if (attr.data_type == DataType::Numeric) {
                for (const auto& v : f.values) {
                    if (!text::parse_number(v)) {
                        throw ExecutionError(
                            fmt::format("cannot compare numeric attribute '{}' with '{}'", attr.name, v));
                    }
                }
            }
            return;
        case FilterOp::YearEquals:
            if (!corpus::is_time_type(attr.data_type)) {
                throw ExecutionError(fmt::format("year filter needs a temporal attribute, '{}' is {}", attr.name,
                                                 corpus::to_string(attr.data_type)));
            }
            return;
        default:
            if (attr.data_type != DataType::Numeric) {
                throw ExecutionError(fmt::format("filter '{}' needs a numeric attribute, '{}' is {}", to_string(f.op),
                                                 attr.name, corpus::to_string(attr.data_type)));
            }
    }
}

struct Accumulator {
    std::vector<double> values;
    std::size_t count = 0;
    std::set<std::string> distinct;
};

std::optional<double> finalize(Aggregate agg, Accumulator& acc) {
    switch (agg) {
        case Aggregate::Sum: {
            double s = 0.0;
            for (double v : acc.values) s += v;
            return s;
        }
        case Aggregate::Average: {
            if (acc.values.empty()) return std::nullopt;
            double s = 0.0;
            for (double v : acc.values) s += v;
            return s / static_cast<double>(acc.values.size());
        }
        case Aggregate::Median: {
            if (acc.values.empty()) return std::nullopt;
            auto& v = acc.values;
            std::sort(v.begin(), v.end());
            const auto n = v.size();
            return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
        }
        case Aggregate::Count: return static_cast<double>(acc.count);
        case Aggregate::DistinctCount: return static_cast<double>(acc.distinct.size());
    }
    return std::nullopt;
}

ResultColumn key_column(const corpus::Attribute& a) {
    return {a.name, a.data_type, Role::Dimension, std::nullopt, std::nullopt};
}

}  // namespace

AnalyticalSpec resolve_spec(const parser::ParsedQuery& parsed, const DataSource& source) {
    return Resolver(parsed, source).run();
}

std::optional<std::size_t> ResultTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    return std::nullopt;
}

double ResultTable::number(std::size_t row, std::size_t col) const {
    const auto& c = rows.at(row).at(col);
    if (const auto* d = std::get_if<double>(&c)) return *d;
    return text::parse_number(std::get<std::string>(c)).value_or(std::nan(""));
}

std::string ResultTable::label(std::size_t row, std::size_t col) const {
    const auto& c = rows.at(row).at(col);
    if (const auto* d = std::get_if<double>(&c)) return text::format_number(*d);
    return std::get<std::string>(c);
}

nlohmann::json ResultTable::rows_json() const {
    auto out = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < columns.size() && c < row.size(); ++c) {
            std::visit([&](const auto& v) { obj[columns[c].name] = v; }, row[c]);
        }
        out.push_back(std::move(obj));
    }
    return out;
}

ResultTable execute_spec(const AnalyticalSpec& spec, const DataSource& source) {
    std::vector<std::pair<const Filter*, std::size_t>> filters;
    for (const auto& f : spec.filters) {
        auto idx = require_attribute(source, f.attribute);
        check_filter(f, source.attributes[idx]);
        filters.emplace_back(&f, idx);
    }
    std::vector<const std::vector<std::string>*> rows;
    for (const auto& row : source.rows) {
        bool keep = true;
        for (const auto& [f, idx] : filters) {
            if (!passes(*f, row[idx], source.attributes[idx])) {
                keep = false;
                break;
            }
        }
        if (keep) rows.push_back(&row);
    }

    ResultTable table;
    if (spec.correlation_pair) {
        const auto x = require_attribute(source, spec.correlation_pair->first);
        const auto y = require_attribute(source, spec.correlation_pair->second);
        for (auto idx : {x, y}) {
            const auto& a = source.attributes[idx];
            if (a.data_type != DataType::Numeric) {
                throw ExecutionError(fmt::format("cannot correlate non-numeric attribute '{}'", a.name));
            }
            table.columns.push_back({a.name, a.data_type, Role::Measure, std::nullopt, a.unit_semantics});
        }
        std::optional<std::size_t> color;
        if (!spec.group_bys.empty()) {
            color = require_attribute(source, spec.group_bys.front());
            table.columns.push_back(key_column(source.attributes[*color]));
        }
        for (const auto* row : rows) {
            auto vx = text::parse_number((*row)[x]);
            auto vy = text::parse_number((*row)[y]);
            if (!vx || !vy) continue;
            std::vector<Cell> out{*vx, *vy};
            if (color) {
                auto label = std::string(text::trim((*row)[*color]));
                if (label.empty()) continue;
                out.emplace_back(std::move(label));
            }
            table.rows.push_back(std::move(out));
        }
        return table;
    }

    const auto key_names = spec.keys();
    std::vector<std::size_t> keys;
    for (const auto& k : key_names) {
        keys.push_back(require_attribute(source, k));
        table.columns.push_back(key_column(source.attributes[keys.back()]));
    }
    std::vector<std::optional<std::size_t>> measure_idx;
    for (const auto& m : spec.measures) {
        if (m.attribute.empty()) {
            if (m.aggregate != Aggregate::Count) throw ExecutionError("only count applies to records");
            measure_idx.push_back(std::nullopt);
            table.columns.push_back({m.column(), DataType::Numeric, Role::Measure, m.aggregate, std::nullopt});
            continue;
        }
        const auto idx = require_attribute(source, m.attribute);
        const auto& a = source.attributes[idx];
        const bool numeric_agg = m.aggregate == Aggregate::Sum || m.aggregate == Aggregate::Average ||
                                 m.aggregate == Aggregate::Median;
        if (numeric_agg && a.data_type != DataType::Numeric) {
            throw ExecutionError(fmt::format("cannot take {} of non-numeric attribute '{}'", to_string(m.aggregate),
                                             a.name));
        }
        measure_idx.push_back(idx);
        std::optional<std::string> unit = numeric_agg ? a.unit_semantics : std::nullopt;
        table.columns.push_back({m.column(), DataType::Numeric, Role::Measure, m.aggregate, unit});
    }

    const bool temporal = spec.temporal_axis.has_value();
    std::map<std::vector<std::string>, std::vector<Accumulator>, KeyLess> groups;
    for (const auto* row : rows) {
        std::vector<std::string> key;
        bool ok = true;
        for (std::size_t k = 0; k < keys.size() && ok; ++k) {
            const auto& cell = (*row)[keys[k]];
            if (k == 0 && temporal) {
                auto y = year_of(cell);
                ok = y.has_value();
                if (ok) key.push_back(std::to_string(*y));
            } else {
                auto v = text::trim(cell);
                ok = !v.empty();
                key.emplace_back(v);
            }
        }
        if (!ok) continue;
        auto& accs = groups[key];
        accs.resize(measure_idx.size());
        for (std::size_t m = 0; m < measure_idx.size(); ++m) {
            auto& acc = accs[m];
            if (!measure_idx[m]) {
                ++acc.count;
                continue;
            }
            const auto& cell = (*row)[*measure_idx[m]];
            if (text::is_blank(cell)) continue;
            ++acc.count;
            if (spec.measures[m].aggregate == Aggregate::DistinctCount) {
                acc.distinct.insert(text::to_lower(text::trim(cell)));
            } else if (auto v = text::parse_number(cell)) {
                acc.values.push_back(*v);
            }
        }
    }
    if (keys.empty() && groups.empty()) groups[{}].resize(measure_idx.size());

    for (auto& [key, accs] : groups) {
        std::vector<Cell> out(key.begin(), key.end());
        bool complete = true;
        for (std::size_t m = 0; m < accs.size(); ++m) {
            auto v = finalize(spec.measures[m].aggregate, accs[m]);
            if (!v) {
                complete = false;
                break;
            }
            out.emplace_back(*v);
        }
        if (complete) table.rows.push_back(std::move(out));
    }

    if (spec.limit && !spec.measures.empty()) {
        const auto col = keys.size();
        const bool top = spec.limit->top;
        std::stable_sort(table.rows.begin(), table.rows.end(), [&](const auto& a, const auto& b) {
            const double va = std::get<double>(a[col]);
            const double vb = std::get<double>(b[col]);
            return top ? va > vb : va < vb;
        });
        if (table.rows.size() > spec.limit->n) table.rows.resize(spec.limit->n);
    }
    return table;
}

}  // namespace hsearch::qa
