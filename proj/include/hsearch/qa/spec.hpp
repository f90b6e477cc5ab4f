#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/corpus/types.hpp"
#include "hsearch/parser/types.hpp"

namespace hsearch::qa {

enum class Aggregate { Sum, Average, Median, Count, DistinctCount };
std::string_view to_string(Aggregate a);
std::optional<Aggregate> parse_aggregate(std::string_view s);

/// Measure column name used when counting rows.
inline constexpr std::string_view kCountOfRecords = "Count of Records";

struct MeasureSpec {
    std::string attribute;  // empty: count of records
    Aggregate aggregate = Aggregate::Sum;

    /// Column name in the result table.
    std::string column() const { return attribute.empty() ? std::string(kCountOfRecords) : attribute; }
    bool operator==(const MeasureSpec&) const = default;
};

enum class FilterOp { Equals, AtLeast, AtMost, GreaterThan, LessThan, Between, YearEquals };
std::string_view to_string(FilterOp op);

struct Filter {
    std::string attribute;
    FilterOp op = FilterOp::Equals;
    std::vector<std::string> values;  // Equals: any of these (case-insensitive)
    double low = 0.0;                 // numeric ops; Between uses [low, high]
    double high = 0.0;
    bool operator==(const Filter&) const = default;
};

struct Limit {
    bool top = true;
    std::size_t n = 10;
    bool operator==(const Limit&) const = default;
};

struct AnalyticalSpec {
    std::string source_id;
    std::vector<std::string> group_bys;
    std::vector<MeasureSpec> measures;
    std::vector<Filter> filters;
    std::optional<Limit> limit;
    std::optional<std::pair<std::string, std::string>> correlation_pair;
    std::optional<std::string> temporal_axis;  // binned by year
    std::optional<std::string> geo_axis;

    /// Grouping keys in table order: temporal axis, geo axis, then groupBys.
    std::vector<std::string> keys() const;
    nlohmann::json to_json() const;
};

/// Binds a parsed query to one source. Throws SpecUnresolvable when nothing
/// in the query binds to the source.
AnalyticalSpec resolve_spec(const parser::ParsedQuery& parsed, const corpus::DataSource& source);

using Cell = std::variant<std::string, double>;

struct ResultColumn {
    std::string name;
    corpus::DataType data_type = corpus::DataType::Text;
    corpus::Role role = corpus::Role::Dimension;
    std::optional<Aggregate> aggregate;
    std::optional<std::string> unit;
};

struct ResultTable {
    std::vector<ResultColumn> columns;
    std::vector<std::vector<Cell>> rows;

    std::optional<std::size_t> column_index(std::string_view name) const;
    double number(std::size_t row, std::size_t col) const;
    std::string label(std::size_t row, std::size_t col) const;
    nlohmann::json rows_json() const;
};

/// filter -> group/aggregate -> sort by keys -> limit. A correlation pair
/// yields the raw (x, y) pairs instead. Throws ExecutionError on a filter
/// that does not fit the column type.
ResultTable execute_spec(const AnalyticalSpec& spec, const corpus::DataSource& source);

}  // namespace hsearch::qa
