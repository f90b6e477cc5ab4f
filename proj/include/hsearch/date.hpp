#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace hsearch {

/// Proleptic Gregorian calendar date.
struct CivilDate {
    int year = 1970;
    unsigned month = 1;
    unsigned day = 1;

    auto operator<=>(const CivilDate&) const = default;

    bool valid() const;
    std::string iso() const;            // YYYY-MM-DD
    std::string month_bucket() const;   // YYYY-MM

    /// Accepts YYYY-MM-DD, YYYY/MM/DD, YYYY-MM-DDThh:mm[:ss], and MM/DD/YYYY.
    static std::optional<CivilDate> parse(std::string_view s);

    /// Accepts YYYY-MM (first day of month) or a full date.
    static std::optional<CivilDate> parse_range_start(std::string_view s);
    /// Accepts YYYY-MM (last day of month) or a full date.
    static std::optional<CivilDate> parse_range_end(std::string_view s);
};

/// Year of a temporal cell: a bare year ("2019"), a date, or YYYY-MM.
std::optional<int> year_of(std::string_view cell);

/// True if the cell looks like a date or a year-month.
bool looks_like_date(std::string_view cell);

}  // namespace hsearch
