#include "hsearch/date.hpp"

#include <charconv>
#include <chrono>

#include <fmt/format.h>

#include "hsearch/text.hpp"

namespace hsearch {

namespace {

std::optional<int> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool all_digits(std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

unsigned last_day(int year, unsigned month) {
    using namespace std::chrono;
    return static_cast<unsigned>(
        year_month_day_last{std::chrono::year{year}, month_day_last{std::chrono::month{month}}}.day());
}

std::optional<CivilDate> make(std::string_view y, std::string_view m, std::string_view d) {
    if (y.size() != 4 || !all_digits(y) || m.empty() || m.size() > 2 || !all_digits(m) ||
        d.empty() || d.size() > 2 || !all_digits(d)) {
        return std::nullopt;
    }
    CivilDate date{*parse_int(y), static_cast<unsigned>(*parse_int(m)),
                   static_cast<unsigned>(*parse_int(d))};
    if (!date.valid()) return std::nullopt;
    return date;
}

// "YYYY-MM" -> (year, month)
std::optional<std::pair<int, unsigned>> parse_year_month(std::string_view s) {
    if (s.size() != 7 || s[4] != '-' || !all_digits(s.substr(0, 4)) || !all_digits(s.substr(5))) {
        return std::nullopt;
    }
    int y = *parse_int(s.substr(0, 4));
    int m = *parse_int(s.substr(5));
    if (m < 1 || m > 12) return std::nullopt;
    return std::pair{y, static_cast<unsigned>(m)};
}

}  // namespace

bool CivilDate::valid() const {
    using namespace std::chrono;
    return year_month_day{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}}.ok();
}

std::string CivilDate::iso() const {
    return fmt::format("{:04d}-{:02d}-{:02d}", year, month, day);
}

std::string CivilDate::month_bucket() const {
    return fmt::format("{:04d}-{:02d}", year, month);
}

std::optional<CivilDate> CivilDate::parse(std::string_view s) {
    s = text::trim(s);
    if (s.size() >= 10 && (s[4] == '-' || s[4] == '/') && s[7] == s[4]) {
        if (s.size() > 10 && s[10] != 'T' && s[10] != ' ') return std::nullopt;
        return make(s.substr(0, 4), s.substr(5, 2), s.substr(8, 2));
    }
    // MM/DD/YYYY
    auto first = s.find('/');
    auto second = first == std::string_view::npos ? first : s.find('/', first + 1);
    if (second != std::string_view::npos && s.size() - second - 1 == 4) {
        return make(s.substr(second + 1), s.substr(0, first), s.substr(first + 1, second - first - 1));
    }
    return std::nullopt;
}

std::optional<CivilDate> CivilDate::parse_range_start(std::string_view s) {
    s = text::trim(s);
    if (auto ym = parse_year_month(s)) return CivilDate{ym->first, ym->second, 1};
    return parse(s);
}

std::optional<CivilDate> CivilDate::parse_range_end(std::string_view s) {
    s = text::trim(s);
    if (auto ym = parse_year_month(s)) {
        return CivilDate{ym->first, ym->second, last_day(ym->first, ym->second)};
    }
    return parse(s);
}

std::optional<int> year_of(std::string_view cell) {
    cell = text::trim(cell);
    if (cell.size() == 4 && all_digits(cell)) return parse_int(cell);
    if (auto d = CivilDate::parse(cell)) return d->year;
    if (auto ym = parse_year_month(cell)) return ym->first;
    return std::nullopt;
}

bool looks_like_date(std::string_view cell) {
    cell = text::trim(cell);
    return CivilDate::parse(cell).has_value() || parse_year_month(cell).has_value();
}

}  // namespace hsearch
