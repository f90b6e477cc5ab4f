#include "hsearch/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace hsearch::text {

namespace {

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string_view trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> words;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (is_word_byte(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            continue;
        }
        if ((c == '.' || c == ',') && !cur.empty() && is_digit(cur.back()) && i + 1 < s.size() &&
            is_digit(s[i + 1])) {
            // thousands separators are dropped, decimal points kept
            if (c == '.') cur.push_back('.');
            continue;
        }
        if (c == '\'' && !cur.empty()) continue;
        if (!cur.empty()) {
            words.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    return words;
}

std::string singular(std::string_view w) {
    std::string word(w);
    auto ends_with = [&](std::string_view suf) {
        return word.size() > suf.size() + 1 && word.ends_with(suf);
    };
    static const std::set<std::string, std::less<>> kIeNouns = {"movies", "cookies", "calories", "zombies",
                                                                 "pies", "ties", "lies", "brownies"};
    if (kIeNouns.count(word)) return word.substr(0, word.size() - 1);
    if (word == "series" || word == "species") return word;
    if (ends_with("ies")) return word.substr(0, word.size() - 3) + "y";
    if (ends_with("sses") || ends_with("shes") || ends_with("ches") || ends_with("xes") ||
        ends_with("zes")) {
        return word.substr(0, word.size() - 2);
    }
    if (ends_with("ss") || ends_with("us") || ends_with("is")) return word;
    if (ends_with("s")) return word.substr(0, word.size() - 1);
    return word;
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

std::vector<std::string> split_list(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(delim, start);
        if (end == std::string_view::npos) end = s.size();
        auto piece = trim(s.substr(start, end - start));
        if (!piece.empty()) out.emplace_back(piece);
        start = end + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    std::string buf;
    buf.reserve(s.size());
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        if (s[0] == '-') buf.push_back('-');
        ++i;
    }
    if (i < s.size() && s[i] == '$') ++i;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (is_digit(c)) {
            buf.push_back(c);
            seen_digit = true;
        } else if (c == ',' && seen_digit && !seen_dot && i + 1 < s.size() && is_digit(s[i + 1])) {
            continue;
        } else if (c == '.' && !seen_dot) {
            buf.push_back('.');
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            buf.append(s.substr(i));
            break;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit) return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{} || ptr != buf.data() + buf.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

bool is_blank(std::string_view s) {
    return trim(s).empty();
}

std::string format_number(double v) {
    if (std::abs(v - std::round(v)) < 1e-9) return fmt::format("{}", static_cast<long long>(std::llround(v)));
    std::string out = fmt::format("{:.2f}", v);
    while (!out.empty() && out.back() == '0') out.pop_back();
    if (!out.empty() && out.back() == '.') out.pop_back();
    if (out == "-0") out = "0";
    return out;
}

}  // namespace hsearch::text
