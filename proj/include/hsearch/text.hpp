#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hsearch::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

/// Splits free text into lowercase word tokens. Letters, digits and bytes of
/// multi-byte UTF-8 sequences form words; a '.' or ',' between two digits
/// stays inside a number; apostrophes are dropped ("women's" -> "womens").
std::vector<std::string> split_words(std::string_view s);

/// Crude English singularization used for lexicon lookups.
std::string singular(std::string_view word);

std::string join(std::span<const std::string> parts, std::string_view sep);

/// Splits on a single-character delimiter, trimming each piece and dropping
/// empty pieces.
std::vector<std::string> split_list(std::string_view s, char delim);

/// Parses a decimal number, tolerating a leading currency sign and thousands
/// separators ("$1,200.50"). Returns nullopt for anything else.
std::optional<double> parse_number(std::string_view s);

bool is_blank(std::string_view s);

/// Formats a value with at most two decimals, trailing zeros trimmed.
std::string format_number(double v);

}  // namespace hsearch::text
