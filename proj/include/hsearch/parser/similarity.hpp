#pragma once

#include <cstddef>
#include <string_view>

#include "hsearch/corpus/lexicon.hpp"

namespace hsearch::parser {

/// Unit-cost insert/delete/substitute distance over bytes.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Edit distance divided by max(|a|, |b|); 0 when both are empty.
double normalized_levenshtein(std::string_view a, std::string_view b);

/// True when normalized_levenshtein(a, b) <= threshold, with a cheap length
/// check first.
bool within_distance(std::string_view a, std::string_view b, double threshold);

/// 2 * depth(lcs) / (depth(a) + depth(b)), lcs being the deepest common
/// ancestor. Concepts in disjoint trees score 0. LookupError if either
/// concept is missing.
double wu_palmer(std::string_view a, std::string_view b, const corpus::Taxonomy& taxonomy);

}  // namespace hsearch::parser
