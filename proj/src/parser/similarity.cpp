#include "hsearch/parser/similarity.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace hsearch::parser {

std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double normalized_levenshtein(std::string_view a, std::string_view b) {
    const auto longest = std::max(a.size(), b.size());
    if (longest == 0) return 0.0;
    return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

bool within_distance(std::string_view a, std::string_view b, double threshold) {
    const auto longest = static_cast<double>(std::max(a.size(), b.size()));
    const auto diff = static_cast<double>(a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
    if (longest > 0 && diff / longest > threshold) return false;
    return normalized_levenshtein(a, b) <= threshold;
}

double wu_palmer(std::string_view a, std::string_view b, const corpus::Taxonomy& taxonomy) {
    const int da = taxonomy.depth(a);
    const int db = taxonomy.depth(b);

    std::vector<std::string> chain_a{std::string(a)};
    for (auto& p : taxonomy.ancestors(a, da)) chain_a.push_back(std::move(p));

    std::string cur(b);
    while (true) {
        if (std::find(chain_a.begin(), chain_a.end(), cur) != chain_a.end()) {
            return 2.0 * taxonomy.depth(cur) / static_cast<double>(da + db);
        }
        auto parent = taxonomy.parent(cur);
        if (!parent) return 0.0;
        cur = *parent;
    }
}

}  // namespace hsearch::parser
