#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hsearch::index {

/// Token pipeline configuration. Serialized with every persisted index so a
/// reloaded index analyzes queries exactly as it analyzed documents.
struct AnalyzerSettings {
    std::set<std::string> stopwords;
    std::map<std::string, std::vector<std::string>> synonyms;
    int max_ngram = 3;
    bool expand_synonyms = true;
    bool fuzzy = true;
    double fuzzy_threshold = 0.2;

    nlohmann::json to_json() const;
    static AnalyzerSettings from_json(const nlohmann::json& j);
    bool operator==(const AnalyzerSettings&) const = default;
};

/// One stopword per line; '#' starts a comment.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

/// Multiset of lowercase tokens (unigrams through max_ngram-grams, plus
/// index-side synonyms). `length` counts unigram positions only, so n-grams
/// and synonyms stacked on a position do not inflate document length.
struct TokenSet {
    std::map<std::string, std::uint32_t> counts;
    std::uint32_t length = 0;
    std::vector<std::string> unigrams;  // surviving words in order

    bool empty() const { return counts.empty(); }
    std::size_t distinct() const { return counts.size(); }
    bool contains(const std::string& token) const { return counts.count(token) != 0; }
    std::uint32_t count(const std::string& token) const;
    void merge(const TokenSet& other);
    bool operator==(const TokenSet&) const = default;
};

enum class Side { Index, Query };

/// Lowercases, drops stopwords and conjunctions, emits n-grams over the
/// remaining word sequence and, on the index side, lexicon synonyms of each
/// unigram.
TokenSet encode(std::string_view text, const AnalyzerSettings& settings, Side side = Side::Query);

/// Encodes each field separately; n-grams never span a field boundary.
TokenSet encode_fields(std::span<const std::string> texts, const AnalyzerSettings& settings,
                       Side side = Side::Index);

}  // namespace hsearch::index
