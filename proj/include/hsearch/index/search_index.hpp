#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/index/analyzer.hpp"

namespace hsearch::index {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;

    /// Throws ArgumentError unless k1 in [1.2, 2.0] and b in [0, 1].
    void validate() const;
    bool operator==(const Bm25Params&) const = default;
};

struct Field {
    std::string name;
    std::string text;
    bool indexed = true;  // stored-only fields are returned but never searched

    bool operator==(const Field&) const = default;
};

struct Document {
    std::string id;
    std::vector<Field> fields;

    const Field* field(std::string_view name) const;
    bool operator==(const Document&) const = default;
};

struct Posting {
    std::uint32_t doc;  // ordinal; ordinals follow ascending id order
    std::uint32_t tf;
    bool operator==(const Posting&) const = default;
};

struct ScoredDoc {
    std::string id;
    double raw_score = 0.0;
    double norm_score = 0.0;
};

struct RankedResults {
    std::vector<ScoredDoc> entries;

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
    std::vector<std::string> ids() const;
};

/// Inverted index over one repository. Immutable once built.
class SearchIndex {
  public:
    SearchIndex() = default;

    /// Throws BuildError on duplicate ids.
    static SearchIndex build(std::vector<Document> documents, Bm25Params params, AnalyzerSettings analyzer);

    /// Documents with at least one indexed token.
    std::size_t doc_count() const { return doc_cnt_; }
    std::size_t size() const { return docs_.size(); }
    double avgdl() const { return avgdl_; }
    const Bm25Params& params() const { return params_; }
    const AnalyzerSettings& analyzer() const { return analyzer_; }

    std::optional<std::uint32_t> ordinal(std::string_view id) const;
    const Document& document(std::uint32_t ordinal) const { return docs_.at(ordinal); }
    /// Throws LookupError for an unknown id.
    const Document& document(std::string_view id) const;
    std::uint32_t doc_length(std::uint32_t ordinal) const { return doc_len_.at(ordinal); }
    std::uint32_t term_frequency(std::uint32_t ordinal, const std::string& term) const;
    std::span<const Posting> postings(const std::string& term) const;
    std::size_t document_frequency(const std::string& term) const { return postings(term).size(); }
    const std::vector<Document>& documents() const { return docs_; }

    TokenSet encode_query(std::string_view text) const { return encode(text, analyzer_, Side::Query); }

    /// Indexed terms a query matches: exact terms plus, for unigrams and when
    /// fuzzy matching is on, every indexed unigram within the normalized
    /// edit-distance threshold. Sorted and deduplicated.
    std::vector<std::string> resolve_terms(const TokenSet& query) const;

    nlohmann::json to_json() const;
    static SearchIndex from_json(const nlohmann::json& j);
    /// Deterministic serialization: identical input yields identical bytes.
    std::string serialize() const;
    void save(const std::filesystem::path& path) const;
    static SearchIndex load(const std::filesystem::path& path);

  private:
    void finalize();

    std::vector<Document> docs_;
    std::unordered_map<std::string, std::uint32_t> ordinals_;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
    std::vector<std::unordered_map<std::string, std::uint32_t>> doc_terms_;
    std::vector<std::uint32_t> doc_len_;
    std::vector<std::vector<std::string>> unigrams_by_length_;
    std::size_t doc_cnt_ = 0;
    double avgdl_ = 0.0;
    Bm25Params params_;
    AnalyzerSettings analyzer_;
};

/// ln(1 + (docCnt - df + 0.5) / (df + 0.5)); ArgumentError if df > docCnt.
double idf(std::size_t doc_cnt, std::size_t df);

/// Up to `r` ids sharing at least one token with the query, largest overlap
/// first, ties by ascending id. ArgumentError if r == 0.
std::vector<std::string> retrieve(const SearchIndex& index, const TokenSet& query, std::size_t r);

/// BM25 of one document over the distinct resolved query terms.
/// LookupError for an unknown id.
double bm25_score(const SearchIndex& index, const TokenSet& query, std::string_view doc_id);

/// Descending raw score, ties by ascending id; norm = raw / top raw.
RankedResults rank(const SearchIndex& index, const TokenSet& query, std::span<const std::string> candidates);

/// encode -> retrieve (all overlapping docs) -> rank -> truncate.
RankedResults search(const SearchIndex& index, std::string_view text, std::size_t limit);

}  // namespace hsearch::index
