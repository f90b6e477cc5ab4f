#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hsearch/corpus/gazetteer.hpp"
#include "hsearch/corpus/lexicon.hpp"
#include "hsearch/corpus/types.hpp"
#include "hsearch/index/analyzer.hpp"
#include "hsearch/parser/grammar.hpp"
#include "hsearch/parser/types.hpp"

namespace hsearch::parser {

struct MatchSettings {
    double fuzzy_threshold = 0.2;      // max normalized edit distance
    double taxonomy_threshold = 0.85;  // min Wu-Palmer similarity
    std::size_t max_values = 10000;    // distinct dimension values per source
};

/// Matching view of one data source: normalized attribute names and the
/// distinct values of its dimension columns.
class SourceProfile {
  public:
    struct ValueEntry {
        std::string normalized;
        std::string original;
        std::size_t attribute;
    };

    /// Names, synonyms and values are normalized like query n-grams:
    /// lowercase words with `stopwords` removed.
    SourceProfile(const corpus::DataSource& source, const MatchSettings& settings,
                  const std::set<std::string>& stopwords = {});

    const corpus::DataSource& source() const { return *source_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::string>& synonyms(std::size_t attribute) const { return synonyms_.at(attribute); }
    const std::vector<std::string>& related(std::size_t attribute) const { return related_.at(attribute); }
    /// Values whose normalized length is exactly `len`.
    std::span<const ValueEntry> values_of_length(std::size_t len) const;
    std::size_t value_count() const { return value_count_; }

  private:
    const corpus::DataSource* source_;
    std::vector<std::string> names_;
    std::vector<std::vector<std::string>> synonyms_;
    std::vector<std::vector<std::string>> related_;
    std::vector<std::vector<ValueEntry>> values_by_length_;
    std::size_t value_count_ = 0;
};

/// Best match per (n-gram, attribute) among the attribute's name, synonyms,
/// related terms, taxonomy neighbours and dimension values.
std::vector<FieldMatch> match_fields(const index::TokenSet& ngrams, const SourceProfile& profile,
                                     const corpus::Taxonomy& taxonomy, const MatchSettings& settings = {});
std::vector<FieldMatch> match_fields(const index::TokenSet& ngrams, const corpus::DataSource& source,
                                     const corpus::Taxonomy& taxonomy, const MatchSettings& settings = {});

struct ParserContext {
    const Grammar& grammar;
    const corpus::Lexicon& lexicon;
    const corpus::Gazetteer& gazetteer;
    const index::AnalyzerSettings& analyzer;
    MatchSettings match;
};

/// Lexical pass: greedy longest-span readings over the raw word sequence.
std::vector<Terminal> classify_terminals(std::span<const std::string> words, const ParserContext& ctx,
                                         std::span<const FieldMatch> field_matches);

/// Query parser over a fixed set of sources. Stateless after construction.
class QueryParser {
  public:
    QueryParser(ParserContext ctx, std::span<const corpus::DataSource> sources);

    ParsedQuery parse(std::string_view query) const;
    const std::vector<SourceProfile>& profiles() const { return profiles_; }
    const ParserContext& context() const { return ctx_; }

  private:
    ParserContext ctx_;
    std::vector<SourceProfile> profiles_;
};

}  // namespace hsearch::parser
