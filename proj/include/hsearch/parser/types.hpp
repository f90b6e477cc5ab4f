#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsearch/corpus/types.hpp"
#include "hsearch/index/analyzer.hpp"

namespace hsearch::parser {

enum class IntentKind { Grouping, Aggregation, Correlation, FilterLimit, Temporal, Geospatial };
std::string_view to_string(IntentKind k);
std::optional<IntentKind> parse_intent_kind(std::string_view s);

enum class MatchKind { Exact, Synonym, Fuzzy, Related, Taxonomy };
std::string_view to_string(MatchKind k);

/// An attribute of a data source, or one of its values when `value` is set.
struct FieldRef {
    std::string source_id;
    std::string attribute;
    std::optional<std::string> value;  // original spelling of the cell

    auto operator<=>(const FieldRef&) const = default;
};

struct FieldMatch {
    std::string ngram;
    FieldRef ref;
    MatchKind kind = MatchKind::Exact;
    double score = 1.0;
    corpus::DataType data_type = corpus::DataType::Text;
    corpus::Role role = corpus::Role::Dimension;
};

struct Argument {
    enum class Kind { Attribute, Value, Number };
    Kind kind = Kind::Attribute;
    std::string text;                         // query words covered
    std::vector<FieldRef> refs;               // bindings across sources
    std::optional<double> number;
    std::optional<std::string> geo_category;  // set for known place names
};

struct Intent {
    IntentKind kind = IntentKind::Grouping;
    std::optional<std::string> op;  // canonical lexicon operator
    std::vector<Argument> args;
    std::size_t begin = 0;  // word span [begin, end)
    std::size_t end = 0;
};

struct ParsedQuery {
    std::string raw;
    index::TokenSet tokens;
    std::vector<std::string> words;  // lowercase, stopwords kept
    std::vector<Intent> intents;
    std::vector<FieldMatch> field_matches;

    bool has_intent(IntentKind k) const;
};

}  // namespace hsearch::parser
