#include "hsearch/parser/types.hpp"

#include <algorithm>

namespace hsearch::parser {

std::string_view to_string(IntentKind k) {
    switch (k) {
        case IntentKind::Grouping: return "Grouping";
        case IntentKind::Aggregation: return "Aggregation";
        case IntentKind::Correlation: return "Correlation";
        case IntentKind::FilterLimit: return "FilterLimit";
        case IntentKind::Temporal: return "Temporal";
        case IntentKind::Geospatial: return "Geospatial";
    }
    return "Grouping";
}

std::optional<IntentKind> parse_intent_kind(std::string_view s) {
    for (auto k : {IntentKind::Grouping, IntentKind::Aggregation, IntentKind::Correlation,
                   IntentKind::FilterLimit, IntentKind::Temporal, IntentKind::Geospatial}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string_view to_string(MatchKind k) {
    switch (k) {
        case MatchKind::Exact: return "exact";
        case MatchKind::Synonym: return "synonym";
        case MatchKind::Fuzzy: return "fuzzy";
        case MatchKind::Related: return "related";
        case MatchKind::Taxonomy: return "taxonomy";
    }
    return "exact";
}

bool ParsedQuery::has_intent(IntentKind k) const {
    return std::any_of(intents.begin(), intents.end(), [&](const Intent& i) { return i.kind == k; });
}

}  // namespace hsearch::parser
