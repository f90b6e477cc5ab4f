#include "hsearch/classifier/classifier.hpp"

#include <set>

namespace hsearch::classifier {

nlohmann::json SearchPlan::to_json() const {
    nlohmann::json sources = nlohmann::json::array();
    for (const auto& s : ranked_sources) {
        sources.push_back({{"sourceId", s.source_id},
                           {"fieldMatchCount", s.field_match_count},
                           {"rawScore", s.raw_score},
                           {"normScore", s.norm_score}});
    }
    return {{"hasAnalyticalIntent", has_analytical_intent},
            {"hasDSMatch", has_ds_match},
            {"invokeQA", invoke_qa},
            {"invokeGeneral", true},
            {"thresholds", {{"fieldMatch", thresholds.field_match}, {"normMatch", thresholds.norm_match}}},
            {"rankedSources", std::move(sources)}};
}

std::vector<DataSourceScore> normalize_scores(std::vector<DataSourceScore> scores) {
    double total = 0.0;
    for (const auto& s : scores) total += s.raw_score;
    for (auto& s : scores) s.norm_score = total > 0.0 ? s.raw_score / total : 0.0;
    return scores;
}

std::size_t field_match_count(const parser::ParsedQuery& parsed, std::string_view source_id) {
    std::set<parser::FieldRef> refs;
    for (const auto& m : parsed.field_matches) {
        if (m.ref.source_id == source_id) refs.insert(m.ref);
    }
    return refs.size();
}

SearchPlan classify(const parser::ParsedQuery& parsed, const index::SearchIndex& ds_index,
                    const Thresholds& thresholds) {
    SearchPlan plan;
    plan.thresholds = thresholds;
    plan.has_analytical_intent = !parsed.intents.empty();

    if (ds_index.size() > 0 && !parsed.tokens.empty()) {
        auto candidates = index::retrieve(ds_index, parsed.tokens, ds_index.size());
        auto ranked = index::rank(ds_index, parsed.tokens, candidates);
        std::vector<DataSourceScore> scores;
        for (const auto& e : ranked.entries) {
            scores.push_back({e.id, field_match_count(parsed, e.id), e.raw_score, 0.0});
        }
        plan.ranked_sources = normalize_scores(std::move(scores));
    }

    if (const auto* top = plan.top()) {
        plan.has_ds_match = top->field_match_count >= thresholds.field_match && top->norm_score >= thresholds.norm_match;
    }
    plan.invoke_qa = plan.has_analytical_intent && plan.has_ds_match;
    return plan;
}

}  // namespace hsearch::classifier
