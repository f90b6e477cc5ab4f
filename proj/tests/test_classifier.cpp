#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "hsearch/classifier/classifier.hpp"
#include "support.hpp"

using namespace hsearch;
using namespace hsearch::classifier;
namespace ts = testing_support;

namespace {

SearchPlan route(const std::string& q, Thresholds t = {}) {
    const auto& state = *ts::bundled_state();
    return classify(state.parser->parse(q), state.ds_index, t);
}

}  // namespace

TEST_CASE("normalize_scores is share of total") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<DataSourceScore> in(1 + trial % 9);
        double total = 0;
        for (std::size_t i = 0; i < in.size(); ++i) {
            in[i].source_id = "s" + std::to_string(i);
            in[i].raw_score = u(rng);
            total += in[i].raw_score;
        }
        auto out = normalize_scores(in);
        REQUIRE(out.size() == in.size());
        double sum = 0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            CHECK(out[i].source_id == in[i].source_id);
            CHECK(out[i].norm_score == doctest::Approx(in[i].raw_score / total).epsilon(1e-12));
            sum += out[i].norm_score;
        }
        CHECK(sum == doctest::Approx(1.0));
    }
    std::vector<DataSourceScore> zeros(3);
    for (const auto& s : normalize_scores(zeros)) CHECK(s.norm_score == 0.0);
    CHECK(normalize_scores({}).empty());
}

TEST_CASE("field_match_count counts distinct refs") {
    const auto& state = *ts::bundled_state();
    auto parsed = state.parser->parse("average price by neighborhood");
    CHECK(field_match_count(parsed, "housing") >= 2);
    CHECK(field_match_count(parsed, "no_such_source") == 0);
}

TEST_CASE("routing suite") {
    struct Case {
        const char* query;
        bool invoke;
        const char* source;
    };
    const Case cases[] = {
        {"How has the trend of movie budgets changed over time for different genres?", true, "movies"},
        {"elections", false, nullptr},
        {"treemap stocks", false, nullptr},
        {"housing prices usa", true, "housing"},
        {"sales by region", true, "sales"},
        {"average price by neighborhood", true, "housing"},
        {"covid cases in Canada", true, "covid_canada"},
        {"top 5 genres by gross", true, "movies"},
        {"correlate budget and gross", true, "movies"},
        {"world population", false, nullptr},
        {"crime in usa", false, nullptr},
        {"bar and line charts of covid", false, nullptr},
    };
    for (const auto& c : cases) {
        CAPTURE(c.query);
        auto plan = route(c.query);
        CHECK(plan.invoke_qa == c.invoke);
        if (c.source) {
            REQUIRE(plan.top());
            CHECK(plan.top()->source_id == c.source);
        }
        if (plan.invoke_qa) {
            CHECK(plan.has_analytical_intent);
            CHECK(plan.top()->field_match_count >= plan.thresholds.field_match);
            CHECK(plan.top()->norm_score >= plan.thresholds.norm_match);
        }
    }
}

TEST_CASE("thresholds are inclusive") {
    auto plan = route("sales by region");
    REQUIRE(plan.top());
    const auto* top = plan.top();
    Thresholds exact{top->field_match_count, top->norm_score};
    CHECK(route("sales by region", exact).invoke_qa);
    Thresholds above{top->field_match_count + 1, top->norm_score};
    CHECK_FALSE(route("sales by region", above).invoke_qa);
    Thresholds norm_above{top->field_match_count, std::nextafter(top->norm_score, 2.0)};
    CHECK_FALSE(route("sales by region", norm_above).invoke_qa);
}

TEST_CASE("ranked sources are descending and normalized") {
    auto plan = route("housing prices usa");
    double sum = 0;
    for (std::size_t i = 0; i < plan.ranked_sources.size(); ++i) {
        if (i) CHECK(plan.ranked_sources[i - 1].raw_score >= plan.ranked_sources[i].raw_score);
        sum += plan.ranked_sources[i].norm_score;
    }
    CHECK(sum == doctest::Approx(1.0));
    auto j = plan.to_json();
    CHECK(j.contains("invokeQA"));
}

TEST_CASE("no intent never routes to Q&A") {
    auto plan = route("housing");
    CHECK_FALSE(plan.has_analytical_intent);
    CHECK_FALSE(plan.invoke_qa);
}
