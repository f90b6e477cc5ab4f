#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hsearch/error.hpp"
#include "hsearch/vizsearch/vizsearch.hpp"
#include "support.hpp"

using namespace hsearch;
using namespace hsearch::vizsearch;
namespace ts = testing_support;

namespace {

std::set<std::string> detect(const std::string& q) {
    const auto& st = *ts::bundled_state();
    return detect_chart_types(st.viz_index.encode_query(q), st.chart_types);
}

bool typed_as(const corpus::VizDocument& d, const std::set<std::string>& types) {
    return std::any_of(d.chart_types.begin(), d.chart_types.end(), [&](const auto& t) { return types.count(t); });
}

}  // namespace

TEST_CASE("chart type detection") {
    CHECK(detect("treemap stocks") == std::set<std::string>{"treemap"});
    CHECK(detect("bar and line charts of covid") == std::set<std::string>{"bar", "line"});
    CHECK(detect("maps of crime").count("map") == 1);
    CHECK(detect("square chart of budgets").count("treemap") == 1);
    CHECK(detect("scater plot").count("scatterplot") == 1);
    CHECK(detect("elections").empty());
    CHECK(detect("").empty());
}

TEST_CASE("chart type lexicon validation") {
    CHECK_THROWS_AS(ChartTypeLexicon::from_json(nlohmann::json::parse(R"({"bar": {"concepts": "bars"}})")),
                    SchemaError);
    auto lex = ChartTypeLexicon::from_json(nlohmann::json::parse(R"({"bar": {"concepts": ["Bar Chart", "the bars"]}})"),
                                           {"the"});
    CHECK(lex.entries().at("bar").concepts == std::vector<std::string>{"bar", "bar chart", "bars"});
}

TEST_CASE("exploratory search is plain BM25 over the visualization index") {
    const auto& st = *ts::bundled_state();
    for (const char* q : {"elections", "covid cases", "world population growth"}) {
        auto a = exploratory_search(q, st.viz_index, 25);
        auto b = index::search(st.viz_index, q, 25);
        CHECK(a.ids() == b.ids());
    }
    auto r = exploratory_search("elections", st.viz_index);
    REQUIRE_FALSE(r.empty());
    CHECK(r.size() <= kDefaultLimit);
    CHECK(r.entries[0].norm_score == 1.0);
}

TEST_CASE("design search lifts every document of the detected type") {
    const auto& st = *ts::bundled_state();
    auto res = design_search("treemap stocks", st.viz_index, st.chart_types, {1000, false, 0.2});
    REQUIRE(res.design);
    CHECK(res.chart_types == std::set<std::string>{"treemap"});

    std::size_t treemaps = 0;
    for (const auto& d : st.catalog.documents()) treemaps += typed_as(d, res.chart_types);
    REQUIRE(res.results.size() >= treemaps);

    bool seen_other = false;
    for (const auto& e : res.results.entries) {
        const bool typed = typed_as(*st.catalog.find(e.id), res.chart_types);
        if (!typed) seen_other = true;
        CHECK_FALSE((typed && seen_other));
    }

    // Within the typed block, order follows the non-trigger words alone.
    auto content = index::search(st.viz_index, "stocks", 1000);
    std::map<std::string, double> score;
    for (const auto& e : content.entries) score[e.id] = e.raw_score;
    for (std::size_t i = 1; i < treemaps; ++i) {
        const auto& a = res.results.entries[i - 1].id;
        const auto& b = res.results.entries[i].id;
        CHECK(score[a] >= score[b]);
        if (score[a] == score[b]) CHECK(a < b);
    }
}

TEST_CASE("strict design search keeps only detected types") {
    const auto& st = *ts::bundled_state();
    auto res = design_search("bar and line charts of covid", st.viz_index, st.chart_types, {1000, true, 0.2});
    REQUIRE(res.design);
    for (const auto& e : res.results.entries) CHECK(typed_as(*st.catalog.find(e.id), res.chart_types));
    auto plain = design_search("elections", st.viz_index, st.chart_types);
    CHECK_FALSE(plain.design);
    CHECK(plain.results.ids() == exploratory_search("elections", st.viz_index).ids());
}

TEST_CASE("elections narrowed to late 2020") {
    const auto& st = *ts::bundled_state();
    auto res = exploratory_search("elections", st.viz_index, 1000);
    FacetState f;
    f.from = CivilDate::parse_range_start("2020-08");
    f.to = CivilDate::parse_range_end("2020-12");
    auto kept = apply_facets(res, st.catalog, f);
    REQUIRE_FALSE(kept.empty());
    for (const auto& e : kept.entries) {
        const auto& d = st.catalog.find(e.id)->created_date;
        CHECK(d.year == 2020);
        CHECK(d.month >= 8);
        CHECK(d.month <= 12);
    }
}

TEST_CASE("facet properties over random selections") {
    const auto& st = *ts::bundled_state();
    const auto& docs = st.catalog.documents();
    std::vector<std::string> authors;
    for (const auto& d : docs) authors.push_back(d.author_name);
    std::sort(authors.begin(), authors.end());
    authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
    const auto types = st.chart_types.ids();
    const std::vector<std::string> type_list(types.begin(), types.end());

    std::mt19937 rng(99);
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    auto pick = [&](const auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };

    for (int trial = 0; trial < 1000; ++trial) {
        index::RankedResults results;
        for (const auto& d : docs) {
            if (coin(0.1)) results.entries.push_back({d.id, 1.0, 1.0});
        }
        std::shuffle(results.entries.begin(), results.entries.end(), rng);

        FacetState f;
        if (coin(0.5)) {
            for (int k = 0; k < 3; ++k) f.authors.insert(pick(authors));
        }
        if (coin(0.5)) {
            for (int k = 0; k < 2; ++k) f.chart_types.insert(pick(type_list));
        }
        if (coin(0.4)) f.from = CivilDate{std::uniform_int_distribution<int>(2012, 2022)(rng), 1, 1};
        if (coin(0.4)) f.to = CivilDate{std::uniform_int_distribution<int>(2014, 2024)(rng), 12, 31};

        auto kept = apply_facets(results, st.catalog, f);
        CHECK(apply_facets(kept, st.catalog, f).ids() == kept.ids());

        // kept is an order-preserving subsequence with exactly the matching docs.
        std::size_t j = 0;
        for (const auto& e : results.entries) {
            const bool match = f.matches(*st.catalog.find(e.id));
            if (j < kept.size() && kept.entries[j].id == e.id) {
                CHECK(match);
                ++j;
            } else {
                CHECK_FALSE(match);
            }
        }
        CHECK(j == kept.size());

        auto summary = compute_facets(kept, st.catalog);
        std::size_t authors_total = 0, months_total = 0, types_total = 0, expected_types = 0;
        for (const auto& [_, n] : summary.author_counts) authors_total += n;
        for (const auto& [_, n] : summary.date_histogram) months_total += n;
        for (const auto& [_, n] : summary.chart_type_counts) types_total += n;
        for (const auto& e : kept.entries) {
            const auto& ct = st.catalog.find(e.id)->chart_types;
            expected_types += std::set<std::string>(ct.begin(), ct.end()).size();
        }
        CHECK(authors_total == kept.size());
        CHECK(months_total == kept.size());
        CHECK(types_total == expected_types);

        // Dropping a constraint never loses documents.
        FacetState wider = f;
        wider.from.reset();
        auto wide = apply_facets(results, st.catalog, wider);
        const auto wide_ids = wide.ids();
        const std::set<std::string> wide_set(wide_ids.begin(), wide_ids.end());
        for (const auto& id : kept.ids()) CHECK(wide_set.count(id) == 1);

        if (!f.authors.empty()) {
            FacetState one;
            one.authors = {*f.authors.begin()};
            for (const auto& e : apply_facets(results, st.catalog, one).entries) {
                CHECK(st.catalog.find(e.id)->author_name == *f.authors.begin());
            }
        }
    }
}

TEST_CASE("empty facet state is the identity") {
    const auto& st = *ts::bundled_state();
    auto res = exploratory_search("covid", st.viz_index, 100);
    FacetState none;
    CHECK(none.empty());
    CHECK(apply_facets(res, st.catalog, none).ids() == res.ids());
}

TEST_CASE("viz documents index their chart types") {
    const auto& st = *ts::bundled_state();
    auto res = exploratory_search("sankey", st.viz_index, 1000);
    REQUIRE_FALSE(res.empty());
    std::size_t sankeys = 0;
    for (const auto& d : st.catalog.documents()) sankeys += typed_as(d, {"sankey"});
    CHECK(res.size() >= sankeys);
}
