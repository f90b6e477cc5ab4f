#include <doctest.h>

#include <algorithm>
#include <random>

#include "hsearch/error.hpp"
#include "hsearch/parser/grammar.hpp"
#include "hsearch/parser/parser.hpp"
#include "hsearch/parser/similarity.hpp"
#include "support.hpp"

using namespace hsearch;
using namespace hsearch::parser;
namespace ts = testing_support;

namespace {

ParsedQuery parse(const std::string& q) {
    return ts::bundled_state()->parser->parse(q);
}

const Intent* find_intent(const ParsedQuery& p, IntentKind k) {
    for (const auto& i : p.intents) {
        if (i.kind == k) return &i;
    }
    return nullptr;
}

bool binds(const Intent& intent, const std::string& source, const std::string& attribute) {
    for (const auto& a : intent.args) {
        for (const auto& r : a.refs) {
            if (r.source_id == source && r.attribute == attribute) return true;
        }
    }
    return false;
}

std::size_t ref_lev(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0)});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

TEST_CASE("levenshtein against a reference") {
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(normalized_levenshtein("", "") == 0.0);
    CHECK(normalized_levenshtein("abc", "") == 1.0);
    CHECK(normalized_levenshtein("sales", "sale") == doctest::Approx(0.2));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> len(0, 9), ch(0, 3);
    for (int i = 0; i < 2000; ++i) {
        std::string a, b;
        for (int k = len(rng); k > 0; --k) a.push_back(static_cast<char>('a' + ch(rng)));
        for (int k = len(rng); k > 0; --k) b.push_back(static_cast<char>('a' + ch(rng)));
        const auto d = ref_lev(a, b);
        REQUIRE(levenshtein(a, b) == d);
        const double norm = a.empty() && b.empty() ? 0.0 : static_cast<double>(d) / std::max(a.size(), b.size());
        CHECK(within_distance(a, b, 0.2) == (norm <= 0.2));
    }
}

TEST_CASE("wu-palmer on the bundled taxonomy") {
    const auto& tax = ts::bundled_state()->lexicon.taxonomy();
    // espresso and latte share parent drink (depth 2), both at depth 3.
    CHECK(wu_palmer("espresso", "latte", tax) == doctest::Approx(2.0 * 2 / (3 + 3)));
    CHECK(wu_palmer("drink", "espresso", tax) == doctest::Approx(2.0 * 2 / (2 + 3)));
    CHECK(wu_palmer("latte", "latte", tax) == doctest::Approx(1.0));
    CHECK(wu_palmer("theft", "latte", tax) == 0.0);
    CHECK_THROWS_AS(wu_palmer("nothing", "latte", tax), LookupError);
}

TEST_CASE("field matching: exact, synonym, fuzzy, value") {
    const auto& state = *ts::bundled_state();
    const auto& movies = ts::bundled_source("movies");
    auto tokens = state.ds_index.encode_query("film budgt comedy");
    auto matches = match_fields(tokens, movies, state.lexicon.taxonomy(), state.config.match);
    auto has = [&](const std::string& ngram, const std::string& attr, MatchKind kind) {
        return std::any_of(matches.begin(), matches.end(), [&](const FieldMatch& m) {
            return m.ngram == ngram && m.ref.attribute == attr && m.kind == kind;
        });
    };
    CHECK(has("budgt", "Budget", MatchKind::Fuzzy));
    CHECK(std::any_of(matches.begin(), matches.end(), [](const FieldMatch& m) {
        return m.ngram == "comedy" && m.ref.attribute == "Genre" && m.ref.value == "Comedy";
    }));
    for (const auto& m : matches) {
        CHECK(m.score > 0.0);
        CHECK(m.score <= 1.0);
    }
}

TEST_CASE("field matching through the taxonomy") {
    const auto& state = *ts::bundled_state();
    const auto& crimes = ts::bundled_source("us_crimes");
    auto tokens = state.ds_index.encode_query("shoplifting");
    auto matches = match_fields(tokens, crimes, state.lexicon.taxonomy(), state.config.match);
    CHECK(std::any_of(matches.begin(), matches.end(), [](const FieldMatch& m) {
        return m.ref.attribute == "Crime" && !m.ref.value;
    }));
}

TEST_CASE("grammar rejects malformed rules") {
    auto bad = nlohmann::json::parse(R"({"version": 1, "lexicon": {},
        "rules": [["Grouping", "A", "B", "C"]],
        "intents": [{"symbol": "Grouping", "intent": "Grouping"}]})");
    CHECK_THROWS_AS(Grammar::from_json(bad), SchemaError);
    auto bad_class = nlohmann::json::parse(R"({"version": 1, "lexicon": {"NOPE": ["x"]}, "rules": [], "intents": []})");
    CHECK_THROWS_AS(Grammar::from_json(bad_class), SchemaError);
}

TEST_CASE("bundled grammar loads") {
    const auto& g = ts::bundled_state()->grammar;
    CHECK(g.version() == 1);
    CHECK(g.default_limit() == 10);
    CHECK(g.intent_symbols().size() == 6);
    CHECK(g.operators().count("at least") == 1);
}

TEST_CASE("intent detection in context") {
    SUBCASE("aggregation") {
        auto p = parse("average price by neighborhood");
        auto* agg = find_intent(p, IntentKind::Aggregation);
        REQUIRE(agg);
        CHECK(agg->op == "average");
        CHECK(binds(*agg, "housing", "Price"));
        auto* grp = find_intent(p, IntentKind::Grouping);
        REQUIRE(grp);
        CHECK(binds(*grp, "housing", "Neighborhood"));
    }
    SUBCASE("grouping") {
        auto p = parse("sales by region");
        auto* grp = find_intent(p, IntentKind::Grouping);
        REQUIRE(grp);
        CHECK(binds(*grp, "sales", "Region"));
    }
    SUBCASE("correlation") {
        auto p = parse("correlate budget and gross");
        auto* c = find_intent(p, IntentKind::Correlation);
        REQUIRE(c);
        CHECK(binds(*c, "movies", "Budget"));
        CHECK(binds(*c, "movies", "Gross"));
    }
    SUBCASE("filter") {
        auto p = parse("movies with a rating at least 8");
        auto* f = find_intent(p, IntentKind::FilterLimit);
        REQUIRE(f);
        CHECK(f->op == "at least");
        CHECK(binds(*f, "movies", "Rating"));
        CHECK(std::any_of(f->args.begin(), f->args.end(), [](const Argument& a) { return a.number == 8.0; }));
    }
    SUBCASE("temporal") {
        auto p = parse("sales over time");
        CHECK(find_intent(p, IntentKind::Temporal));
    }
    SUBCASE("geospatial") {
        auto p = parse("covid cases in Canada");
        auto* g = find_intent(p, IntentKind::Geospatial);
        REQUIRE(g);
        CHECK(std::any_of(g->args.begin(), g->args.end(),
                          [](const Argument& a) { return a.geo_category == std::optional<std::string>("country"); }));
    }
    SUBCASE("limit with grouping") {
        auto p = parse("top 5 movies by gross");
        auto* f = find_intent(p, IntentKind::FilterLimit);
        REQUIRE(f);
        CHECK(f->op == "top");
        CHECK(std::any_of(f->args.begin(), f->args.end(), [](const Argument& a) { return a.number == 5.0; }));
        CHECK(find_intent(p, IntentKind::Grouping));
    }
}

TEST_CASE("intent detection from bare keywords") {
    CHECK(find_intent(parse("average"), IntentKind::Aggregation));
    CHECK(find_intent(parse("correlate"), IntentKind::Correlation));
    CHECK(find_intent(parse("at least"), IntentKind::FilterLimit));
    CHECK(find_intent(parse("over time"), IntentKind::Temporal));
    CHECK(find_intent(parse("in Canada"), IntentKind::Geospatial));
    auto top = parse("top");
    auto* f = find_intent(top, IntentKind::FilterLimit);
    REQUIRE(f);
    CHECK(f->op == "top");
}

TEST_CASE("queries without analytical words carry no intents") {
    CHECK(parse("elections").intents.empty());
    CHECK(parse("").intents.empty());
    CHECK(parse("   ").intents.empty());
}

TEST_CASE("intents never overlap and are ordered by span") {
    for (const auto& q : {"top 5 movies by gross", "average price by neighborhood in texas",
                          "sales over time by region", "correlate budget and gross for comedy movies"}) {
        auto p = parse(q);
        for (std::size_t i = 1; i < p.intents.size(); ++i) {
            CHECK(p.intents[i - 1].end <= p.intents[i].begin);
        }
    }
}

TEST_CASE("parsing is deterministic") {
    auto a = parse("average price by neighborhood");
    auto b = parse("average price by neighborhood");
    REQUIRE(a.intents.size() == b.intents.size());
    for (std::size_t i = 0; i < a.intents.size(); ++i) {
        CHECK(a.intents[i].kind == b.intents[i].kind);
        CHECK(a.intents[i].begin == b.intents[i].begin);
        CHECK(a.intents[i].end == b.intents[i].end);
    }
    CHECK(a.field_matches.size() == b.field_matches.size());
}
