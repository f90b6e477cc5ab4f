#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "hsearch/error.hpp"
#include "hsearch/index/analyzer.hpp"
#include "hsearch/index/search_index.hpp"
#include "bm25_oracle.hpp"
#include "support.hpp"

using namespace hsearch;
using namespace hsearch::index;
namespace ts = testing_support;

namespace {

AnalyzerSettings plain() {
    AnalyzerSettings a;
    a.expand_synonyms = false;
    return a;
}

Document doc(std::string id, std::string text) {
    return {std::move(id), {{"text", std::move(text), true}}};
}

}  // namespace

TEST_CASE("hand-computed BM25 example") {
    auto idx = SearchIndex::build({doc("d1", "sales region"), doc("d2", "profit")}, {}, plain());
    auto r = search(idx, "sales", 10);
    REQUIRE(r.size() == 1);
    CHECK(r.entries[0].id == "d1");
    CHECK(r.entries[0].raw_score == doctest::Approx(std::log(2.0) * 0.88).epsilon(1e-12));
    CHECK(r.entries[0].norm_score == 1.0);
    CHECK(idx.avgdl() == doctest::Approx(1.5));
}

TEST_CASE("idf formula and bounds") {
    CHECK(idf(10, 1) == doctest::Approx(std::log(1.0 + 9.5 / 1.5)));
    CHECK(idf(10, 10) > 0.0);
    CHECK_THROWS_AS(idf(3, 4), ArgumentError);
}

TEST_CASE("bm25 parameter validation") {
    CHECK_NOTHROW((Bm25Params{1.2, 0.75}.validate()));
    CHECK_NOTHROW((Bm25Params{2.0, 0.0}.validate()));
    CHECK_THROWS_AS((Bm25Params{1.0, 0.75}.validate()), ArgumentError);
    CHECK_THROWS_AS((Bm25Params{1.5, 1.5}.validate()), ArgumentError);
}

TEST_CASE("document length counts unigrams only") {
    auto a = plain();
    a.synonyms = {{"movie", {"film", "motion picture"}}};
    a.expand_synonyms = true;
    auto t = encode("great movie night", a, Side::Index);
    CHECK(t.length == 3);
    CHECK(t.contains("great movie night"));
    CHECK(t.contains("film"));
    CHECK(t.contains("motion picture"));
    auto q = encode("great movie night", a, Side::Query);
    CHECK_FALSE(q.contains("film"));
}

TEST_CASE("stopwords are dropped before n-grams") {
    auto a = plain();
    a.stopwords = {"of", "the"};
    auto t = encode("Price of the House", a);
    CHECK(t.length == 2);
    CHECK(t.contains("price house"));
    CHECK_FALSE(t.contains("of"));
}

TEST_CASE("encode_fields keeps n-grams inside a field") {
    std::vector<std::string> fields{"red apple", "green pear"};
    auto t = encode_fields(fields, plain());
    CHECK(t.contains("red apple"));
    CHECK_FALSE(t.contains("apple green"));
    CHECK(t.length == 4);
}

TEST_CASE("stored-only fields are not searched") {
    std::vector<Document> docs{{"a", {{"title", "zebra", true}, {"url", "http://giraffe", false}}},
                               {"b", {{"title", "giraffe", true}}}};
    auto idx = SearchIndex::build(docs, {}, plain());
    CHECK(search(idx, "giraffe", 10).ids() == std::vector<std::string>{"b"});
    CHECK(idx.document("a").field("url")->text == "http://giraffe");
}

TEST_CASE("build errors and lookups") {
    CHECK_THROWS_AS(SearchIndex::build({doc("x", "a"), doc("x", "b")}, {}, plain()), BuildError);
    auto idx = SearchIndex::build({doc("x", "apple"), doc("y", "")}, {}, plain());
    CHECK(idx.size() == 2);
    CHECK(idx.doc_count() == 1);
    CHECK_THROWS_AS(bm25_score(idx, idx.encode_query("apple"), "nope"), LookupError);
    CHECK_THROWS_AS(idx.document("nope"), LookupError);
    CHECK_THROWS_AS(retrieve(idx, idx.encode_query("apple"), 0), ArgumentError);
    CHECK(search(idx, "", 10).empty());
    CHECK(search(idx, "zzzz", 10).empty());
}

TEST_CASE("fuzzy resolution") {
    auto idx = SearchIndex::build({doc("a", "alpha"), doc("b", "alphb"), doc("c", "alpxyz"), doc("d", "2019")}, {},
                                  plain());
    auto terms = idx.resolve_terms(idx.encode_query("alpha"));
    CHECK(terms == std::vector<std::string>{"alpha", "alphb"});
    // Numbers only match exactly.
    CHECK(idx.resolve_terms(idx.encode_query("2018")).empty());
    auto strict = plain();
    strict.fuzzy = false;
    auto idx2 = SearchIndex::build({doc("a", "alpha"), doc("b", "alphb")}, {}, strict);
    CHECK(idx2.resolve_terms(idx2.encode_query("alpha")) == std::vector<std::string>{"alpha"});
}

TEST_CASE("retrieve orders by overlap then id") {
    auto idx = SearchIndex::build({doc("c", "red green blue"), doc("a", "red"), doc("b", "red green")}, {}, plain());
    auto ids = retrieve(idx, idx.encode_query("red green blue"), 10);
    CHECK(ids == std::vector<std::string>{"c", "b", "a"});
    CHECK(retrieve(idx, idx.encode_query("red"), 2) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("rank ties break by ascending id") {
    auto idx = SearchIndex::build({doc("z", "kiwi"), doc("m", "kiwi"), doc("a", "kiwi")}, {}, plain());
    auto r = search(idx, "kiwi", 10);
    CHECK(r.ids() == std::vector<std::string>{"a", "m", "z"});
    for (const auto& e : r.entries) CHECK(e.norm_score == 1.0);
}

TEST_CASE("serialization is deterministic and round-trips") {
    const auto& state = *ts::bundled_state();
    const auto bytes = state.viz_index.serialize();
    const auto again = SearchIndex::build(state.viz_index.documents(), state.viz_index.params(),
                                          state.viz_index.analyzer());
    CHECK(again.serialize() == bytes);

    ts::TempDir dir;
    state.ds_index.save(dir.path() / "ds.json");
    auto loaded = SearchIndex::load(dir.path() / "ds.json");
    CHECK(loaded.serialize() == state.ds_index.serialize());
    for (const char* q : {"sales by region", "housing prices usa", "covid cases in canada"}) {
        auto x = search(state.ds_index, q, 20);
        auto y = search(loaded, q, 20);
        REQUIRE(x.size() == y.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(x.entries[i].id == y.entries[i].id);
            CHECK(x.entries[i].raw_score == y.entries[i].raw_score);
        }
    }
    CHECK_THROWS_AS(SearchIndex::load(dir.path() / "missing.json"), IngestionError);
}

TEST_CASE("randomized BM25 against the reference") {
    const std::vector<std::string> vocab{"alpha", "alphb", "alpka", "bravo", "bravi", "charlie", "charlee",
                                         "delta", "echo", "foxtrot", "foxtrat", "golf", "hotel", "hotal",
                                         "india", "juliet"};
    std::mt19937 rng(20240607);
    auto pick = [&](std::size_t n) {
        std::string s;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) s += ' ';
            s += vocab[std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)];
        }
        return s;
    };
    const auto start = std::chrono::steady_clock::now();
    std::size_t compared = 0;
    for (int corpus = 0; corpus < 200; ++corpus) {
        const auto n_docs = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
        std::vector<Document> docs;
        testing_support::Bm25Oracle oracle;
        for (std::size_t i = 0; i < n_docs; ++i) {
            const auto id = fmt::format("d{:03}", i);
            auto text = pick(std::uniform_int_distribution<std::size_t>(1, 12)(rng));
            docs.push_back(doc(id, text));
            oracle.add(id, text);
        }
        auto idx = SearchIndex::build(docs, {}, plain());
        for (int q = 0; q < 20; ++q) {
            auto query = pick(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
            auto got = search(idx, query, 1000);
            auto want = oracle.search(query);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < want.size(); ++i) {
                CHECK(got.entries[i].id == want[i].first);
                CHECK(std::abs(got.entries[i].raw_score - want[i].second) <= 1e-9);
            }
            ++compared;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(compared == 4000);
    CHECK(secs < 60.0);
}
