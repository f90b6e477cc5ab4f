#include "hsearch/index/search_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hsearch/error.hpp"
#include "hsearch/parser/similarity.hpp"

namespace hsearch::index {

namespace {

constexpr const char* kFormat = "hsearch-index";
constexpr int kFormatVersion = 1;

bool has_digit(const std::string& s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

void Bm25Params::validate() const {
    if (!(k1 >= 1.2 && k1 <= 2.0)) throw ArgumentError("BM25 k1 must lie in [1.2, 2.0]");
    if (!(b >= 0.0 && b <= 1.0)) throw ArgumentError("BM25 b must lie in [0, 1]");
}

const Field* Document::field(std::string_view name) const {
    for (const auto& f : fields) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

std::vector<std::string> RankedResults::ids() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.id);
    return out;
}

SearchIndex SearchIndex::build(std::vector<Document> documents, Bm25Params params, AnalyzerSettings analyzer) {
    params.validate();
    std::sort(documents.begin(), documents.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < documents.size(); ++i) {
        if (documents[i].id == documents[i - 1].id) {
            throw BuildError("duplicate document id '" + documents[i].id + "'");
        }
    }

    SearchIndex idx;
    idx.params_ = params;
    idx.analyzer_ = std::move(analyzer);
    idx.docs_ = std::move(documents);
    idx.doc_terms_.resize(idx.docs_.size());
    idx.doc_len_.resize(idx.docs_.size());

    for (std::uint32_t ord = 0; ord < idx.docs_.size(); ++ord) {
        std::vector<std::string> texts;
        for (const auto& f : idx.docs_[ord].fields) {
            if (f.indexed) texts.push_back(f.text);
        }
        auto tokens = encode_fields(texts, idx.analyzer_, Side::Index);
        idx.doc_len_[ord] = tokens.length;
        for (const auto& [term, tf] : tokens.counts) {
            idx.postings_[term].push_back({ord, tf});
            idx.doc_terms_[ord].emplace(term, tf);
        }
    }
    idx.finalize();
    return idx;
}

void SearchIndex::finalize() {
    ordinals_.clear();
    for (std::uint32_t ord = 0; ord < docs_.size(); ++ord) ordinals_.emplace(docs_[ord].id, ord);

    doc_cnt_ = 0;
    std::uint64_t total = 0;
    for (auto len : doc_len_) {
        if (len > 0) {
            ++doc_cnt_;
            total += len;
        }
    }
    avgdl_ = doc_cnt_ > 0 ? static_cast<double>(total) / static_cast<double>(doc_cnt_) : 0.0;

    unigrams_by_length_.clear();
    for (const auto& [term, _] : postings_) {
        if (term.find(' ') != std::string::npos || has_digit(term)) continue;
        if (unigrams_by_length_.size() <= term.size()) unigrams_by_length_.resize(term.size() + 1);
        unigrams_by_length_[term.size()].push_back(term);
    }
    for (auto& bucket : unigrams_by_length_) std::sort(bucket.begin(), bucket.end());
}

std::optional<std::uint32_t> SearchIndex::ordinal(std::string_view id) const {
    auto it = ordinals_.find(std::string(id));
    if (it == ordinals_.end()) return std::nullopt;
    return it->second;
}

const Document& SearchIndex::document(std::string_view id) const {
    auto ord = ordinal(id);
    if (!ord) throw LookupError("unknown document id '" + std::string(id) + "'");
    return docs_[*ord];
}

std::uint32_t SearchIndex::term_frequency(std::uint32_t ordinal, const std::string& term) const {
    const auto& terms = doc_terms_.at(ordinal);
    auto it = terms.find(term);
    return it == terms.end() ? 0 : it->second;
}

std::span<const Posting> SearchIndex::postings(const std::string& term) const {
    auto it = postings_.find(term);
    if (it == postings_.end()) return {};
    return it->second;
}

std::vector<std::string> SearchIndex::resolve_terms(const TokenSet& query) const {
    std::set<std::string> terms;
    const double threshold = analyzer_.fuzzy_threshold;
    for (const auto& [token, _] : query.counts) {
        if (postings_.count(token)) terms.insert(token);
        if (!analyzer_.fuzzy || token.find(' ') != std::string::npos || has_digit(token)) continue;
        const std::size_t len = token.size();
        for (std::size_t l = 1; l < unigrams_by_length_.size(); ++l) {
            const auto longest = static_cast<double>(std::max(l, len));
            const auto diff = static_cast<double>(l > len ? l - len : len - l);
            if (diff / longest > threshold) continue;
            for (const auto& cand : unigrams_by_length_[l]) {
                if (cand != token && parser::within_distance(token, cand, threshold)) terms.insert(cand);
            }
        }
    }
    return {terms.begin(), terms.end()};
}

double idf(std::size_t doc_cnt, std::size_t df) {
    if (df > doc_cnt) throw ArgumentError("document frequency exceeds document count");
    const auto n = static_cast<double>(doc_cnt);
    const auto f = static_cast<double>(df);
    return std::log(1.0 + (n - f + 0.5) / (f + 0.5));
}

namespace {

double score_ordinal(const SearchIndex& index, std::span<const std::string> terms,
                     std::span<const double> weights, std::uint32_t ord) {
    const auto& p = index.params();
    const double len = static_cast<double>(index.doc_length(ord));
    const double norm = p.k1 * (1.0 - p.b + p.b * len / index.avgdl());
    double score = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto tf = index.term_frequency(ord, terms[i]);
        if (tf == 0) continue;
        const double f = static_cast<double>(tf);
        score += weights[i] * (f * (p.k1 + 1.0)) / (f + norm);
    }
    return score;
}

std::vector<double> term_weights(const SearchIndex& index, std::span<const std::string> terms) {
    std::vector<double> w;
    w.reserve(terms.size());
    for (const auto& t : terms) w.push_back(idf(index.doc_count(), index.document_frequency(t)));
    return w;
}

}  // namespace

std::vector<std::string> retrieve(const SearchIndex& index, const TokenSet& query, std::size_t r) {
    if (r == 0) throw ArgumentError("retrieve: r must be positive");
    std::map<std::uint32_t, std::size_t> overlap;
    for (const auto& term : index.resolve_terms(query)) {
        for (const auto& p : index.postings(term)) ++overlap[p.doc];
    }
    std::vector<std::pair<std::uint32_t, std::size_t>> hits(overlap.begin(), overlap.end());
    std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (hits.size() > r) hits.resize(r);
    std::vector<std::string> ids;
    ids.reserve(hits.size());
    for (const auto& [ord, _] : hits) ids.push_back(index.document(ord).id);
    return ids;
}

double bm25_score(const SearchIndex& index, const TokenSet& query, std::string_view doc_id) {
    auto ord = index.ordinal(doc_id);
    if (!ord) throw LookupError("unknown document id '" + std::string(doc_id) + "'");
    const auto terms = index.resolve_terms(query);
    const auto weights = term_weights(index, terms);
    return score_ordinal(index, terms, weights, *ord);
}

RankedResults rank(const SearchIndex& index, const TokenSet& query, std::span<const std::string> candidates) {
    const auto terms = index.resolve_terms(query);
    const auto weights = term_weights(index, terms);

    std::vector<std::pair<std::uint32_t, double>> scored;
    scored.reserve(candidates.size());
    std::set<std::uint32_t> seen;
    for (const auto& id : candidates) {
        auto ord = index.ordinal(id);
        if (!ord) throw LookupError("unknown document id '" + id + "'");
        if (!seen.insert(*ord).second) continue;
        scored.emplace_back(*ord, score_ordinal(index, terms, weights, *ord));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    RankedResults out;
    const double top = scored.empty() ? 0.0 : scored.front().second;
    for (const auto& [ord, s] : scored) {
        out.entries.push_back({index.document(ord).id, s, top > 0.0 ? s / top : 0.0});
    }
    return out;
}

RankedResults search(const SearchIndex& index, std::string_view text, std::size_t limit) {
    const auto query = index.encode_query(text);
    if (query.empty() || index.doc_count() == 0 || limit == 0) return {};
    const auto candidates = retrieve(index, query, index.size());
    auto ranked = rank(index, query, candidates);
    if (ranked.entries.size() > limit) ranked.entries.resize(limit);
    return ranked;
}

nlohmann::json SearchIndex::to_json() const {
    nlohmann::json docs = nlohmann::json::array();
    for (const auto& d : docs_) {
        nlohmann::json fields = nlohmann::json::array();
        for (const auto& f : d.fields) fields.push_back({{"name", f.name}, {"text", f.text}, {"indexed", f.indexed}});
        docs.push_back({{"id", d.id}, {"fields", std::move(fields)}});
    }
    std::map<std::string, const std::vector<Posting>*> sorted;
    for (const auto& [term, list] : postings_) sorted.emplace(term, &list);
    nlohmann::json postings = nlohmann::json::object();
    for (const auto& [term, list] : sorted) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : *list) arr.push_back({p.doc, p.tf});
        postings[term] = std::move(arr);
    }
    return {{"format", kFormat},
            {"version", kFormatVersion},
            {"analyzer", analyzer_.to_json()},
            {"params", {{"k1", params_.k1}, {"b", params_.b}}},
            {"documents", std::move(docs)},
            {"docLengths", doc_len_},
            {"postings", std::move(postings)}};
}

SearchIndex SearchIndex::from_json(const nlohmann::json& j) {
    if (j.value("format", "") != kFormat) throw IngestionError("not a search index file");
    if (j.value("version", 0) != kFormatVersion) {
        throw IngestionError("unsupported index format version " + std::to_string(j.value("version", 0)));
    }
    SearchIndex idx;
    try {
        idx.analyzer_ = AnalyzerSettings::from_json(j.at("analyzer"));
        idx.params_ = {j.at("params").at("k1").get<double>(), j.at("params").at("b").get<double>()};
        idx.params_.validate();
        for (const auto& d : j.at("documents")) {
            Document doc{d.at("id").get<std::string>(), {}};
            for (const auto& f : d.at("fields")) {
                doc.fields.push_back({f.at("name").get<std::string>(), f.at("text").get<std::string>(),
                                      f.at("indexed").get<bool>()});
            }
            idx.docs_.push_back(std::move(doc));
        }
        idx.doc_len_ = j.at("docLengths").get<std::vector<std::uint32_t>>();
        if (idx.doc_len_.size() != idx.docs_.size()) throw IngestionError("docLengths size mismatch");
        idx.doc_terms_.resize(idx.docs_.size());
        for (const auto& [term, arr] : j.at("postings").items()) {
            auto& list = idx.postings_[term];
            for (const auto& p : arr) {
                Posting posting{p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint32_t>()};
                if (posting.doc >= idx.docs_.size()) throw IngestionError("posting references unknown document");
                list.push_back(posting);
                idx.doc_terms_[posting.doc].emplace(term, posting.tf);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw IngestionError(std::string("corrupt index file: ") + e.what());
    }
    for (std::size_t i = 1; i < idx.docs_.size(); ++i) {
        if (!(idx.docs_[i - 1].id < idx.docs_[i].id)) throw IngestionError("index documents out of order");
    }
    idx.finalize();
    return idx;
}

std::string SearchIndex::serialize() const {
    return to_json().dump();
}

void SearchIndex::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw BuildError("cannot write index " + path.string());
    out << serialize();
}

SearchIndex SearchIndex::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot read index " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestionError("corrupt index file " + path.string() + ": " + e.what());
    }
}

}  // namespace hsearch::index
