#include "hsearch/vizsearch/vizsearch.hpp"

#include <algorithm>
#include <fstream>

#include "hsearch/error.hpp"
#include "hsearch/parser/similarity.hpp"
#include "hsearch/text.hpp"

namespace hsearch::vizsearch {

namespace {

std::string normalize(std::string_view s, const std::set<std::string>& stopwords) {
    std::vector<std::string> kept;
    for (auto& w : text::split_words(s)) {
        if (!stopwords.count(w)) kept.push_back(std::move(w));
    }
    return text::join(kept, " ");
}

std::size_t word_count(std::string_view s) {
    return s.empty() ? 0 : static_cast<std::size_t>(std::count(s.begin(), s.end(), ' ')) + 1;
}

bool has_digit(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string> chart_types_of(const index::Document& doc) {
    const auto* f = doc.field("chartTypes");
    if (!f) return {};
    return text::split_list(f->text, ' ');
}

}  // namespace

ChartTypeLexicon ChartTypeLexicon::from_json(const nlohmann::json& j, const std::set<std::string>& stopwords) {
    ChartTypeLexicon lex;
    if (!j.is_object()) throw SchemaError("chart type lexicon must be an object");
    try {
        for (const auto& [id, entry] : j.items()) {
            const auto key = text::to_lower(text::trim(id));
            if (key.empty() || key.find(' ') != std::string::npos) {
                throw SchemaError("chart type id '" + id + "' must be a single lowercase word");
            }
            Entry e;
            e.label = entry.value("label", id);
            std::set<std::string> seen;
            auto add = [&](std::string_view concept_text) {
                auto n = normalize(concept_text, stopwords);
                if (!n.empty() && seen.insert(n).second) e.concepts.push_back(std::move(n));
            };
            add(key);
            if (!entry.at("concepts").is_array()) throw SchemaError("chart type '" + key + "': concepts must be a list");
            for (const auto& c : entry.at("concepts")) add(c.get<std::string>());
            if (!lex.entries_.emplace(key, std::move(e)).second) {
                throw SchemaError("duplicate chart type id '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("chart type lexicon: ") + e.what());
    }
    return lex;
}

ChartTypeLexicon ChartTypeLexicon::load(const std::filesystem::path& path, const std::set<std::string>& stopwords) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot read chart type lexicon " + path.string());
    try {
        return from_json(nlohmann::json::parse(in), stopwords);
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestionError("chart type lexicon " + path.string() + ": " + e.what());
    }
}

std::set<std::string> ChartTypeLexicon::ids() const {
    std::set<std::string> out;
    for (const auto& [id, e] : entries_) out.insert(id);
    return out;
}

ChartTypeMatch match_chart_types(const index::TokenSet& tokens, const ChartTypeLexicon& lexicon,
                                 double fuzzy_threshold) {
    ChartTypeMatch out;
    auto consume = [&](std::string_view phrase) {
        for (auto& w : text::split_words(phrase)) out.trigger_words.insert(std::move(w));
    };
    for (const auto& [id, entry] : lexicon.entries()) {
        for (const auto& concept_text : entry.concepts) {
            if (tokens.contains(concept_text)) {
                out.types.insert(id);
                consume(concept_text);
                continue;
            }
            if (has_digit(concept_text)) continue;
            const auto words = word_count(concept_text);
            for (const auto& [token, n] : tokens.counts) {
                if (word_count(token) != words || has_digit(token)) continue;
                if (parser::within_distance(token, concept_text, fuzzy_threshold)) {
                    out.types.insert(id);
                    consume(token);
                }
            }
        }
    }
    return out;
}

std::set<std::string> detect_chart_types(const index::TokenSet& tokens, const ChartTypeLexicon& lexicon,
                                         double fuzzy_threshold) {
    return match_chart_types(tokens, lexicon, fuzzy_threshold).types;
}

index::Document to_document(const corpus::VizDocument& doc) {
    index::Document d;
    d.id = doc.id;
    d.fields = {
        {"title", doc.title, true},
        {"caption", doc.caption, true},
        {"tags", text::join(doc.tags, ", "), true},
        {"description", doc.description, true},
        {"authorName", doc.author_name, true},
        {"chartTypes", text::join(doc.chart_types, " "), true},
        {"markTypes", text::join(doc.mark_types, " "), false},
        {"createdDate", doc.created_date.iso(), false},
        {"sourceUrl", doc.source_url, false},
        {"thumbnailRef", doc.thumbnail_ref, false},
    };
    return d;
}

index::RankedResults exploratory_search(std::string_view query, const index::SearchIndex& viz_index,
                                        std::size_t limit) {
    if (limit == 0) return {};
    return index::search(viz_index, query, limit);
}

DesignResult design_search(std::string_view query, const index::SearchIndex& viz_index,
                           const ChartTypeLexicon& lexicon, const DesignSearchOptions& options) {
    DesignResult out;
    const auto tokens = viz_index.encode_query(query);
    auto match = match_chart_types(tokens, lexicon, options.fuzzy_threshold);
    if (match.types.empty()) {
        out.results = exploratory_search(query, viz_index, options.limit);
        return out;
    }
    out.design = true;
    out.chart_types = match.types;
    if (options.limit == 0) return out;

    std::vector<std::string> content;
    for (const auto& w : tokens.unigrams) {
        if (!match.trigger_words.count(w)) content.push_back(w);
    }
    std::unordered_map<std::string, double> content_score;
    double max_content = 0.0;
    if (!content.empty() && viz_index.size() > 0) {
        const auto content_tokens = index::encode(text::join(content, " "), viz_index.analyzer(), index::Side::Query);
        if (!content_tokens.empty()) {
            auto candidates = index::retrieve(viz_index, content_tokens, viz_index.size());
            for (const auto& e : index::rank(viz_index, content_tokens, candidates).entries) {
                content_score[e.id] = e.raw_score;
                max_content = std::max(max_content, e.raw_score);
            }
        }
    }

    const double boost = 1.0 + max_content;
    std::vector<index::ScoredDoc> entries;
    for (const auto& doc : viz_index.documents()) {
        auto it = content_score.find(doc.id);
        const double base = it == content_score.end() ? 0.0 : it->second;
        const auto types = chart_types_of(doc);
        const bool typed = std::any_of(types.begin(), types.end(), [&](const auto& t) { return match.types.count(t); });
        if (typed) {
            entries.push_back({doc.id, base + boost, 0.0});
        } else if (!options.strict && base > 0.0) {
            entries.push_back({doc.id, base, 0.0});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.raw_score != b.raw_score) return a.raw_score > b.raw_score;
        return a.id < b.id;
    });
    if (entries.size() > options.limit) entries.resize(options.limit);
    if (!entries.empty()) {
        const double top = entries.front().raw_score;
        for (auto& e : entries) e.norm_score = top > 0.0 ? e.raw_score / top : 0.0;
    }
    out.results.entries = std::move(entries);
    return out;
}

VizCatalog::VizCatalog(std::vector<corpus::VizDocument> docs) : docs_(std::move(docs)) {
    for (std::size_t i = 0; i < docs_.size(); ++i) by_id_.emplace(docs_[i].id, i);
}

const corpus::VizDocument* VizCatalog::find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &docs_[it->second];
}

nlohmann::json FacetSummary::to_json() const {
    return {{"authors", author_counts}, {"chartTypes", chart_type_counts}, {"months", date_histogram}};
}

bool FacetState::matches(const corpus::VizDocument& doc) const {
    if (!authors.empty() && !authors.count(doc.author_name)) return false;
    if (!chart_types.empty() && std::none_of(doc.chart_types.begin(), doc.chart_types.end(),
                                             [&](const auto& t) { return chart_types.count(t); })) {
        return false;
    }
    if (from && doc.created_date < *from) return false;
    if (to && *to < doc.created_date) return false;
    return true;
}

FacetSummary compute_facets(std::span<const corpus::VizDocument* const> docs) {
    FacetSummary out;
    for (const auto* d : docs) {
        ++out.author_counts[d->author_name];
        for (const auto& t : std::set<std::string>(d->chart_types.begin(), d->chart_types.end())) {
            ++out.chart_type_counts[t];
        }
        ++out.date_histogram[d->created_date.month_bucket()];
    }
    return out;
}

FacetSummary compute_facets(const index::RankedResults& results, const VizCatalog& catalog) {
    std::vector<const corpus::VizDocument*> docs;
    for (const auto& e : results.entries) {
        if (const auto* d = catalog.find(e.id)) docs.push_back(d);
    }
    return compute_facets(docs);
}

index::RankedResults apply_facets(const index::RankedResults& results, const VizCatalog& catalog,
                                  const FacetState& state) {
    if (state.empty()) return results;
    index::RankedResults out;
    for (const auto& e : results.entries) {
        const auto* d = catalog.find(e.id);
        if (d && state.matches(*d)) out.entries.push_back(e);
    }
    return out;
}

}  // namespace hsearch::vizsearch
