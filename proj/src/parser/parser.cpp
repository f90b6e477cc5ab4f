#include "hsearch/parser/parser.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hsearch/error.hpp"
#include "hsearch/parser/similarity.hpp"
#include "hsearch/text.hpp"

namespace hsearch::parser {

namespace {

std::string normalize(std::string_view s, const std::set<std::string>& stopwords) {
    std::vector<std::string> kept;
    for (auto& w : text::split_words(s)) {
        if (!stopwords.count(w)) kept.push_back(std::move(w));
    }
    return text::join(kept, " ");
}

bool has_digit(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<std::string> taxonomy_concept(const std::string& term, const corpus::Taxonomy& taxonomy) {
    if (taxonomy.contains(term)) return term;
    auto single = text::singular(term);
    if (taxonomy.contains(single)) return single;
    return std::nullopt;
}

struct Candidate {
    MatchKind kind = MatchKind::Exact;
    double score = 0.0;
    std::optional<std::string> value;
};

// Higher score wins; on equal score the earlier kind, then names over values.
bool better(const Candidate& a, const std::optional<Candidate>& b) {
    if (!b) return true;
    if (std::abs(a.score - b->score) > 1e-12) return a.score > b->score;
    if (a.kind != b->kind) return a.kind < b->kind;
    return !a.value && b->value;
}

}  // namespace

SourceProfile::SourceProfile(const corpus::DataSource& source, const MatchSettings& settings,
                             const std::set<std::string>& stopwords)
    : source_(&source) {
    std::set<std::pair<std::size_t, std::string>> seen;
    for (std::size_t a = 0; a < source.attributes.size(); ++a) {
        const auto& attr = source.attributes[a];
        names_.push_back(normalize(attr.name, stopwords));
        std::vector<std::string> syns;
        for (const auto& s : attr.synonyms) {
            auto n = normalize(s, stopwords);
            if (!n.empty()) syns.push_back(std::move(n));
        }
        synonyms_.push_back(std::move(syns));
        std::vector<std::string> rel;
        for (const auto& r : attr.related_terms) {
            auto n = normalize(r, stopwords);
            if (!n.empty()) rel.push_back(std::move(n));
        }
        related_.push_back(std::move(rel));
    }
    for (const auto& row : source.rows) {
        if (value_count_ >= settings.max_values) break;
        for (std::size_t a = 0; a < source.attributes.size() && a < row.size(); ++a) {
            if (source.attributes[a].role != corpus::Role::Dimension) continue;
            auto n = normalize(row[a], stopwords);
            if (n.empty() || !seen.emplace(a, n).second) continue;
            if (values_by_length_.size() <= n.size()) values_by_length_.resize(n.size() + 1);
            values_by_length_[n.size()].push_back({n, std::string(text::trim(row[a])), a});
            if (++value_count_ >= settings.max_values) break;
        }
    }
}

std::span<const SourceProfile::ValueEntry> SourceProfile::values_of_length(std::size_t len) const {
    if (len >= values_by_length_.size()) return {};
    return values_by_length_[len];
}

std::vector<FieldMatch> match_fields(const index::TokenSet& ngrams, const SourceProfile& profile,
                                     const corpus::Taxonomy& taxonomy, const MatchSettings& settings) {
    const auto& source = profile.source();
    const double t = settings.fuzzy_threshold;
    std::vector<FieldMatch> out;

    for (const auto& [ngram, count] : ngrams.counts) {
        const bool numeric = has_digit(ngram);
        std::vector<std::optional<Candidate>> best(source.attributes.size());
        auto offer = [&](std::size_t a, Candidate c) {
            if (better(c, best[a])) best[a] = std::move(c);
        };
        auto fuzzy = [&](const std::string& target) -> std::optional<double> {
            if (numeric || target.empty() || !within_distance(ngram, target, t)) return std::nullopt;
            return 1.0 - normalized_levenshtein(ngram, target);
        };
        const auto ngram_concept = taxonomy_concept(ngram, taxonomy);

        for (std::size_t a = 0; a < source.attributes.size(); ++a) {
            const auto& attr = source.attributes[a];
            const auto& name = profile.names()[a];
            if (ngram == name) {
                offer(a, {MatchKind::Exact, 1.0, std::nullopt});
                continue;
            }
            for (const auto& syn : profile.synonyms(a)) {
                if (ngram == syn) offer(a, {MatchKind::Synonym, 1.0, std::nullopt});
            }
            if (auto s = fuzzy(name)) offer(a, {MatchKind::Fuzzy, *s, std::nullopt});
            for (const auto& syn : profile.synonyms(a)) {
                if (auto s = fuzzy(syn)) offer(a, {MatchKind::Fuzzy, *s, std::nullopt});
            }
            for (const auto& rel : profile.related(a)) {
                if (ngram != rel) continue;
                double score = settings.taxonomy_threshold;
                if (attr.taxonomy_node && taxonomy.contains(*attr.taxonomy_node)) {
                    if (auto c = taxonomy_concept(rel, taxonomy)) {
                        score = wu_palmer(*c, *attr.taxonomy_node, taxonomy);
                    }
                }
                offer(a, {MatchKind::Related, score, std::nullopt});
            }
            if (ngram_concept && attr.taxonomy_node && taxonomy.contains(*attr.taxonomy_node)) {
                const double s = wu_palmer(*ngram_concept, *attr.taxonomy_node, taxonomy);
                if (s >= settings.taxonomy_threshold) offer(a, {MatchKind::Taxonomy, s, std::nullopt});
            }
        }

        for (const auto& v : profile.values_of_length(ngram.size())) {
            if (v.normalized == ngram) offer(v.attribute, {MatchKind::Exact, 1.0, v.original});
        }
        if (!numeric) {
            const auto len = static_cast<double>(ngram.size());
            const auto lo = static_cast<std::size_t>(std::ceil(len * (1.0 - t) - 1e-9));
            const auto hi = static_cast<std::size_t>(std::floor(len / (1.0 - t) + 1e-9));
            for (std::size_t l = lo; l <= hi; ++l) {
                if (l == ngram.size()) continue;
                for (const auto& v : profile.values_of_length(l)) {
                    if (auto s = fuzzy(v.normalized)) offer(v.attribute, {MatchKind::Fuzzy, *s, v.original});
                }
            }
            for (const auto& v : profile.values_of_length(ngram.size())) {
                if (v.normalized == ngram) continue;
                if (auto s = fuzzy(v.normalized)) offer(v.attribute, {MatchKind::Fuzzy, *s, v.original});
            }
        }

        for (std::size_t a = 0; a < best.size(); ++a) {
            if (!best[a]) continue;
            const auto& attr = source.attributes[a];
            FieldMatch m;
            m.ngram = ngram;
            m.ref = {source.id, attr.name, best[a]->value};
            m.kind = best[a]->kind;
            m.score = best[a]->score;
            m.data_type = attr.data_type;
            m.role = attr.role;
            out.push_back(std::move(m));
        }
    }
    return out;
}

std::vector<FieldMatch> match_fields(const index::TokenSet& ngrams, const corpus::DataSource& source,
                                     const corpus::Taxonomy& taxonomy, const MatchSettings& settings) {
    return match_fields(ngrams, SourceProfile(source, settings), taxonomy, settings);
}

std::vector<Terminal> classify_terminals(std::span<const std::string> words, const ParserContext& ctx,
                                         std::span<const FieldMatch> field_matches) {
    std::map<std::string, std::vector<const FieldMatch*>> by_ngram;
    for (const auto& m : field_matches) by_ngram[m.ngram].push_back(&m);
    const auto& stop = ctx.analyzer.stopwords;
    const std::size_t max_len = std::max<std::size_t>(4, ctx.grammar.max_phrase_words());

    std::vector<Terminal> terminals;
    std::size_t i = 0;
    while (i < words.size()) {
        std::size_t taken = 0;
        for (std::size_t len = std::min(max_len, words.size() - i); len >= 1 && !taken; --len) {
            auto span = words.subspan(i, len);
            const auto phrase = text::join(span, " ");
            Terminal term;
            term.begin = i;
            term.end = i + len;
            term.text = phrase;

            for (auto& [cls, op] : ctx.grammar.lookup(phrase)) {
                TerminalMatch m;
                m.cls = cls;
                m.op = op;
                term.matches.push_back(std::move(m));
            }

            const auto place = ctx.gazetteer.category(phrase);
            if (!stop.count(span.front()) && !stop.count(span.back())) {
                auto it = by_ngram.find(normalize(phrase, stop));
                if (it != by_ngram.end()) {
                    TerminalMatch attr_m;
                    attr_m.cls = TerminalClass::Attribute;
                    TerminalMatch value_m;
                    value_m.cls = TerminalClass::Value;
                    value_m.geo_category = place;
                    for (const auto* fm : it->second) {
                        const bool geo = fm->data_type == corpus::DataType::Geospatial;
                        if (fm->ref.value) {
                            value_m.refs.push_back(fm->ref);
                            value_m.geo_attribute = value_m.geo_attribute || geo;
                            if (!value_m.geo_category && geo) {
                                value_m.geo_category = ctx.gazetteer.category(text::to_lower(*fm->ref.value));
                            }
                        } else {
                            attr_m.refs.push_back(fm->ref);
                            attr_m.measure = attr_m.measure || fm->role == corpus::Role::Measure;
                            attr_m.dimension = attr_m.dimension || fm->role == corpus::Role::Dimension;
                            attr_m.temporal = attr_m.temporal || corpus::is_time_type(fm->data_type);
                            attr_m.geo_attribute = attr_m.geo_attribute || geo;
                        }
                    }
                    if (!attr_m.refs.empty()) term.matches.push_back(std::move(attr_m));
                    if (!value_m.refs.empty()) term.matches.push_back(std::move(value_m));
                }
            }
            const bool has_value = std::any_of(term.matches.begin(), term.matches.end(),
                                               [](const TerminalMatch& m) { return m.cls == TerminalClass::Value; });
            if (place && !has_value) {
                TerminalMatch m;
                m.cls = TerminalClass::Value;
                m.geo_category = place;
                term.matches.push_back(std::move(m));
            }
            if (len == 1) {
                if (auto n = text::parse_number(phrase)) {
                    TerminalMatch m;
                    m.cls = TerminalClass::Number;
                    m.number = n;
                    term.matches.push_back(std::move(m));
                }
            }
            if (!term.matches.empty()) {
                taken = len;
                terminals.push_back(std::move(term));
            }
            if (len == 1) break;
        }
        i += taken ? taken : 1;
    }
    return terminals;
}

QueryParser::QueryParser(ParserContext ctx, std::span<const corpus::DataSource> sources) : ctx_(ctx) {
    profiles_.reserve(sources.size());
    for (const auto& s : sources) profiles_.emplace_back(s, ctx_.match, ctx_.analyzer.stopwords);
}

ParsedQuery QueryParser::parse(std::string_view query) const {
    ParsedQuery out;
    out.raw = std::string(query);
    out.words = text::split_words(query);
    out.tokens = index::encode(query, ctx_.analyzer, index::Side::Query);
    for (const auto& profile : profiles_) {
        auto matches = match_fields(out.tokens, profile, ctx_.lexicon.taxonomy(), ctx_.match);
        std::move(matches.begin(), matches.end(), std::back_inserter(out.field_matches));
    }
    auto terminals = classify_terminals(out.words, ctx_, out.field_matches);
    out.intents = detect_intents(terminals, ctx_.grammar);
    return out;
}

}  // namespace hsearch::parser
