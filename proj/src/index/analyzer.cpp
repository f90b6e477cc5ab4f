#include "hsearch/index/analyzer.hpp"

#include <fstream>

#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::index {

nlohmann::json AnalyzerSettings::to_json() const {
    return {{"stopwords", stopwords},
            {"synonyms", synonyms},
            {"maxNgram", max_ngram},
            {"expandSynonyms", expand_synonyms},
            {"fuzzy", fuzzy},
            {"fuzzyThreshold", fuzzy_threshold}};
}

AnalyzerSettings AnalyzerSettings::from_json(const nlohmann::json& j) {
    AnalyzerSettings s;
    s.stopwords = j.value("stopwords", std::set<std::string>{});
    s.synonyms = j.value("synonyms", std::map<std::string, std::vector<std::string>>{});
    s.max_ngram = j.value("maxNgram", 3);
    s.expand_synonyms = j.value("expandSynonyms", true);
    s.fuzzy = j.value("fuzzy", true);
    s.fuzzy_threshold = j.value("fuzzyThreshold", 0.2);
    if (s.max_ngram < 1 || s.max_ngram > 3) throw ConfigError("maxNgram must be 1, 2 or 3");
    if (s.fuzzy_threshold < 0.0 || s.fuzzy_threshold >= 1.0) throw ConfigError("fuzzyThreshold must be in [0, 1)");
    return s;
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot read stopword list " + path.string());
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto word = text::to_lower(text::trim(line));
        if (!word.empty()) words.insert(std::move(word));
    }
    return words;
}

std::uint32_t TokenSet::count(const std::string& token) const {
    auto it = counts.find(token);
    return it == counts.end() ? 0 : it->second;
}

void TokenSet::merge(const TokenSet& other) {
    for (const auto& [tok, n] : other.counts) counts[tok] += n;
    length += other.length;
    unigrams.insert(unigrams.end(), other.unigrams.begin(), other.unigrams.end());
}

TokenSet encode(std::string_view text, const AnalyzerSettings& settings, Side side) {
    TokenSet out;
    for (auto& w : text::split_words(text)) {
        if (!settings.stopwords.count(w)) out.unigrams.push_back(std::move(w));
    }
    const auto& words = out.unigrams;
    out.length = static_cast<std::uint32_t>(words.size());

    for (int n = 1; n <= settings.max_ngram; ++n) {
        for (std::size_t i = 0; i + n <= words.size(); ++i) {
            std::string gram = words[i];
            for (int k = 1; k < n; ++k) {
                gram.push_back(' ');
                gram.append(words[i + k]);
            }
            ++out.counts[gram];
        }
    }

    if (side == Side::Index && settings.expand_synonyms && !settings.synonyms.empty()) {
        for (const auto& w : words) {
            auto it = settings.synonyms.find(w);
            if (it == settings.synonyms.end()) it = settings.synonyms.find(text::singular(w));
            if (it == settings.synonyms.end()) continue;
            for (const auto& syn : it->second) {
                auto parts = text::split_words(syn);
                std::erase_if(parts, [&](const std::string& p) { return settings.stopwords.count(p) != 0; });
                if (parts.empty()) continue;
                auto token = text::join(parts, " ");
                if (token != w) ++out.counts[token];
            }
        }
    }
    return out;
}

TokenSet encode_fields(std::span<const std::string> texts, const AnalyzerSettings& settings, Side side) {
    TokenSet out;
    for (const auto& t : texts) out.merge(encode(t, settings, side));
    return out;
}

}  // namespace hsearch::index
