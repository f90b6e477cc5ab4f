#include "hsearch/service/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "hsearch/classifier/classifier.hpp"
#include "hsearch/corpus/data_source.hpp"
#include "hsearch/corpus/viz_corpus.hpp"
#include "hsearch/error.hpp"
#include "hsearch/qa/chart.hpp"
#include "hsearch/qa/spec.hpp"
#include "hsearch/qa/summary.hpp"
#include "hsearch/text.hpp"

namespace hsearch::service {

namespace fs = std::filesystem;

const corpus::DataSource* EngineState::source(std::string_view id) const {
    for (const auto& s : sources) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    std::string out;
    for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
    return out;
}

index::Document to_document(const corpus::DataSource& source, std::size_t max_values) {
    std::vector<std::string> attrs;
    std::vector<std::string> values;
    std::set<std::string> seen;
    for (const auto& a : source.attributes) {
        attrs.push_back(a.name);
        attrs.insert(attrs.end(), a.synonyms.begin(), a.synonyms.end());
        attrs.insert(attrs.end(), a.related_terms.begin(), a.related_terms.end());
    }
    for (const auto& row : source.rows) {
        for (std::size_t i = 0; i < source.attributes.size() && i < row.size(); ++i) {
            if (source.attributes[i].role != corpus::Role::Dimension ||
                corpus::is_time_type(source.attributes[i].data_type)) {
                continue;
            }
            auto v = std::string(text::trim(row[i]));
            if (v.empty() || seen.size() >= max_values || !seen.insert(text::to_lower(v)).second) continue;
            values.push_back(std::move(v));
        }
    }
    index::Document d;
    d.id = source.id;
    d.fields = {{"name", source.name, true},
                {"description", source.description, true},
                {"attributes", text::join(attrs, ", "), true},
                {"values", text::join(values, ", "), true}};
    return d;
}

namespace {

index::AnalyzerSettings analyzer_for(const EngineConfig& config, const corpus::Lexicon& lexicon) {
    index::AnalyzerSettings a;
    a.stopwords = index::load_stopwords(config.stopwords);
    a.synonyms = lexicon.synonym_table();
    a.max_ngram = config.max_ngram;
    a.expand_synonyms = true;
    a.fuzzy = config.fuzzy;
    a.fuzzy_threshold = config.match.fuzzy_threshold;
    return a;
}

std::vector<corpus::DataSource> load_sources(const EngineConfig& config, const corpus::Gazetteer& gazetteer,
                                             const corpus::Lexicon& lexicon) {
    std::vector<fs::path> csvs;
    for (const auto& entry : fs::directory_iterator(config.sources_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") csvs.push_back(entry.path());
    }
    std::sort(csvs.begin(), csvs.end());
    std::vector<corpus::DataSource> sources;
    for (const auto& csv : csvs) {
        auto meta = csv;
        meta.replace_extension(".json");
        if (!fs::exists(meta)) throw IngestionError("metadata file missing for " + csv.string());
        auto source = corpus::load_data_source(csv, meta, gazetteer);
        corpus::enrich(source, lexicon);
        sources.push_back(std::move(source));
    }
    return sources;
}

std::vector<index::Document> source_documents(const EngineState& s) {
    std::vector<index::Document> docs;
    for (const auto& src : s.sources) docs.push_back(to_document(src, s.config.match.max_values));
    return docs;
}

std::vector<index::Document> viz_documents(const EngineState& s) {
    std::vector<index::Document> docs;
    for (const auto& d : s.catalog.documents()) docs.push_back(vizsearch::to_document(d));
    return docs;
}

index::SearchIndex load_index(const fs::path& path, const index::AnalyzerSettings& analyzer) {
    if (!fs::exists(path)) {
        throw IngestionError(fmt::format("index not found: {} (run `hsearch index` first)", path.string()));
    }
    auto idx = index::SearchIndex::load(path);
    if (!(idx.analyzer() == analyzer)) {
        spdlog::warn("{} was built with different analyzer settings; rerun `hsearch index`", path.string());
    }
    return idx;
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::shared_ptr<qa::TextGenerationClient> client_from(const EngineConfig& config) {
    if (!config.llm.enabled) return nullptr;
    qa::HttpClientSettings settings;
    settings.endpoint = config.llm.endpoint;
    settings.model = config.llm.model;
    settings.timeout = config.llm.timeout;
    if (const char* key = std::getenv(config.llm.api_key_env.c_str())) settings.api_key = key;
    return std::make_shared<qa::HttpTextClient>(std::move(settings));
}

nlohmann::json attribute_summary(const corpus::Attribute& a) {
    nlohmann::json j{{"name", a.name}, {"dataType", corpus::to_string(a.data_type)}, {"role", corpus::to_string(a.role)}};
    if (a.unit_semantics) j["unitSemantics"] = *a.unit_semantics;
    return j;
}

}  // namespace

std::shared_ptr<const EngineState> load_state(const EngineConfig& config, bool build_indices) {
    config.validate();
    auto state = std::make_shared<EngineState>();
    state->config = config;
    state->lexicon = corpus::Lexicon::load(config.lexicon);
    state->gazetteer = corpus::Gazetteer::load(config.gazetteer);
    state->grammar = parser::Grammar::load(config.grammar);
    state->analyzer = analyzer_for(config, state->lexicon);
    state->chart_types = vizsearch::ChartTypeLexicon::load(config.chart_types, state->analyzer.stopwords);
    state->sources = load_sources(config, state->gazetteer, state->lexicon);

    const auto known = state->chart_types.ids();
    auto viz = corpus::load_viz_corpus(config.viz_corpus, &known);
    if (viz.skipped() > 0) spdlog::warn("skipped {} visualization records", viz.skipped());
    state->catalog = vizsearch::VizCatalog(std::move(viz.documents));

    if (build_indices) {
        state->ds_index = index::SearchIndex::build(source_documents(*state), config.bm25, state->analyzer);
        state->viz_index = index::SearchIndex::build(viz_documents(*state), config.bm25, state->analyzer);
    } else {
        state->ds_index = load_index(config.index_dir / kDataSourceIndexFile, state->analyzer);
        state->viz_index = load_index(config.index_dir / kVizIndexFile, state->analyzer);
    }
    parser::ParserContext ctx{state->grammar, state->lexicon, state->gazetteer, state->analyzer, config.match};
    state->parser = std::make_unique<parser::QueryParser>(ctx, state->sources);
    return state;
}

IndexReport cmd_index(const EngineConfig& config) {
    auto state = load_state(config, true);
    fs::create_directories(config.index_dir);

    auto write = [&](std::string_view name, const index::SearchIndex& idx) {
        const auto bytes = idx.serialize();
        const auto path = config.index_dir / name;
        std::ofstream out(path, std::ios::binary);
        out << bytes;
        if (!out) throw IngestionError("cannot write " + path.string());
        return nlohmann::json{{"file", std::string(name)},
                              {"documents", idx.size()},
                              {"docCnt", idx.doc_count()},
                              {"sha256", sha256_hex(bytes)}};
    };

    nlohmann::json settings{{"analyzer", state->analyzer.to_json()},
                            {"bm25", {{"k1", config.bm25.k1}, {"b", config.bm25.b}}},
                            {"maxValues", config.match.max_values}};
    nlohmann::json manifest{{"format", "hsearch-manifest"},
                            {"version", 1},
                            {"dataSources", write(kDataSourceIndexFile, state->ds_index)},
                            {"visualizations", write(kVizIndexFile, state->viz_index)},
                            {"configSha256", sha256_hex(settings.dump())}};
    std::ofstream out(config.index_dir / kManifestFile);
    out << manifest.dump(2) << '\n';
    if (!out) throw IngestionError("cannot write manifest in " + config.index_dir.string());
    return {manifest, config.index_dir};
}

Engine::Engine(EngineConfig config) : state_(load_state(config, false)), client_(client_from(config)) {}

Engine::Engine(std::shared_ptr<const EngineState> state)
    : state_(std::move(state)), client_(client_from(state_.get()->config)) {}

nlohmann::json Engine::search(const SearchRequest& request) const {
    const auto total_start = std::chrono::steady_clock::now();
    const auto s = state_.get();
    const auto& config = s->config;
    nlohmann::json timings;

    auto t = std::chrono::steady_clock::now();
    const auto parsed = s->parser->parse(text::trim(request.query));
    timings["parse"] = ms_since(t);

    t = std::chrono::steady_clock::now();
    classifier::Thresholds thresholds = config.thresholds;
    if (request.field_match) thresholds.field_match = *request.field_match;
    if (request.norm_match) thresholds.norm_match = *request.norm_match;
    const auto plan = classifier::classify(parsed, s->ds_index, thresholds);
    timings["classify"] = ms_since(t);

    t = std::chrono::steady_clock::now();
    vizsearch::DesignSearchOptions options;
    options.limit = std::max<std::size_t>(s->viz_index.size(), 1);
    options.fuzzy_threshold = config.match.fuzzy_threshold;
    auto found = vizsearch::design_search(parsed.raw, s->viz_index, s->chart_types, options);
    auto filtered = vizsearch::apply_facets(found.results, s->catalog, request.facets);
    const auto facets = vizsearch::compute_facets(filtered, s->catalog);
    const auto total = filtered.size();
    const auto limit = request.limit.value_or(config.result_limit);
    if (filtered.entries.size() > limit) filtered.entries.resize(limit);
    nlohmann::json results = nlohmann::json::array();
    for (const auto& e : filtered.entries) {
        if (const auto* doc = s->catalog.find(e.id)) {
            results.push_back({{"id", e.id},
                               {"rawScore", e.raw_score},
                               {"normScore", e.norm_score},
                               {"document", corpus::viz_to_json(*doc)}});
        }
    }
    nlohmann::json general{{"mode", found.design ? "design" : "exploratory"},
                           {"chartTypes", found.chart_types},
                           {"total", total},
                           {"results", std::move(results)},
                           {"facets", facets.to_json()}};
    timings["general"] = ms_since(t);

    nlohmann::json out{{"query", parsed.raw}, {"plan", plan.to_json()}, {"general", std::move(general)}};
    nlohmann::json intents = nlohmann::json::array();
    for (const auto& i : parsed.intents) {
        nlohmann::json ij{{"kind", parser::to_string(i.kind)}};
        if (i.op) ij["operator"] = *i.op;
        nlohmann::json args = nlohmann::json::array();
        for (const auto& a : i.args) args.push_back(a.text);
        ij["arguments"] = std::move(args);
        intents.push_back(std::move(ij));
    }
    out["plan"]["intents"] = std::move(intents);

    t = std::chrono::steady_clock::now();
    const corpus::DataSource* source = nullptr;
    if (request.source && plan.has_analytical_intent) {
        source = s->source(*request.source);
        if (!source) throw LookupError("unknown data source: " + *request.source);
    } else if (plan.invoke_qa) {
        source = s->source(plan.top()->source_id);
    }
    if (source) {
        nlohmann::json qa_json;
        qa_json["source"] = {{"id", source->id}, {"name", source->name}};
        nlohmann::json ranking = nlohmann::json::array();
        for (const auto& r : plan.ranked_sources) {
            const auto* rs = s->source(r.source_id);
            ranking.push_back({{"id", r.source_id},
                               {"name", rs ? rs->name : r.source_id},
                               {"percentage", r.norm_score * 100.0},
                               {"fieldMatchCount", r.field_match_count}});
        }
        qa_json["sourceRanking"] = std::move(ranking);
        try {
            const auto spec = qa::resolve_spec(parsed, *source);
            qa_json["spec"] = spec.to_json();
            auto chart = qa::choose_encoding(spec, qa::execute_spec(spec, *source), &s->gazetteer);
            const auto stats = qa::compute_key_stats(chart);
            const auto summary = qa::rephrase_summary(stats, request.use_llm ? client_.get() : nullptr);
            qa_json["chartSpec"] = chart.to_json();
            qa_json["keyStats"] = stats.to_json();
            qa_json["summaryText"] = summary.text;
            qa_json["summarySource"] = summary.generated ? "generated" : "template";
            if (summary.warning) qa_json["warning"] = *summary.warning;
        } catch (const SpecUnresolvable& e) {
            qa_json["chartSpec"] = nullptr;
            qa_json["error"] = {{"code", "spec_unresolvable"}, {"message", e.what()}};
            qa_json["suggestions"] = qa::suggest_queries(*source, 5);
        } catch (const ExecutionError& e) {
            qa_json["chartSpec"] = nullptr;
            qa_json["error"] = {{"code", "execution_error"}, {"message", e.what()}};
            qa_json["suggestions"] = qa::suggest_queries(*source, 5);
        } catch (const EncodingError& e) {
            qa_json["chartSpec"] = nullptr;
            qa_json["error"] = {{"code", "encoding_error"}, {"message", e.what()}};
            qa_json["suggestions"] = qa::suggest_queries(*source, 5);
        }
        out["qa"] = std::move(qa_json);
    }
    timings["execute"] = ms_since(t);
    timings["total"] = ms_since(total_start);
    out["timings"] = std::move(timings);
    return out;
}

nlohmann::json Engine::datasources() const {
    const auto s = state_.get();
    nlohmann::json list = nlohmann::json::array();
    for (const auto& src : s->sources) {
        nlohmann::json attrs = nlohmann::json::array();
        for (const auto& a : src.attributes) attrs.push_back(attribute_summary(a));
        list.push_back({{"id", src.id},
                        {"name", src.name},
                        {"description", src.description},
                        {"rows", src.rows.size()},
                        {"attributes", std::move(attrs)}});
    }
    return {{"dataSources", std::move(list)}};
}

nlohmann::json Engine::datasource(std::string_view id) const {
    const auto s = state_.get();
    const auto* src = s->source(id);
    if (!src) throw LookupError("unknown data source: " + std::string(id));
    auto j = corpus::metadata_to_json(*src);
    j["id"] = src->id;
    j["rows"] = src->rows.size();
    nlohmann::json samples = nlohmann::json::object();
    for (std::size_t i = 0; i < src->attributes.size(); ++i) {
        if (src->attributes[i].role != corpus::Role::Dimension) continue;
        std::vector<std::string> values;
        for (const auto& cell : corpus::column(*src, i)) {
            auto v = std::string(text::trim(cell));
            if (v.empty() || std::find(values.begin(), values.end(), v) != values.end()) continue;
            values.push_back(std::move(v));
            if (values.size() == 5) break;
        }
        samples[src->attributes[i].name] = std::move(values);
    }
    j["sampleValues"] = std::move(samples);
    auto suggestions = qa::suggest_queries(*src, 1);
    j["suggestedQuery"] = suggestions.empty() ? nlohmann::json(nullptr) : nlohmann::json(suggestions.front());
    return j;
}

nlohmann::json Engine::suggestions(std::string_view id, std::size_t k) const {
    const auto s = state_.get();
    const auto* src = s->source(id);
    if (!src) throw LookupError("unknown data source: " + std::string(id));
    return {{"source", src->id}, {"suggestions", qa::suggest_queries(*src, k)}};
}

nlohmann::json Engine::geometry(std::string_view id) const {
    const bool valid = !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || c == '-';
    });
    if (!valid) throw LookupError("unknown geometry set: " + std::string(id));
    std::string file(id);
    std::replace(file.begin(), file.end(), '-', '_');
    const auto path = state_.get()->config.geometry_dir / (file + ".json");
    std::ifstream in(path);
    if (!in) throw LookupError("geometry set not bundled: " + std::string(id));
    return nlohmann::json::parse(in);
}

}  // namespace hsearch::service
