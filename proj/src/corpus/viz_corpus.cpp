#include "hsearch/corpus/viz_corpus.hpp"

#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::corpus {

namespace {

std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return {};
    return j.at(key).get<std::vector<std::string>>();
}

}  // namespace

VizDocument viz_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("record is not a JSON object");
    VizDocument d;
    try {
        d.id = j.value("id", "");
        d.title = j.value("title", "");
        d.caption = j.value("caption", "");
        d.tags = string_list(j, "tags");
        d.description = j.value("description", "");
        d.author_name = j.value("authorName", "");
        d.chart_types = string_list(j, "chartTypes");
        d.mark_types = string_list(j, "markTypes");
        d.source_url = j.value("sourceUrl", "");
        d.thumbnail_ref = j.value("thumbnailRef", "");
        const auto created = j.value("createdDate", "");
        auto date = CivilDate::parse(created);
        if (!date) throw SchemaError("invalid createdDate '" + created + "'");
        d.created_date = *date;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(e.what());
    }
    if (text::trim(d.id).empty()) throw SchemaError("missing id");
    if (text::trim(d.title).empty()) throw SchemaError("missing title");
    for (auto& t : d.chart_types) t = text::to_lower(t);
    return d;
}

nlohmann::json viz_to_json(const VizDocument& d) {
    return {{"id", d.id},
            {"title", d.title},
            {"caption", d.caption},
            {"tags", d.tags},
            {"description", d.description},
            {"authorName", d.author_name},
            {"createdDate", d.created_date.iso()},
            {"chartTypes", d.chart_types},
            {"markTypes", d.mark_types},
            {"sourceUrl", d.source_url},
            {"thumbnailRef", d.thumbnail_ref}};
}

VizLoadResult parse_viz_corpus(std::string_view content, const std::set<std::string>* known_chart_types) {
    VizLoadResult result;
    std::set<std::string> ids;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < content.size()) {
        auto end = content.find('\n', start);
        if (end == std::string_view::npos) end = content.size();
        auto line = text::trim(content.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        try {
            auto doc = viz_from_json(nlohmann::json::parse(line));
            if (known_chart_types) {
                for (const auto& t : doc.chart_types) {
                    if (!known_chart_types->count(t)) throw SchemaError("unknown chart type '" + t + "'");
                }
            }
            if (!ids.insert(doc.id).second) throw SchemaError("duplicate id '" + doc.id + "'");
            result.documents.push_back(std::move(doc));
        } catch (const std::exception& e) {
            result.diagnostics.push_back("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return result;
}

VizLoadResult load_viz_corpus(const std::filesystem::path& path, const std::set<std::string>* known_chart_types) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot read viz corpus " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    auto result = parse_viz_corpus(ss.str(), known_chart_types);
    for (const auto& d : result.diagnostics) spdlog::warn("{}: skipped record, {}", path.string(), d);
    if (!result.diagnostics.empty()) {
        spdlog::warn("{}: {} record(s) skipped, {} loaded", path.string(), result.skipped(),
                     result.documents.size());
    }
    return result;
}

}  // namespace hsearch::corpus
