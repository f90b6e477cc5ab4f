#include "hsearch/corpus/data_source.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <spdlog/spdlog.h>

#include "hsearch/corpus/csv.hpp"
#include "hsearch/date.hpp"
#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::corpus {

namespace {

bool is_boolean_literal(std::string_view v) {
    const auto key = text::to_lower(text::trim(v));
    return key == "true" || key == "false" || key == "0" || key == "1";
}

std::vector<std::string> normalized_terms(const std::vector<std::string>& terms) {
    std::set<std::string> set;
    for (const auto& t : terms) {
        auto norm = text::to_lower(text::trim(t));
        if (!norm.empty()) set.insert(std::move(norm));
    }
    return {set.begin(), set.end()};
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot read metadata " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("metadata " + path.string() + ": " + e.what());
    }
}

}  // namespace

std::pair<DataType, Role> infer_field_role(std::span<const std::string> column_values,
                                           const Gazetteer& gazetteer) {
    std::vector<std::string_view> values;
    for (const auto& v : column_values) {
        if (!text::is_blank(v)) values.push_back(text::trim(v));
    }
    if (values.empty()) throw RoleInferenceError("cannot infer role of an all-blank column");

    const auto n = static_cast<double>(values.size());
    auto share = [&](auto pred) {
        return static_cast<double>(std::count_if(values.begin(), values.end(), pred)) / n;
    };

    if (share(is_boolean_literal) == 1.0) return {DataType::Boolean, Role::Dimension};
    if (share([](std::string_view v) { return text::parse_number(v).has_value(); }) >= kMajorityThreshold) {
        return {DataType::Numeric, Role::Measure};
    }
    if (share(looks_like_date) >= kMajorityThreshold) return {DataType::Temporal, Role::Dimension};
    if (share([&](std::string_view v) { return gazetteer.contains(v); }) >= kGeoThreshold) {
        return {DataType::Geospatial, Role::Dimension};
    }
    return {DataType::Text, Role::Dimension};
}

std::vector<std::string> column(const DataSource& source, std::size_t index) {
    std::vector<std::string> out;
    out.reserve(source.rows.size());
    for (const auto& row : source.rows) out.push_back(row.at(index));
    return out;
}

Attribute attribute_from_json(const nlohmann::json& j) {
    try {
        Attribute a;
        a.name = j.at("name").get<std::string>();
        if (j.contains("dataType")) a.data_type = parse_data_type(j.at("dataType").get<std::string>());
        if (j.contains("role")) a.role = parse_role(j.at("role").get<std::string>());
        if (j.contains("synonyms")) a.synonyms = normalized_terms(j.at("synonyms").get<std::vector<std::string>>());
        if (j.contains("relatedTerms")) {
            a.related_terms = normalized_terms(j.at("relatedTerms").get<std::vector<std::string>>());
        }
        if (j.contains("unitSemantics") && !j.at("unitSemantics").is_null()) {
            a.unit_semantics = j.at("unitSemantics").get<std::string>();
        }
        if (j.contains("taxonomyNode") && !j.at("taxonomyNode").is_null()) {
            a.taxonomy_node = j.at("taxonomyNode").get<std::string>();
        }
        if (a.role == Role::Measure && a.data_type != DataType::Numeric) {
            throw SchemaError("measure '" + a.name + "' must have dataType numeric");
        }
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("attribute metadata: ") + e.what());
    }
}

nlohmann::json attribute_to_json(const Attribute& a) {
    nlohmann::json j{{"name", a.name},
                     {"dataType", to_string(a.data_type)},
                     {"role", to_string(a.role)},
                     {"synonyms", a.synonyms},
                     {"relatedTerms", a.related_terms}};
    if (a.unit_semantics) j["unitSemantics"] = *a.unit_semantics;
    if (a.taxonomy_node) j["taxonomyNode"] = *a.taxonomy_node;
    return j;
}

nlohmann::json metadata_to_json(const DataSource& source) {
    nlohmann::json attrs = nlohmann::json::array();
    for (const auto& a : source.attributes) attrs.push_back(attribute_to_json(a));
    return {{"id", source.id},
            {"name", source.name},
            {"description", source.description},
            {"defaultAggregate", source.default_aggregate},
            {"attributes", attrs}};
}

DataSource load_data_source(const std::filesystem::path& csv_path,
                            const std::filesystem::path& meta_path,
                            const Gazetteer& gazetteer) {
    const auto meta = read_json(meta_path);
    auto table = read_csv(csv_path);

    DataSource source;
    source.id = meta.value("id", csv_path.stem().string());
    source.name = meta.value("name", source.id);
    source.description = meta.value("description", "");
    source.default_aggregate = meta.value("defaultAggregate", "sum");

    std::set<std::string> seen;
    for (const auto& h : table.header) {
        auto key = text::to_lower(text::trim(h));
        if (key.empty()) throw SchemaError(csv_path.string() + ": empty column name in header");
        if (!seen.insert(key).second) {
            throw SchemaError(csv_path.string() + ": duplicate column '" + std::string(h) + "'");
        }
    }

    std::map<std::string, nlohmann::json> declared;
    if (meta.contains("attributes")) {
        for (const auto& a : meta.at("attributes")) {
            auto name = a.at("name").get<std::string>();
            if (!seen.count(text::to_lower(name))) {
                throw SchemaError(meta_path.string() + ": metadata column '" + name + "' not in CSV");
            }
            declared[text::to_lower(name)] = a;
        }
    }

    source.rows = std::move(table.rows);
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        const std::string name(text::trim(table.header[c]));
        auto it = declared.find(text::to_lower(name));

        Attribute attr;
        if (it != declared.end()) {
            auto decl = it->second;
            decl["name"] = name;
            attr = attribute_from_json(decl);
        } else {
            attr.name = name;
        }

        const bool has_type = it != declared.end() && it->second.contains("dataType");
        const bool has_role = it != declared.end() && it->second.contains("role");
        if (!has_type || !has_role) {
            std::pair<DataType, Role> inferred{DataType::Text, Role::Dimension};
            if (!source.rows.empty()) {
                try {
                    inferred = infer_field_role(column(source, c), gazetteer);
                } catch (const RoleInferenceError&) {
                    spdlog::warn("{}: column '{}' is blank; treating it as a text dimension",
                                 csv_path.string(), name);
                }
            }
            if (!has_type) attr.data_type = inferred.first;
            if (!has_role) {
                attr.role = attr.data_type == DataType::Numeric ? inferred.second : Role::Dimension;
            }
        }
        if (attr.role == Role::Measure && attr.data_type != DataType::Numeric) {
            throw SchemaError("measure '" + name + "' must have dataType numeric");
        }
        source.attributes.push_back(std::move(attr));
    }
    return source;
}

Attribute enrich_attribute(const Attribute& attr, const Lexicon& lexicon) {
    Attribute out = attr;
    const auto key = text::to_lower(text::trim(attr.name));
    const auto sing = text::singular(key);
    const auto& tax = lexicon.taxonomy();

    std::set<std::string> synonyms(attr.synonyms.begin(), attr.synonyms.end());
    for (const auto& s : lexicon.synonyms_of(key)) synonyms.insert(s);
    synonyms.erase(key);
    synonyms.erase(sing);

    std::optional<std::string> anchor = attr.taxonomy_node;
    if (!anchor) {
        if (tax.contains(key)) {
            anchor = key;
        } else if (tax.contains(sing)) {
            anchor = sing;
        } else {
            for (const auto& s : synonyms) {
                if (tax.contains(s)) {
                    anchor = s;
                    break;
                }
            }
        }
    }

    std::set<std::string> related(attr.related_terms.begin(), attr.related_terms.end());
    if (anchor && tax.contains(*anchor)) {
        for (auto& a : tax.ancestors(*anchor, 2)) related.insert(a);
        for (auto& d : tax.descendants(*anchor, 2)) related.insert(d);
    }
    related.erase(key);
    related.erase(sing);
    for (const auto& s : synonyms) related.erase(s);

    out.synonyms = {synonyms.begin(), synonyms.end()};
    out.related_terms = {related.begin(), related.end()};
    out.taxonomy_node = anchor;
    return out;
}

void enrich(DataSource& source, const Lexicon& lexicon) {
    for (auto& a : source.attributes) a = enrich_attribute(a, lexicon);
}

}  // namespace hsearch::corpus
