#include "hsearch/corpus/gazetteer.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::corpus {

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot read gazetteer " + path.string());
    Gazetteer g;
    try {
        auto j = nlohmann::json::parse(in);
        for (const auto& [category, places] : j.items()) {
            for (const auto& p : places) g.add(p.get<std::string>(), category);
        }
    } catch (const nlohmann::json::exception& e) {
        throw IngestionError("gazetteer " + path.string() + ": " + e.what());
    }
    return g;
}

void Gazetteer::add(std::string_view place, std::string_view category) {
    places_.emplace(text::to_lower(text::trim(place)), std::string(category));
}

std::optional<std::string> Gazetteer::category(std::string_view place) const {
    auto it = places_.find(text::to_lower(text::trim(place)));
    if (it == places_.end()) return std::nullopt;
    return it->second;
}

}  // namespace hsearch::corpus
