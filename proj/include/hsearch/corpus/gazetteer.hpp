#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace hsearch::corpus {

/// Place-name lookup: US states, countries, Canadian provinces, world cities.
class Gazetteer {
  public:
    Gazetteer() = default;
    static Gazetteer load(const std::filesystem::path& path);

    void add(std::string_view place, std::string_view category);
    /// Category ("us_state", "country", "ca_province", "city") of a place name.
    std::optional<std::string> category(std::string_view place) const;
    bool contains(std::string_view place) const { return category(place).has_value(); }
    std::size_t size() const { return places_.size(); }

  private:
    std::map<std::string, std::string, std::less<>> places_;
};

}  // namespace hsearch::corpus
