#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hsearch::corpus {

/// Hypernym/hyponym forest. Roots have depth 1.
class Taxonomy {
  public:
    struct Node {
        std::optional<std::string> parent;
        int depth = 1;
    };

    /// Validates edges and depths; throws SchemaError on a broken forest.
    explicit Taxonomy(std::map<std::string, Node> nodes = {});

    bool contains(std::string_view concept_id) const;
    int depth(std::string_view concept_id) const;  // LookupError if absent
    std::optional<std::string> parent(std::string_view concept_id) const;
    /// Parent, grandparent, ... up to `levels` steps.
    std::vector<std::string> ancestors(std::string_view concept_id, int levels) const;
    /// Children, grandchildren, ... down to `levels` steps, breadth first.
    std::vector<std::string> descendants(std::string_view concept_id, int levels) const;
    const std::map<std::string, Node>& nodes() const { return nodes_; }

  private:
    std::map<std::string, Node> nodes_;
    std::map<std::string, std::vector<std::string>> children_;
};

/// Synonym table plus taxonomy. Synonym edges are symmetric after loading.
class Lexicon {
  public:
    Lexicon() = default;
    Lexicon(std::map<std::string, std::vector<std::string>> synonyms, Taxonomy taxonomy);

    static Lexicon load(const std::filesystem::path& path);
    static Lexicon from_json(const nlohmann::json& j);

    /// Synonyms of a term (exact key, then its singular form).
    std::vector<std::string> synonyms_of(std::string_view term) const;
    const std::map<std::string, std::vector<std::string>>& synonym_table() const { return synonyms_; }
    const Taxonomy& taxonomy() const { return taxonomy_; }

  private:
    std::map<std::string, std::vector<std::string>> synonyms_;
    Taxonomy taxonomy_;
};

}  // namespace hsearch::corpus
