#include "hsearch/corpus/lexicon.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>

#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::corpus {

Taxonomy::Taxonomy(std::map<std::string, Node> nodes) : nodes_(std::move(nodes)) {
    for (const auto& [id, node] : nodes_) {
        if (node.depth < 1) throw SchemaError("taxonomy node '" + id + "' has depth < 1");
        if (!node.parent) {
            if (node.depth != 1) throw SchemaError("taxonomy root '" + id + "' must have depth 1");
            continue;
        }
        auto it = nodes_.find(*node.parent);
        if (it == nodes_.end()) {
            throw SchemaError("taxonomy node '" + id + "' has unknown parent '" + *node.parent + "'");
        }
        if (node.depth != it->second.depth + 1) {
            throw SchemaError("taxonomy node '" + id + "' depth must be parent depth + 1");
        }
        children_[*node.parent].push_back(id);
    }
}

bool Taxonomy::contains(std::string_view concept_id) const {
    return nodes_.find(std::string(concept_id)) != nodes_.end();
}

int Taxonomy::depth(std::string_view concept_id) const {
    auto it = nodes_.find(std::string(concept_id));
    if (it == nodes_.end()) throw LookupError("concept '" + std::string(concept_id) + "' not in taxonomy");
    return it->second.depth;
}

std::optional<std::string> Taxonomy::parent(std::string_view concept_id) const {
    auto it = nodes_.find(std::string(concept_id));
    if (it == nodes_.end()) throw LookupError("concept '" + std::string(concept_id) + "' not in taxonomy");
    return it->second.parent;
}

std::vector<std::string> Taxonomy::ancestors(std::string_view concept_id, int levels) const {
    std::vector<std::string> out;
    auto cur = parent(concept_id);
    while (cur && static_cast<int>(out.size()) < levels) {
        out.push_back(*cur);
        cur = parent(*cur);
    }
    return out;
}

std::vector<std::string> Taxonomy::descendants(std::string_view concept_id, int levels) const {
    std::vector<std::string> out;
    std::deque<std::pair<std::string, int>> queue{{std::string(concept_id), 0}};
    while (!queue.empty()) {
        auto [id, level] = queue.front();
        queue.pop_front();
        if (level == levels) continue;
        auto it = children_.find(id);
        if (it == children_.end()) continue;
        for (const auto& child : it->second) {
            out.push_back(child);
            queue.emplace_back(child, level + 1);
        }
    }
    return out;
}

Lexicon::Lexicon(std::map<std::string, std::vector<std::string>> synonyms, Taxonomy taxonomy)
    : taxonomy_(std::move(taxonomy)) {
    std::map<std::string, std::set<std::string>> sym;
    for (const auto& [term, list] : synonyms) {
        const auto key = text::to_lower(term);
        for (const auto& s : list) {
            const auto other = text::to_lower(s);
            if (other == key) continue;
            sym[key].insert(other);
            sym[other].insert(key);
        }
    }
    for (auto& [term, set] : sym) synonyms_[term] = {set.begin(), set.end()};
}

Lexicon Lexicon::from_json(const nlohmann::json& j) {
    std::map<std::string, std::vector<std::string>> synonyms;
    if (j.contains("synonyms")) {
        for (const auto& [term, list] : j.at("synonyms").items()) {
            synonyms[term] = list.get<std::vector<std::string>>();
        }
    }
    std::map<std::string, Taxonomy::Node> nodes;
    if (j.contains("taxonomy")) {
        for (const auto& [id, node] : j.at("taxonomy").items()) {
            Taxonomy::Node n;
            if (node.contains("parent") && !node.at("parent").is_null()) {
                n.parent = node.at("parent").get<std::string>();
            }
            n.depth = node.at("depth").get<int>();
            nodes.emplace(text::to_lower(id), n);
        }
    }
    return Lexicon(std::move(synonyms), Taxonomy(std::move(nodes)));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot read lexicon " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw IngestionError("lexicon " + path.string() + ": " + e.what());
    }
}

std::vector<std::string> Lexicon::synonyms_of(std::string_view term) const {
    const auto key = text::to_lower(term);
    if (auto it = synonyms_.find(key); it != synonyms_.end()) return it->second;
    if (auto it = synonyms_.find(text::singular(key)); it != synonyms_.end()) return it->second;
    return {};
}

}  // namespace hsearch::corpus
