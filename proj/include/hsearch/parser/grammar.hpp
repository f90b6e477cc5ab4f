#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsearch/parser/types.hpp"

namespace hsearch::parser {

/// Lexical categories the CKY parser sees.
enum class TerminalClass {
    AggWord,
    GroupMarker,
    CorrWord,
    FilterOp,
    LimitOp,
    TimeWord,
    GeoMarker,
    Preposition,
    Number,
    Attribute,
    Value,
    ChartWord,
};
std::string_view to_string(TerminalClass c);
std::optional<TerminalClass> parse_terminal_class(std::string_view s);

/// Semantic predicate attached to a terminal in a rule, e.g. VALUE[geo].
enum class Predicate { None, Geo, Year, Count, Measure, Dimension, Temporal };

/// One reading of a word span.
struct TerminalMatch {
    TerminalClass cls = TerminalClass::Value;
    std::string op;  // canonical operator for lexicon classes
    std::vector<FieldRef> refs;
    std::optional<double> number;
    std::optional<std::string> geo_category;
    bool measure = false;
    bool dimension = false;
    bool temporal = false;
    bool geo_attribute = false;
};

bool satisfies(const TerminalMatch& m, TerminalClass cls, Predicate pred);

/// A word span with every reading it admits.
struct Terminal {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string text;
    std::vector<TerminalMatch> matches;
};

/// Intent grammar: keyword lexicons plus a context-free grammar in Chomsky
/// normal form (binary rules over nonterminals, unary rules to a terminal),
/// extended with unit rules A -> B that the parser closes over.
class Grammar {
  public:
    struct Symbol {
        bool terminal = false;
        TerminalClass cls = TerminalClass::Value;
        Predicate pred = Predicate::None;
        int nonterminal = -1;
    };
    struct Rule {
        int lhs = -1;
        std::vector<Symbol> rhs;  // one or two symbols
    };

    static Grammar load(const std::filesystem::path& path);
    /// Throws SchemaError on unknown classes/predicates or non-CNF rules.
    static Grammar from_json(const nlohmann::json& j);

    int version() const { return version_; }
    int default_limit() const { return default_limit_; }
    std::size_t max_phrase_words() const { return max_phrase_words_; }

    /// Lexicon readings of a (lowercase, space-joined) phrase.
    std::vector<std::pair<TerminalClass, std::string>> lookup(std::string_view phrase) const;
    /// Every canonical operator in the lexicons.
    const std::set<std::string>& operators() const { return operators_; }

    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t nonterminal_count() const { return nonterminals_.size(); }
    const std::string& nonterminal_name(int id) const { return nonterminals_.at(id); }
    /// Intent nonterminals in priority order.
    const std::vector<std::pair<int, IntentKind>>& intent_symbols() const { return intents_; }

  private:
    int intern(const std::string& name);

    int version_ = 1;
    int default_limit_ = 10;
    std::size_t max_phrase_words_ = 1;
    std::map<std::string, std::vector<std::pair<TerminalClass, std::string>>, std::less<>> lexicon_;
    std::set<std::string> operators_;
    std::vector<std::string> nonterminals_;
    std::map<std::string, int> nonterminal_ids_;
    std::vector<Rule> rules_;
    std::vector<std::pair<int, IntentKind>> intents_;
};

/// CKY over the terminal sequence. Every maximal derivation of an intent
/// nonterminal yields one Intent; chosen spans never overlap (longer spans
/// first, then leftmost, then grammar priority). Output is ordered by span.
std::vector<Intent> detect_intents(std::span<const Terminal> terminals, const Grammar& grammar);

}  // namespace hsearch::parser
