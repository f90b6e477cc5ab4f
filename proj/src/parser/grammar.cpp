#include "hsearch/parser/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "hsearch/error.hpp"
#include "hsearch/text.hpp"

namespace hsearch::parser {

namespace {

constexpr std::pair<TerminalClass, std::string_view> kClassNames[] = {
    {TerminalClass::AggWord, "AGG_WORD"},       {TerminalClass::GroupMarker, "GROUP_MARKER"},
    {TerminalClass::CorrWord, "CORR_WORD"},     {TerminalClass::FilterOp, "FILTER_OP"},
    {TerminalClass::LimitOp, "LIMIT_OP"},       {TerminalClass::TimeWord, "TIME_WORD"},
    {TerminalClass::GeoMarker, "GEO_MARKER"},   {TerminalClass::Preposition, "PREPOSITION"},
    {TerminalClass::Number, "NUMBER"},          {TerminalClass::Attribute, "ATTRIBUTE"},
    {TerminalClass::Value, "VALUE"},            {TerminalClass::ChartWord, "CHART_WORD"},
};

std::optional<Predicate> parse_predicate(std::string_view s) {
    if (s == "geo") return Predicate::Geo;
    if (s == "year") return Predicate::Year;
    if (s == "count") return Predicate::Count;
    if (s == "measure") return Predicate::Measure;
    if (s == "dimension") return Predicate::Dimension;
    if (s == "temporal") return Predicate::Temporal;
    return std::nullopt;
}

bool is_integer(double v) {
    return std::abs(v - std::round(v)) < 1e-9;
}

bool lexical(TerminalClass c) {
    return c != TerminalClass::Number && c != TerminalClass::Attribute && c != TerminalClass::Value;
}

}  // namespace

std::string_view to_string(TerminalClass c) {
    for (const auto& [cls, name] : kClassNames) {
        if (cls == c) return name;
    }
    return "VALUE";
}

std::optional<TerminalClass> parse_terminal_class(std::string_view s) {
    for (const auto& [cls, name] : kClassNames) {
        if (name == s) return cls;
    }
    return std::nullopt;
}

bool satisfies(const TerminalMatch& m, TerminalClass cls, Predicate pred) {
    if (m.cls != cls) return false;
    switch (pred) {
        case Predicate::None: return true;
        case Predicate::Geo:
            return cls == TerminalClass::Value ? m.geo_category.has_value() || m.geo_attribute : m.geo_attribute;
        case Predicate::Year: return m.number && is_integer(*m.number) && *m.number >= 1800 && *m.number <= 2100;
        case Predicate::Count: return m.number && is_integer(*m.number) && *m.number >= 1;
        case Predicate::Measure: return m.measure;
        case Predicate::Dimension: return m.dimension;
        case Predicate::Temporal: return m.temporal;
    }
    return false;
}

int Grammar::intern(const std::string& name) {
    auto it = nonterminal_ids_.find(name);
    if (it != nonterminal_ids_.end()) return it->second;
    const int id = static_cast<int>(nonterminals_.size());
    nonterminals_.push_back(name);
    nonterminal_ids_.emplace(name, id);
    return id;
}

Grammar Grammar::from_json(const nlohmann::json& j) {
    Grammar g;
    try {
        g.version_ = j.at("version").get<int>();
        g.default_limit_ = j.value("defaultLimit", 10);
        if (g.default_limit_ < 1) throw SchemaError("grammar defaultLimit must be positive");

        for (const auto& [cls_name, entries] : j.at("lexicon").items()) {
            auto cls = parse_terminal_class(cls_name);
            if (!cls || !lexical(*cls)) throw SchemaError("lexicon class '" + cls_name + "' is not a keyword class");
            for (const auto& [phrase, op] : entries.items()) {
                auto key = text::join(text::split_words(phrase), " ");
                const auto canonical = op.get<std::string>();
                g.lexicon_[key].emplace_back(*cls, canonical);
                g.operators_.insert(canonical);
                g.max_phrase_words_ = std::max(g.max_phrase_words_, text::split_words(phrase).size());
            }
        }

        auto symbol = [&](const std::string& raw) {
            Symbol s;
            auto bracket = raw.find('[');
            auto base = raw.substr(0, bracket);
            if (auto cls = parse_terminal_class(base)) {
                s.terminal = true;
                s.cls = *cls;
                if (bracket != std::string::npos) {
                    if (raw.back() != ']') throw SchemaError("malformed symbol '" + raw + "'");
                    auto pred = parse_predicate(raw.substr(bracket + 1, raw.size() - bracket - 2));
                    if (!pred) throw SchemaError("unknown predicate in '" + raw + "'");
                    s.pred = *pred;
                }
            } else {
                if (bracket != std::string::npos) throw SchemaError("predicate on nonterminal '" + raw + "'");
                s.nonterminal = g.intern(raw);
            }
            return s;
        };

        std::set<int> defined;
        for (const auto& r : j.at("rules")) {
            auto parts = r.get<std::vector<std::string>>();
            if (parts.size() < 2 || parts.size() > 3) {
                throw SchemaError("rule must have one or two right-hand symbols");
            }
            Rule rule;
            auto lhs = symbol(parts[0]);
            if (lhs.terminal) throw SchemaError("terminal '" + parts[0] + "' on left-hand side");
            rule.lhs = lhs.nonterminal;
            for (std::size_t i = 1; i < parts.size(); ++i) rule.rhs.push_back(symbol(parts[i]));
            if (rule.rhs.size() == 2 && (rule.rhs[0].terminal || rule.rhs[1].terminal)) {
                throw SchemaError("binary rule for '" + parts[0] + "' must use nonterminals only");
            }
            defined.insert(rule.lhs);
            g.rules_.push_back(std::move(rule));
        }
        for (const auto& rule : g.rules_) {
            for (const auto& s : rule.rhs) {
                if (!s.terminal && !defined.count(s.nonterminal)) {
                    throw SchemaError("nonterminal '" + g.nonterminals_[s.nonterminal] + "' has no rules");
                }
            }
        }

        for (const auto& entry : j.at("intents")) {
            const auto sym = entry.at("symbol").get<std::string>();
            const auto kind = parse_intent_kind(entry.at("intent").get<std::string>());
            if (!kind) throw SchemaError("unknown intent class for '" + sym + "'");
            auto it = g.nonterminal_ids_.find(sym);
            if (it == g.nonterminal_ids_.end() || !defined.count(it->second)) {
                throw SchemaError("intent symbol '" + sym + "' has no rules");
            }
            g.intents_.emplace_back(it->second, *kind);
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("grammar: ") + e.what());
    }
    return g;
}

Grammar Grammar::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot read grammar " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestionError("grammar " + path.string() + ": " + e.what());
    }
}

std::vector<std::pair<TerminalClass, std::string>> Grammar::lookup(std::string_view phrase) const {
    auto it = lexicon_.find(phrase);
    if (it == lexicon_.end()) return {};
    return it->second;
}

namespace {

// How a chart cell entry was derived.
struct Back {
    enum class Kind { Leaf, Unit, Binary } kind = Kind::Leaf;
    std::size_t match = 0;  // Leaf
    int left = -1;          // Unit child, or Binary left
    int right = -1;
    std::size_t split = 0;
};

using Cell = std::map<int, Back>;

struct Chart {
    std::size_t n;
    std::vector<Cell> cells;
    explicit Chart(std::size_t size) : n(size), cells(size * (size + 1)) {}
    Cell& at(std::size_t i, std::size_t j) { return cells[i * (n + 1) + j]; }
};

void unit_closure(Cell& cell, const Grammar& g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rule : g.rules()) {
            if (rule.rhs.size() != 1 || rule.rhs[0].terminal) continue;
            if (cell.count(rule.rhs[0].nonterminal) && !cell.count(rule.lhs)) {
                Back b;
                b.kind = Back::Kind::Unit;
                b.left = rule.rhs[0].nonterminal;
                cell.emplace(rule.lhs, b);
                changed = true;
            }
        }
    }
}

void collect_leaves(Chart& chart, std::size_t i, std::size_t j, int sym,
                    std::vector<std::pair<std::size_t, std::size_t>>& leaves) {
    const Back& b = chart.at(i, j).at(sym);
    switch (b.kind) {
        case Back::Kind::Leaf: leaves.emplace_back(i, b.match); break;
        case Back::Kind::Unit: collect_leaves(chart, i, j, b.left, leaves); break;
        case Back::Kind::Binary:
            collect_leaves(chart, i, b.split, b.left, leaves);
            collect_leaves(chart, b.split, j, b.right, leaves);
            break;
    }
}

}  // namespace

std::vector<Intent> detect_intents(std::span<const Terminal> terminals, const Grammar& grammar) {
    const std::size_t n = terminals.size();
    if (n == 0) return {};
    Chart chart(n);

    for (std::size_t i = 0; i < n; ++i) {
        Cell& cell = chart.at(i, i + 1);
        for (const auto& rule : grammar.rules()) {
            if (rule.rhs.size() != 1 || !rule.rhs[0].terminal || cell.count(rule.lhs)) continue;
            const auto& matches = terminals[i].matches;
            for (std::size_t m = 0; m < matches.size(); ++m) {
                if (satisfies(matches[m], rule.rhs[0].cls, rule.rhs[0].pred)) {
                    Back b;
                    b.match = m;
                    cell.emplace(rule.lhs, b);
                    break;
                }
            }
        }
        unit_closure(cell, grammar);
    }

    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len;
            Cell& cell = chart.at(i, j);
            for (std::size_t k = i + 1; k < j; ++k) {
                const Cell& left = chart.at(i, k);
                const Cell& right = chart.at(k, j);
                if (left.empty() || right.empty()) continue;
                for (const auto& rule : grammar.rules()) {
                    if (rule.rhs.size() != 2 || cell.count(rule.lhs)) continue;
                    if (left.count(rule.rhs[0].nonterminal) && right.count(rule.rhs[1].nonterminal)) {
                        Back b;
                        b.kind = Back::Kind::Binary;
                        b.left = rule.rhs[0].nonterminal;
                        b.right = rule.rhs[1].nonterminal;
                        b.split = k;
                        cell.emplace(rule.lhs, b);
                    }
                }
            }
            unit_closure(cell, grammar);
        }
    }

    struct Candidate {
        std::size_t begin, end, priority;
        int symbol;
        IntentKind kind;
    };
    std::vector<Candidate> candidates;
    const auto& intent_syms = grammar.intent_symbols();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            const Cell& cell = chart.at(i, j);
            for (std::size_t p = 0; p < intent_syms.size(); ++p) {
                if (cell.count(intent_syms[p].first)) {
                    candidates.push_back({i, j, p, intent_syms[p].first, intent_syms[p].second});
                }
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        const auto la = a.end - a.begin;
        const auto lb = b.end - b.begin;
        if (la != lb) return la > lb;
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.priority < b.priority;
    });

    std::vector<bool> taken(n, false);
    std::vector<Intent> intents;
    for (const auto& c : candidates) {
        if (std::any_of(taken.begin() + c.begin, taken.begin() + c.end, [](bool t) { return t; })) continue;
        std::fill(taken.begin() + c.begin, taken.begin() + c.end, true);

        std::vector<std::pair<std::size_t, std::size_t>> leaves;
        collect_leaves(chart, c.begin, c.end, c.symbol, leaves);

        Intent intent;
        intent.kind = c.kind;
        intent.begin = terminals[c.begin].begin;
        intent.end = terminals[c.end - 1].end;
        for (const auto& [t, m] : leaves) {
            const auto& match = terminals[t].matches[m];
            if (lexical(match.cls)) {
                if (!intent.op) intent.op = match.op;
                continue;
            }
            Argument arg;
            arg.text = terminals[t].text;
            arg.refs = match.refs;
            arg.number = match.number;
            arg.geo_category = match.geo_category;
            arg.kind = match.cls == TerminalClass::Number      ? Argument::Kind::Number
                       : match.cls == TerminalClass::Attribute ? Argument::Kind::Attribute
                                                               : Argument::Kind::Value;
            intent.args.push_back(std::move(arg));
        }
        const bool limit = intent.kind == IntentKind::FilterLimit && intent.op &&
                           (*intent.op == "top" || *intent.op == "bottom");
        if (limit && std::none_of(intent.args.begin(), intent.args.end(),
                                  [](const Argument& a) { return a.kind == Argument::Kind::Number; })) {
            Argument n_arg;
            n_arg.kind = Argument::Kind::Number;
            n_arg.number = grammar.default_limit();
            n_arg.text = std::to_string(grammar.default_limit());
            intent.args.push_back(std::move(n_arg));
        }
        intents.push_back(std::move(intent));
    }
    std::sort(intents.begin(), intents.end(), [](const Intent& a, const Intent& b) { return a.begin < b.begin; });
    return intents;
}

}  // namespace hsearch::parser
