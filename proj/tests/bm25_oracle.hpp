#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

// Reference BM25 written from the definition, sharing nothing with the index.
struct Bm25Oracle {
    std::vector<std::string> ids;
    std::vector<std::map<std::string, int>> tf;
    std::vector<int> len;
    double k1 = 1.2;
    double b = 0.75;

    static std::vector<std::string> words(const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ' ') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    }

    static std::map<std::string, int> grams(const std::vector<std::string>& w) {
        std::map<std::string, int> out;
        for (std::size_t n = 1; n <= 3; ++n) {
            for (std::size_t i = 0; i + n <= w.size(); ++i) {
                std::string g = w[i];
                for (std::size_t k = 1; k < n; ++k) g += " " + w[i + k];
                ++out[g];
            }
        }
        return out;
    }

    static int lev(const std::string& a, const std::string& c) {
        std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(c.size() + 1));
        for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
        for (std::size_t j = 0; j <= c.size(); ++j) d[0][j] = static_cast<int>(j);
        for (std::size_t i = 1; i <= a.size(); ++i) {
            for (std::size_t j = 1; j <= c.size(); ++j) {
                d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != c[j - 1])});
            }
        }
        return d[a.size()][c.size()];
    }

    void add(const std::string& id, const std::string& text) {
        auto w = words(text);
        ids.push_back(id);
        tf.push_back(grams(w));
        len.push_back(static_cast<int>(w.size()));
    }

    std::vector<std::pair<std::string, double>> search(const std::string& query) const {
        std::set<std::string> vocab;
        for (const auto& m : tf) {
            for (const auto& [t, _] : m) vocab.insert(t);
        }
        std::set<std::string> resolved;
        for (const auto& [q, _] : grams(words(query))) {
            if (vocab.count(q)) resolved.insert(q);
            if (q.find(' ') != std::string::npos) continue;
            for (const auto& v : vocab) {
                if (v.find(' ') != std::string::npos) continue;
                const double d = lev(q, v) / static_cast<double>(std::max(q.size(), v.size()));
                if (d <= 0.2) resolved.insert(v);
            }
        }
        double n = 0, total = 0;
        for (int l : len) {
            if (l > 0) {
                ++n;
                total += l;
            }
        }
        const double avg = total / n;
        std::vector<std::pair<std::string, double>> out;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            double s = 0;
            bool hit = false;
            for (const auto& t : resolved) {
                auto it = tf[i].find(t);
                if (it == tf[i].end()) continue;
                hit = true;
                double df = 0;
                for (const auto& m : tf) df += m.count(t);
                const double w = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
                const double f = it->second;
                s += w * f * (k1 + 1) / (f + k1 * (1 - b + b * len[i] / avg));
            }
            if (hit) out.emplace_back(ids[i], s);
        }
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
            return x.second != y.second ? x.second > y.second : x.first < y.first;
        });
        return out;
    }
};

}  // namespace testing_support
