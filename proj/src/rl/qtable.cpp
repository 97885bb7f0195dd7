#include "ckg/rl/qtable.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ckg::rl {

void ShapingConfig::validate() const {
    if (!(beta >= 0.0)) throw ValidationError("beta must be >= 0");
    if (k < 1) throw ValidationError("k must be >= 1");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
}

std::size_t QTable::entries() const {
    std::size_t n = 0;
    for (const auto& [_, row] : rows_) n += static_cast<std::size_t>(std::count(row.known.begin(), row.known.end(), 1));
    return n;
}

double QTable::get(const std::string& key, std::size_t a) const {
    auto it = rows_.find(key);
    return it == rows_.end() ? 0.0 : it->second.q.at(a);
}

bool QTable::known(const std::string& key, std::size_t a) const {
    auto it = rows_.find(key);
    return it != rows_.end() && it->second.known.at(a);
}

void QTable::set(const std::string& key, std::size_t a, double v) {
    if (a >= n_actions_) throw ValidationError("action index out of range");
    auto [it, fresh] = rows_.try_emplace(key);
    if (fresh) {
        it->second.q.assign(n_actions_, 0.0);
        it->second.known.assign(n_actions_, 0);
    }
    it->second.q[a] = v;
    it->second.known[a] = 1;
}

double QTable::max_value(const std::string& key, const std::vector<std::size_t>& actions, bool known_only) const {
    auto it = rows_.find(key);
    if (it == rows_.end()) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a : actions)
        if (!known_only || it->second.known[a]) best = std::max(best, it->second.q[a]);
    return std::isinf(best) ? 0.0 : best;
}

double QTable::max_abs() const {
    double m = 0.0;
    for (const auto& [_, row] : rows_)
        for (double v : row.q) m = std::max(m, std::abs(v));
    return m;
}

std::size_t QTable::greedy(const std::string& key, const std::vector<std::size_t>& actions, TieBreak tie,
                           Rng& rng) const {
    if (actions.empty()) throw ValidationError("greedy needs at least one action");
    auto it = rows_.find(key);
    std::vector<std::size_t> best;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t a : actions) {
        const double v = it == rows_.end() ? 0.0 : it->second.q[a];
        if (v > best_v) {
            best_v = v;
            best.assign(1, a);
        } else if (v == best_v) {
            best.push_back(a);
        }
    }
    if (tie == TieBreak::first || best.size() == 1) return best.front();
    return best[rng.index(best.size())];
}

std::string QTable::to_json() const {
    std::vector<const std::pair<const std::string, Row>*> sorted;
    for (const auto& r : rows_) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->first < b->first; });
    nlohmann::ordered_json j;
    j["n_actions"] = n_actions_;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto* r : sorted)
        for (std::size_t a = 0; a < n_actions_; ++a)
            if (r->second.known[a]) j["entries"].push_back({r->first, a, r->second.q[a]});
    return j.dump();
}

}  // namespace ckg::rl
