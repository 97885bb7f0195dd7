#include "ckg/rl/align.hpp"

#include "ckg/error.hpp"

#include <deque>

namespace ckg::rl {

namespace {

std::optional<std::string> target_for(const DefenderAction& a, const std::vector<bool>& detected,
                                      const NetworkScenario& sc) {
    auto vuln = [&](std::size_t h) -> std::optional<std::string> {
        auto it = sc.vulnerable.find(h);
        if (it == sc.vulnerable.end()) return std::nullopt;
        return it->second;
    };
    switch (a.kind) {
        case DefenderKind::patch: return vuln(a.target);
        case DefenderKind::isolate:
            if (a.target < detected.size() && detected[a.target]) return vuln(a.target);
            return std::nullopt;
        case DefenderKind::monitor: return sc.hosts.at(a.target).parameter;
        case DefenderKind::block: return sc.edges.at(a.target).port;
        default: return std::nullopt;
    }
}

}  // namespace

std::optional<std::string> align_target(const DefenderAction& a, const GameState& s, const NetworkScenario& sc) {
    return target_for(a, s.detected, sc);
}

std::set<std::string> reachable_within(const kg::Graph& g, const std::set<std::string>& sources, int k) {
    std::set<std::string> seen(sources.begin(), sources.end());
    std::vector<std::string> frontier(sources.begin(), sources.end());
    for (int hop = 0; hop < k && !frontier.empty(); ++hop) {
        std::vector<std::string> next;
        for (const auto& node : frontier) {
            for (std::size_t idx : g.by_subject(kg::Term::iri(node))) {
                const auto& o = g.triples()[idx].object;
                if (o.is_iri() && seen.insert(o.value).second) next.push_back(o.value);
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

int align_bonus(const GameState& s, const DefenderAction& a, const NetworkScenario& sc, const kg::Graph& g, int k) {
    if (k < 1) throw ValidationError("hop radius k must be >= 1");
    if (s.observed_indicators.empty()) return 0;
    auto target = align_target(a, s, sc);
    if (!target) return 0;
    return reachable_within(g, s.observed_indicators, k).count(*target) ? 1 : 0;
}

Aligner::Aligner(const kg::Graph& g, const NetworkScenario& sc, int k) : sc_(&sc), k_(k) {
    if (k < 1) throw ValidationError("hop radius k must be >= 1");
    for (const auto& t : g.triples())
        if (t.object.is_iri()) adj_[t.subject.value].push_back(t.object.value);
}

const std::set<std::string>& Aligner::reach(const std::set<std::string>& indicators) {
    auto it = cache_.find(indicators);
    if (it != cache_.end()) return it->second;
    std::set<std::string> seen(indicators.begin(), indicators.end());
    std::deque<std::pair<std::string, int>> q;
    for (const auto& i : indicators) q.emplace_back(i, 0);
    while (!q.empty()) {
        auto [node, d] = q.front();
        q.pop_front();
        if (d == k_) continue;
        auto adj = adj_.find(node);
        if (adj == adj_.end()) continue;
        for (const auto& nb : adj->second)
            if (seen.insert(nb).second) q.emplace_back(nb, d + 1);
    }
    return cache_.emplace(indicators, std::move(seen)).first->second;
}

int Aligner::bonus(const std::set<std::string>& indicators, const std::vector<bool>& detected,
                   const DefenderAction& a) {
    if (indicators.empty()) return 0;
    auto target = target_for(a, detected, *sc_);
    if (!target) return 0;
    return reach(indicators).count(*target) ? 1 : 0;
}

int Aligner::bonus(const GameState& s, const DefenderAction& a) { return bonus(s.observed_indicators, s.detected, a); }

}  // namespace ckg::rl
