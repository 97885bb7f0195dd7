#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/rl/game.hpp"
#include "ckg/rl/scenario.hpp"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace ckg::testing {

// Random connected scenario: a spanning tree plus a few extra edges, weights
// normalised to sum to 1 (up to rounding, fixed on the last host).
inline rl::NetworkScenario random_scenario(std::mt19937_64& rng, std::size_t max_hosts = 8) {
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    rl::NetworkScenario sc;
    const std::size_t n = 2 + pick(max_hosts - 1);
    std::vector<double> raw(n);
    double sum = 0.0;
    for (auto& w : raw) sum += (w = 1.0 + static_cast<double>(pick(9)));
    double acc = 0.0;
    for (std::size_t h = 0; h < n; ++h) {
        const double w = h + 1 == n ? 1.0 - acc : raw[h] / sum;
        acc += w;
        sc.hosts.push_back({"h" + std::to_string(h), {{"svc", w}}, std::nullopt});
    }
    for (std::size_t h = 1; h < n; ++h) sc.edges.push_back({pick(h), h, std::nullopt});
    for (std::size_t extra = pick(3); extra > 0; --extra) {
        const std::size_t a = pick(n), b = pick(n);
        if (a != b) sc.edges.push_back({a, b, std::nullopt});
    }
    for (std::size_t h = 0; h < n; ++h)
        if (pick(2)) sc.vulnerable[h] = "ex:ap" + std::to_string(pick(3));
    sc.initial_compromised = {1 + pick(n - 1)};
    sc.gateway = 0;
    sc.horizon = 5 + static_cast<int>(pick(20));
    sc.indicators = {"ex:i0"};
    return sc;
}

// Availability by fixed-point relaxation over the edge list (no queue).
inline double availability_oracle(const rl::GameState& s, const rl::NetworkScenario& sc) {
    using rl::HostStatus;
    const std::size_t n = sc.hosts.size();
    std::vector<bool> reach(n, false);
    if (s.status[sc.gateway] != HostStatus::isolated) reach[sc.gateway] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t e = 0; e < sc.edges.size(); ++e) {
            if (s.blocked[e]) continue;
            const auto& ed = sc.edges[e];
            for (auto [x, y] : {std::pair{ed.a, ed.b}, std::pair{ed.b, ed.a}}) {
                if (reach[x] && !reach[y] && s.status[y] != HostStatus::isolated) {
                    reach[y] = true;
                    changed = true;
                }
            }
        }
    }
    double total = 0.0;
    for (std::size_t h = 0; h < n; ++h)
        if (reach[h] && s.status[h] == HostStatus::healthy)
            for (const auto& svc : sc.hosts[h].services) total += svc.availability_weight;
    return total;
}

// Hop distances from the sources along subject -> IRI-object edges,
// computed by repeated relaxation over the triple list.
inline std::map<std::string, int> hop_distances(const kg::Graph& g, const std::set<std::string>& sources) {
    std::map<std::string, int> dist;
    for (const auto& s : sources) dist[s] = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& t : g.triples()) {
            if (!t.object.is_iri()) continue;
            auto from = dist.find(t.subject.value);
            if (from == dist.end()) continue;
            const int d = from->second + 1;
            auto to = dist.find(t.object.value);
            if (to == dist.end() || d < to->second) {
                dist[t.object.value] = d;
                changed = true;
            }
        }
    }
    return dist;
}

// Target of a defender action, restated from the alignment contract.
inline std::optional<std::string> oracle_target(const rl::DefenderAction& a, const rl::GameState& s,
                                                const rl::NetworkScenario& sc) {
    using rl::DefenderKind;
    auto vuln = [&]() -> std::optional<std::string> {
        if (!sc.vulnerable.count(a.target)) return std::nullopt;
        return sc.vulnerable.at(a.target);
    };
    if (a.kind == DefenderKind::patch) return vuln();
    if (a.kind == DefenderKind::isolate) return s.detected[a.target] ? vuln() : std::nullopt;
    if (a.kind == DefenderKind::monitor) return sc.hosts[a.target].parameter;
    if (a.kind == DefenderKind::block) return sc.edges[a.target].port;
    return std::nullopt;
}

inline int align_oracle(const rl::GameState& s, const rl::DefenderAction& a, const rl::NetworkScenario& sc,
                        const kg::Graph& g, int k) {
    if (s.observed_indicators.empty()) return 0;
    const auto target = oracle_target(a, s, sc);
    if (!target) return 0;
    const auto dist = hop_distances(g, s.observed_indicators);
    auto it = dist.find(*target);
    return it != dist.end() && it->second <= k ? 1 : 0;
}

// Graph over a tiny vocabulary with scenario-style targets mixed in, plus a
// scenario whose hosts, parameters and ports point into that vocabulary.
struct AlignCase {
    kg::Graph graph;
    rl::NetworkScenario scenario;
    rl::GameState state;
};

inline AlignCase random_align_case(std::mt19937_64& rng, std::size_t max_triples = 50) {
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    auto node = [&] { return "ex:n" + std::to_string(pick(10)); };
    AlignCase c;
    const std::size_t n = pick(max_triples + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string p = "ex:p" + std::to_string(pick(3));
        if (pick(6) == 0)
            c.graph.assert_triple({kg::Term::iri(node()), kg::Term::iri(p), kg::Term::literal("x")});
        else
            c.graph.assert_triple({kg::Term::iri(node()), kg::Term::iri(p), kg::Term::iri(node())});
    }
    auto& sc = c.scenario;
    const std::size_t hosts = 2 + pick(4);
    for (std::size_t h = 0; h < hosts; ++h) {
        rl::Host host{"h" + std::to_string(h), {{"svc", 1.0 / static_cast<double>(hosts)}}, std::nullopt};
        if (pick(2)) host.parameter = node();
        sc.hosts.push_back(host);
        if (pick(3)) sc.vulnerable[h] = node();
    }
    for (std::size_t h = 1; h < hosts; ++h)
        sc.edges.push_back({h - 1, h, pick(2) ? std::optional<std::string>(node()) : std::nullopt});
    sc.horizon = 10;
    c.state = rl::initial_state(sc);
    for (std::size_t i = pick(3); i > 0; --i) c.state.observed_indicators.insert(node());
    for (std::size_t h = 0; h < hosts; ++h) c.state.detected[h] = pick(2) == 0;
    return c;
}

}  // namespace ckg::testing
