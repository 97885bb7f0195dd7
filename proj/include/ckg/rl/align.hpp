#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/rl/game.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace ckg::rl {

// CKG node a defender action is about: patch -> the host's attack pattern;
// isolate -> the same, but only once the host is known compromised;
// monitor -> the host's parameter; block -> the
// edge's port IRI. wait and restore have no target.
std::optional<std::string> align_target(const DefenderAction& a, const GameState& s, const NetworkScenario& sc);

// IRIs reachable from `sources` along subject -> IRI-object edges in at most
// k hops (the sources themselves included).
std::set<std::string> reachable_within(const kg::Graph& g, const std::set<std::string>& sources, int k);

// 1 iff the action's target is within k hops of an observed indicator.
int align_bonus(const GameState& s, const DefenderAction& a, const NetworkScenario& sc, const kg::Graph& g, int k);

// align_bonus with an adjacency index and a cache keyed by indicator set.
// Not thread-safe; use one per training run.
class Aligner {
public:
    Aligner(const kg::Graph& g, const NetworkScenario& sc, int k);

    int bonus(const GameState& s, const DefenderAction& a);
    int bonus(const std::set<std::string>& indicators, const std::vector<bool>& detected, const DefenderAction& a);

private:
    const std::set<std::string>& reach(const std::set<std::string>& indicators);

    const NetworkScenario* sc_;
    int k_;
    std::unordered_map<std::string, std::vector<std::string>> adj_;
    std::map<std::set<std::string>, std::set<std::string>> cache_;
};

}  // namespace ckg::rl
