#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/rl/game.hpp"
#include "ckg/rl/policy.hpp"
#include "ckg/rl/qtable.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ckg::rl {

struct EpisodeMetrics {
    int length = 0;
    double availability = 0.0;  // availability at end / availability at start
    int detections = 0;
    int attempts = 0;           // exploit attempts
    int detected_attempts = 0;
    friend bool operator==(const EpisodeMetrics&, const EpisodeMetrics&) = default;
};

struct TrainingMetrics {
    std::vector<EpisodeMetrics> episodes;
    std::vector<std::pair<std::uint16_t, std::uint16_t>> trajectory;  // (defender, attacker) per step
    std::size_t defender_updates = 0;
    std::size_t attacker_updates = 0;
    friend bool operator==(const TrainingMetrics&, const TrainingMetrics&) = default;
};

struct SelfPlayResult {
    QTable defender;
    QTable attacker;
    TrainingMetrics metrics;
};

// Alternating epsilon-greedy tabular Q-learning for both players. With a
// graph and beta > 0 the defender learns from r + beta*align and explores
// aligned actions first. Deterministic in `seed`.
SelfPlayResult train_selfplay(const NetworkScenario& sc, const ShapingConfig& shaping, const kg::Graph* graph,
                              int episodes, std::uint64_t seed);

struct Transition {
    std::string state;  // defender key
    std::size_t action = 0;
    double reward = 0.0;
    std::string next_state;
    bool terminal = false;
    friend bool operator==(const Transition&, const Transition&) = default;
};

// Rolls out `behavior` against `attacker` and logs the defender's view.
std::vector<Transition> collect_transitions(const NetworkScenario& sc, const DefenderPolicy& behavior,
                                            const AttackerPolicy& attacker, const AttackerProfile& profile,
                                            int episodes, std::uint64_t seed);

// Soft tabular Q-iteration over the log: each sweep visits transitions in
// order and moves Q(s,a) toward r + gamma * max over known Q(s',.) with rate
// alpha. Only logged pairs get entries. With a graph, entries start at
// beta*align_bonus(s,a) instead of 0. Throws ValidationError on an empty log.
QTable train_offline(const std::vector<Transition>& transitions, const NetworkScenario& sc, const kg::Graph* graph,
                     const ShapingConfig& shaping, int iterations);

// beta * align_bonus(s, a): the value train_offline starts every pair at
// when given a graph. Pass it to GreedyDefender so pairs absent from the
// log keep their initial value.
QPrior knowledge_prior(const kg::Graph& g, const NetworkScenario& sc, const ShapingConfig& shaping);

// Detections flags and indicators recovered from a defender key.
struct DefenderView {
    std::vector<bool> detected;
    std::set<std::string> indicators;
};
DefenderView parse_defender_key(const std::string& key);

std::string transitions_jsonl(const std::vector<Transition>& transitions);
std::vector<Transition> parse_transitions_jsonl(const std::string& text);

}  // namespace ckg::rl
