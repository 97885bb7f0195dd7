#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/rl/policy.hpp"
#include "ckg/rl/train.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ckg::rl {

struct Stat {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
    friend bool operator==(const Stat&, const Stat&) = default;
};

Stat summarize(const std::vector<double>& values);

struct SeedMetrics {
    std::uint64_t seed = 0;
    double availability = 0.0;
    double episode_length = 0.0;
    std::optional<double> detection_rate;  // null without exploit attempts
    friend bool operator==(const SeedMetrics&, const SeedMetrics&) = default;
};

struct MetricsReport {
    Stat availability;
    Stat episode_length;
    std::optional<Stat> detection_rate;
    std::vector<SeedMetrics> per_seed;

    std::string to_json() const;
    static MetricsReport from_json(const std::string& text);
    static MetricsReport from_seeds(std::vector<SeedMetrics> per_seed);
    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

struct EvalConfig {
    int episodes_per_seed = 10;
};

// One greedy episode; exposed for tests and the CLI.
EpisodeMetrics rollout(const DefenderPolicy& defender, const AttackerPolicy& attacker, const NetworkScenario& sc,
                       const AttackerProfile& profile, Rng& rng);

// Greedy rollouts per seed (ties broken uniformly at random). Throws ValidationError on an empty seed list.
MetricsReport evaluate(const DefenderPolicy& defender, const AttackerPolicy& attacker, const NetworkScenario& sc,
                       const std::vector<std::uint64_t>& seeds, const AttackerProfile& profile,
                       const EvalConfig& cfg = {});
MetricsReport evaluate(const QTable& defender, const QTable& attacker, const NetworkScenario& sc,
                       const std::vector<std::uint64_t>& seeds, const EvalConfig& cfg = {});

// Opponent faced during evaluation: the scenario's scripted attacker, or the
// attacker Q-table co-trained in self-play.
enum class Opponent { scripted, self_play };

struct SimulationConfig {
    ShapingConfig shaping;
    Opponent opponent = Opponent::scripted;
    int episodes = 500;
    std::vector<std::uint64_t> seeds;
    bool guided = true;
    EvalConfig eval;
};

// Per seed: self-play training, then greedy evaluation of the learned
// defender against the configured opponent on that seed. Seeds run in parallel; simulate_serial is the reference.
MetricsReport simulate(const NetworkScenario& sc, const kg::Graph* graph, const SimulationConfig& cfg);
MetricsReport simulate_serial(const NetworkScenario& sc, const kg::Graph* graph, const SimulationConfig& cfg);

// Text table comparing two reports.
std::string comparison_table(const MetricsReport& guided, const MetricsReport& unguided);

}  // namespace ckg::rl
