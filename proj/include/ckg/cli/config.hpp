#pragma once

#include "ckg/observe/observation.hpp"
#include "ckg/rl/qtable.hpp"
#include "ckg/rules/rule.hpp"
#include "ckg/rules/scorer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ckg::cli {

// Flat JSON keys (all optional):
//   prefix, align_threshold, epsilon, window, baseline_mean, origin,
//   w_cosine, w_support, w_match_rate, beta, k, gamma, alpha,
//   epsilon_explore, graph, policies, scenario, seed, seeds, episodes,
//   eval_episodes, first_sid, parameters
// `parameters` is the only structured key: [{parameter, field, class?,
// baseline_mean?}]. Relative paths resolve against the config file's
// directory.
struct Config {
    std::string prefix = "ckg:";
    double align_threshold = 0.5;
    observe::WindowConfig window;
    rules::ScoreWeights weights;
    rl::ShapingConfig shaping;
    std::string graph;
    std::string policies;
    std::string scenario;
    std::uint64_t seed = 1;
    std::vector<std::uint64_t> seeds;  // empty: {seed}
    int episodes = 500;
    int eval_episodes = 10;
    std::uint32_t first_sid = rules::kFirstLocalSid;
    std::vector<observe::ParameterSpec> parameters;

    // Ranges declared by the owning modules. Throws ValidationError.
    void validate() const;
    std::vector<std::uint64_t> seed_list() const;
};

// Throws ParseError on malformed JSON, ValidationError on unknown keys or
// wrongly typed values.
Config parse_config(const std::string& json_text, const std::string& base_dir = "");
Config read_config_file(const std::string& path);

// "1,2,5-8" -> {1, 2, 5, 6, 7, 8}. Throws ValidationError.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace ckg::cli
