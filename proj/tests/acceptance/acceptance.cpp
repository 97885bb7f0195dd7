// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Thresholds are fixed here.

#include "ckg/cli/cli.hpp"
#include "ckg/kg/ntriples.hpp"
#include "ckg/kg/query.hpp"
#include "ckg/rl/align.hpp"
#include "ckg/rl/evaluate.hpp"
#include "ckg/stix/bundle.hpp"
#include "support/fixtures.hpp"
#include "support/query_oracle.hpp"
#include "support/random_graphs.hpp"
#include "support/rl_oracles.hpp"
#include "support/stix_counts.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace ckg;

namespace {

constexpr int kQueryCases = 100;
constexpr std::size_t kQueryMaxTriples = 200;
constexpr std::size_t kQueryMaxPatterns = 4;
constexpr double kQueryMaxSeconds = 10.0;

constexpr int kRlSeeds = 20;
constexpr int kRlEpisodes = 500;
constexpr double kRlMaxSeconds = 120.0;
constexpr double kAvailabilityGap = 0.20;
constexpr double kEpisodeReduction = 0.05;

constexpr int kOfflineLogEpisodes = 200;
constexpr std::uint64_t kOfflineLogSeed = 7;
constexpr int kOfflineIterations = 20;
constexpr double kDetectionGain = 0.02;
constexpr int kFamiliesRequired = 2;

constexpr int kNeutralitySeeds = 50;
constexpr int kNeutralityEpisodes = 20;
constexpr int kInvariantSteps = 10000;
constexpr int kAlignGraphs = 100;
constexpr std::size_t kAlignMaxTriples = 50;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Outcome query_oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    testing::RandomKg gen(1);
    int mismatches = 0;
    for (int i = 0; i < kQueryCases; ++i) {
        const auto g = gen.graph(kQueryMaxTriples);
        const auto q = gen.query(kQueryMaxPatterns, 3);
        if (kg::evaluate(g, q).rows != testing::oracle_evaluate(g, q)) ++mismatches;
    }
    const double secs = seconds_since(t0);
    return {mismatches == 0 && secs < kQueryMaxSeconds,
            fmt("%.0f/%.0f cases match, %.2fs (limit %.0fs)", kQueryCases - mismatches, kQueryCases, secs,
                kQueryMaxSeconds)};
}

Outcome paper_queries() {
    const auto g = testing::fixture_graph();
    const auto q1 = kg::parse_query(testing::read_fixture("queries/malware_by_hash.rq"));
    const auto q2 = kg::parse_query(testing::read_fixture("queries/malware_pattern_parameters.rq"));
    const auto r1 = kg::evaluate(g, q1);
    const auto r2 = kg::evaluate(g, q2);
    const bool ok = r1.rows == testing::oracle_evaluate(g, q1) && r2.rows == testing::oracle_evaluate(g, q2) &&
                    r1.rows.size() == 1 && !r2.rows.empty();
    return {ok, fmt("query 1: %.0f row(s), query 2: %.0f row(s), both equal to the oracle",
                    static_cast<double>(r1.rows.size()), static_cast<double>(r2.rows.size()))};
}

struct GuidedRun {
    rl::MetricsReport guided, unguided;
    double seconds = 0.0;
};

GuidedRun guided_vs_unguided() {
    const auto sc = rl::read_scenario_file(testing::fixture_path("rl/scenario.json"));
    const auto g = testing::fixture_graph();
    rl::SimulationConfig cfg;
    cfg.episodes = kRlEpisodes;
    for (int s = 1; s <= kRlSeeds; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    const auto t0 = std::chrono::steady_clock::now();
    GuidedRun run;
    cfg.guided = true;
    run.guided = rl::simulate(sc, &g, cfg);
    cfg.guided = false;
    run.unguided = rl::simulate(sc, &g, cfg);
    run.seconds = seconds_since(t0);
    return run;
}

Outcome availability_gap(const GuidedRun& run) {
    const double gap = run.guided.availability.mean - run.unguided.availability.mean;
    return {gap >= kAvailabilityGap && run.seconds < kRlMaxSeconds,
            fmt("guided %.4f vs unguided %.4f, gap %+.4f (need >= %.2f)", run.guided.availability.mean,
                run.unguided.availability.mean, gap, kAvailabilityGap) +
                fmt(", %.1fs (limit %.0fs)", run.seconds, kRlMaxSeconds)};
}

Outcome episode_reduction(const GuidedRun& run) {
    const double g = run.guided.episode_length.mean, u = run.unguided.episode_length.mean;
    const double reduction = u > 0 ? (u - g) / u : 0.0;
    return {reduction >= kEpisodeReduction, fmt("guided %.3f vs unguided %.3f steps, reduction %.2f%% (need >= %.0f%%)",
                                                g, u, 100 * reduction, 100 * kEpisodeReduction)};
}

Outcome offline_prior() {
    const auto base = rl::read_scenario_file(testing::fixture_path("rl/scenario.json"));
    const auto g = testing::fixture_graph();
    const rl::ShapingConfig shaping;
    std::vector<std::uint64_t> seeds;
    for (int s = 1; s <= kRlSeeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    int improved = 0;
    std::string detail;
    for (const char* name : {"worm", "lateral", "exfil"}) {
        const auto fam = rl::read_family_file(testing::fixture_path(std::string("rl/families/") + name + ".json"));
        const auto sc = rl::with_family(base, fam);
        const rl::ScriptedAttacker attacker(fam, sc);
        const auto log = rl::collect_transitions(sc, rl::UniformDefender(sc), attacker, fam.profile,
                                                 kOfflineLogEpisodes, kOfflineLogSeed);
        const auto q_zero = rl::train_offline(log, sc, nullptr, shaping, kOfflineIterations);
        const auto q_prior = rl::train_offline(log, sc, &g, shaping, kOfflineIterations);
        const auto zero = rl::evaluate(rl::GreedyDefender(q_zero, sc), attacker, sc, seeds, fam.profile);
        const auto prior = rl::evaluate(rl::GreedyDefender(q_prior, sc, rl::TieBreak::random,
                                                           rl::knowledge_prior(g, sc, shaping)),
                                        attacker, sc, seeds, fam.profile);
        const bool comparable = zero.detection_rate && prior.detection_rate;
        const double delta = comparable ? prior.detection_rate->mean - zero.detection_rate->mean : 0.0;
        if (comparable && delta >= kDetectionGain) ++improved;
        detail += std::string(detail.empty() ? "" : "; ") + name +
                  (comparable ? fmt(" %+.2fpp", 100 * delta) : std::string(" n/a"));
    }
    return {improved >= kFamiliesRequired,
            detail + fmt(" -> %.0f/3 families gain >= %.0fpp (need %.0f)", improved, 100 * kDetectionGain,
                         kFamiliesRequired)};
}

Outcome shaping_neutrality() {
    const auto sc = rl::read_scenario_file(testing::fixture_path("rl/scenario.json"));
    const auto g = testing::fixture_graph();
    rl::ShapingConfig off;
    off.beta = 0.0;
    int identical = 0;
    for (int i = 0; i < kNeutralitySeeds; ++i) {
        const auto seed = 1000 + static_cast<std::uint64_t>(i);
        const auto a = rl::train_selfplay(sc, off, &g, kNeutralityEpisodes, seed);
        const auto b = rl::train_selfplay(sc, off, nullptr, kNeutralityEpisodes, seed);
        if (a.metrics.trajectory == b.metrics.trajectory && a.metrics == b.metrics) ++identical;
    }
    return {identical == kNeutralitySeeds,
            fmt("%.0f/%.0f seeds with identical trajectories", identical, kNeutralitySeeds)};
}

Outcome game_invariants() {
    std::mt19937_64 gen(42);
    int steps = 0, zero_sum_violations = 0, range_violations = 0;
    while (steps < kInvariantSteps) {
        const auto sc = testing::random_scenario(gen);
        const auto d_actions = rl::defender_actions(sc);
        const auto a_actions = rl::attacker_actions(sc);
        rl::Rng rng(gen());
        auto s = rl::initial_state(sc, rng);
        while (!rl::is_terminal(s, sc) && steps < kInvariantSteps) {
            const auto r = rl::step(s, sc, a_actions[rng.index(a_actions.size())],
                                    d_actions[rng.index(d_actions.size())], rng);
            if (r.attacker_reward + r.defender_reward != 0.0) ++zero_sum_violations;
            const double av = rl::availability(r.next, sc);
            if (!(av >= 0.0 && av <= 1.0)) ++range_violations;
            s = r.next;
            ++steps;
        }
    }
    return {zero_sum_violations == 0 && range_violations == 0,
            fmt("%.0f steps, %.0f zero-sum violations, %.0f availability range violations", steps,
                zero_sum_violations, range_violations)};
}

Outcome pipeline_determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "ckg_acceptance";
    std::filesystem::create_directories(dir);
    auto run_once = [&](const std::string& name) {
        const auto out = (dir / name).string();
        std::ostringstream o, e;
        const int code = cli::run({"--config", testing::fixture_path("config.json"), "rules", "--flows",
                                   testing::fixture_path("flows/flows.csv"), "--out", out},
                                  o, e);
        std::ifstream in(out, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        return std::pair{code, text.str()};
    };
    const auto [c1, first] = run_once("run1.rules");
    const auto [c2, second] = run_once("run2.rules");
    const std::string golden = testing::read_fixture("golden/fixture.rules");
    const bool ok = c1 == 0 && c2 == 0 && first == second && first == golden && !golden.empty();
    return {ok, std::string("two runs ") + (first == second ? "identical" : "differ") + ", golden " +
                    (first == golden ? "matches" : "differs") + " (" + std::to_string(golden.size()) + " bytes)"};
}

Outcome align_oracle() {
    std::mt19937_64 gen(7);
    int checked = 0, mismatches = 0;
    for (int i = 0; i < kAlignGraphs; ++i) {
        auto c = testing::random_align_case(gen, kAlignMaxTriples);
        const int k = 1 + static_cast<int>(gen() % 3);
        for (const auto& a : rl::defender_actions(c.scenario)) {
            ++checked;
            if (rl::align_bonus(c.state, a, c.scenario, c.graph, k) !=
                testing::align_oracle(c.state, a, c.scenario, c.graph, k))
                ++mismatches;
        }
    }
    return {mismatches == 0,
            fmt("%.0f graphs, %.0f (state, action) checks, %.0f mismatches", kAlignGraphs, checked, mismatches)};
}

Outcome stix_counts() {
    const std::string text = testing::read_fixture("stix/bundle.json");
    const auto expected = testing::predicted_stix_counts(text);
    const auto m = stix::map_to_triples(stix::parse_bundle(text), kg::Ontology());
    return {m.triples.size() == expected.triples && m.skipped.size() == expected.skipped,
            fmt("%.0f triples (predicted %.0f), %.0f skipped (predicted %.0f)", static_cast<double>(m.triples.size()),
                static_cast<double>(expected.triples), static_cast<double>(m.skipped.size()),
                static_cast<double>(expected.skipped))};
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    };
    report(1, "query-oracle equivalence", query_oracle_equivalence());
    report(2, "paper queries reproduce", paper_queries());
    const GuidedRun run = guided_vs_unguided();
    report(3, "guided vs unguided availability", availability_gap(run));
    report(4, "episode-time reduction", episode_reduction(run));
    report(5, "offline knowledge prior", offline_prior());
    report(6, "shaping neutrality", shaping_neutrality());
    report(7, "zero-sum and availability invariants", game_invariants());
    report(8, "pipeline determinism", pipeline_determinism());
    report(9, "align_bonus reachability oracle", align_oracle());
    report(10, "STIX mapping counts", stix_counts());
    std::printf("%d/10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
