#include "ckg/rl/evaluate.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <exception>

namespace ckg::rl {

Stat summarize(const std::vector<double>& values) {
    Stat s;
    if (values.empty()) return s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(var / static_cast<double>(values.size()));
    return s;
}

MetricsReport MetricsReport::from_seeds(std::vector<SeedMetrics> per_seed) {
    MetricsReport r;
    std::vector<double> av, len, det;
    for (const auto& s : per_seed) {
        av.push_back(s.availability);
        len.push_back(s.episode_length);
        if (s.detection_rate) det.push_back(*s.detection_rate);
    }
    r.availability = summarize(av);
    r.episode_length = summarize(len);
    if (!det.empty()) r.detection_rate = summarize(det);
    r.per_seed = std::move(per_seed);
    return r;
}

namespace {

nlohmann::ordered_json stat_json(const Stat& s) { return {{"mean", s.mean}, {"std", s.std}}; }

Stat stat_from(const nlohmann::json& j) { return {j.at("mean").get<double>(), j.at("std").get<double>()}; }

}  // namespace

std::string MetricsReport::to_json() const {
    nlohmann::ordered_json j;
    j["availability"] = stat_json(availability);
    j["episode_length"] = stat_json(episode_length);
    j["detection_rate"] = detection_rate ? stat_json(*detection_rate) : nlohmann::ordered_json(nullptr);
    j["per_seed"] = nlohmann::ordered_json::array();
    for (const auto& s : per_seed) {
        nlohmann::ordered_json e;
        e["seed"] = s.seed;
        e["availability"] = s.availability;
        e["episode_length"] = s.episode_length;
        e["detection_rate"] = s.detection_rate ? nlohmann::ordered_json(*s.detection_rate) : nullptr;
        j["per_seed"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

MetricsReport MetricsReport::from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        MetricsReport r;
        r.availability = stat_from(j.at("availability"));
        r.episode_length = stat_from(j.at("episode_length"));
        if (!j.at("detection_rate").is_null()) r.detection_rate = stat_from(j.at("detection_rate"));
        for (const auto& e : j.at("per_seed")) {
            SeedMetrics s;
            s.seed = e.at("seed").get<std::uint64_t>();
            s.availability = e.at("availability").get<double>();
            s.episode_length = e.at("episode_length").get<double>();
            if (!e.at("detection_rate").is_null()) s.detection_rate = e.at("detection_rate").get<double>();
            r.per_seed.push_back(s);
        }
        return r;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("metrics report: ") + e.what(), e.byte);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("metrics report: ") + e.what());
    }
}

EpisodeMetrics rollout(const DefenderPolicy& defender, const AttackerPolicy& attacker, const NetworkScenario& sc,
                       const AttackerProfile& profile, Rng& rng) {
    const auto d_actions = defender_actions(sc);
    const auto a_actions = attacker_actions(sc);
    GameState s = initial_state(sc, rng);
    const double start = availability(s, sc);
    EpisodeMetrics m;
    while (!is_terminal(s, sc)) {
        const std::size_t d = defender.choose(s, rng);
        const std::size_t a = attacker.choose(s, rng);
        StepResult r = step(s, sc, a_actions.at(a), d_actions.at(d), rng, profile);
        m.detections += r.events.detections;
        if (r.events.exploit_attempt) {
            ++m.attempts;
            if (r.events.detections) ++m.detected_attempts;
        }
        s = std::move(r.next);
    }
    m.length = s.step;
    m.availability = start > 0.0 ? availability(s, sc) / start : 0.0;
    return m;
}

namespace {

constexpr std::uint64_t kEvalSalt = 0x5bd1e9955bd1e995ULL;

SeedMetrics evaluate_seed(const DefenderPolicy& defender, const AttackerPolicy& attacker, const NetworkScenario& sc,
                          std::uint64_t seed, const AttackerProfile& profile, const EvalConfig& cfg) {
    Rng rng(seed ^ kEvalSalt);
    double av = 0.0, len = 0.0;
    long attempts = 0, detected = 0;
    for (int e = 0; e < cfg.episodes_per_seed; ++e) {
        const EpisodeMetrics m = rollout(defender, attacker, sc, profile, rng);
        av += m.availability;
        len += m.length;
        attempts += m.attempts;
        detected += m.detected_attempts;
    }
    SeedMetrics s;
    s.seed = seed;
    s.availability = av / cfg.episodes_per_seed;
    s.episode_length = len / cfg.episodes_per_seed;
    if (attempts > 0) s.detection_rate = static_cast<double>(detected) / static_cast<double>(attempts);
    return s;
}

}  // namespace

MetricsReport evaluate(const DefenderPolicy& defender, const AttackerPolicy& attacker, const NetworkScenario& sc,
                       const std::vector<std::uint64_t>& seeds, const AttackerProfile& profile, const EvalConfig& cfg) {
    if (seeds.empty()) throw ValidationError("evaluate needs at least one seed");
    if (cfg.episodes_per_seed < 1) throw ValidationError("episodes per seed must be >= 1");
    std::vector<SeedMetrics> per;
    for (auto seed : seeds) per.push_back(evaluate_seed(defender, attacker, sc, seed, profile, cfg));
    return MetricsReport::from_seeds(std::move(per));
}

MetricsReport evaluate(const QTable& defender, const QTable& attacker, const NetworkScenario& sc,
                       const std::vector<std::uint64_t>& seeds, const EvalConfig& cfg) {
    return evaluate(GreedyDefender(defender, sc, TieBreak::random), GreedyAttacker(attacker, sc, TieBreak::random), sc,
                    seeds, default_profile(sc), cfg);
}

namespace {

SeedMetrics simulate_seed(const NetworkScenario& sc, const kg::Graph* graph, const SimulationConfig& cfg,
                          std::uint64_t seed) {
    const SelfPlayResult trained = train_selfplay(sc, cfg.shaping, cfg.guided ? graph : nullptr, cfg.episodes, seed);
    if (cfg.opponent == Opponent::self_play)
        return evaluate(trained.defender, trained.attacker, sc, {seed}, cfg.eval).per_seed.front();
    const bool guided = cfg.guided && graph != nullptr && cfg.shaping.beta > 0.0;
    const GreedyDefender defender(trained.defender, sc, TieBreak::random,
                                  guided ? knowledge_prior(*graph, sc, cfg.shaping) : QPrior{});
    const ScriptedAttacker attacker(scenario_family(sc), sc);
    return evaluate(defender, attacker, sc, {seed}, default_profile(sc), cfg.eval).per_seed.front();
}

void check(const SimulationConfig& cfg) {
    if (cfg.seeds.empty()) throw ValidationError("simulation needs at least one seed");
    cfg.shaping.validate();
}

}  // namespace

MetricsReport simulate_serial(const NetworkScenario& sc, const kg::Graph* graph, const SimulationConfig& cfg) {
    check(cfg);
    std::vector<SeedMetrics> per;
    for (auto seed : cfg.seeds) per.push_back(simulate_seed(sc, graph, cfg, seed));
    return MetricsReport::from_seeds(std::move(per));
}

MetricsReport simulate(const NetworkScenario& sc, const kg::Graph* graph, const SimulationConfig& cfg) {
    check(cfg);
    sc.validate();
    std::vector<SeedMetrics> per(cfg.seeds.size());
    std::exception_ptr failure;
    const long n = static_cast<long>(cfg.seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            per[static_cast<std::size_t>(i)] = simulate_seed(sc, graph, cfg, cfg.seeds[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(ckg_simulate_error)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return MetricsReport::from_seeds(std::move(per));
}

std::string comparison_table(const MetricsReport& guided, const MetricsReport& unguided) {
    auto cell = [](const std::optional<Stat>& s) {
        char buf[64];
        if (!s) return std::string("n/a");
        std::snprintf(buf, sizeof buf, "%.4f +/- %.4f", s->mean, s->std);
        return std::string(buf);
    };
    auto delta = [](const std::optional<Stat>& a, const std::optional<Stat>& b) {
        char buf[32];
        if (!a || !b) return std::string("n/a");
        std::snprintf(buf, sizeof buf, "%+.4f", a->mean - b->mean);
        return std::string(buf);
    };
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-16s %-22s %-22s %s\n", "metric", "guided", "unguided", "delta");
    out += line;
    const std::pair<const char*, std::pair<std::optional<Stat>, std::optional<Stat>>> rows[] = {
        {"availability", {guided.availability, unguided.availability}},
        {"episode_length", {guided.episode_length, unguided.episode_length}},
        {"detection_rate", {guided.detection_rate, unguided.detection_rate}},
    };
    for (const auto& [name, pair] : rows) {
        std::snprintf(line, sizeof line, "%-16s %-22s %-22s %s\n", name, cell(pair.first).c_str(),
                      cell(pair.second).c_str(), delta(pair.first, pair.second).c_str());
        out += line;
    }
    return out;
}

}  // namespace ckg::rl
