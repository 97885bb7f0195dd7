#include "doctest.h"

#include "ckg/error.hpp"
#include "ckg/rl/align.hpp"
#include "ckg/rl/evaluate.hpp"
#include "ckg/rl/policy.hpp"
#include "ckg/rl/scenario.hpp"
#include "ckg/rl/train.hpp"
#include "support/fixtures.hpp"
#include "support/rl_oracles.hpp"

#include <json.hpp>

#include <cmath>
#include <random>
#include <set>

using namespace ckg;
using namespace ckg::rl;
using kg::Term;

namespace {

// gw(.5) - h1(.3) - h2(.2); h1 vulnerable to ex:ap1.
NetworkScenario line3(bool compromised = true) {
    NetworkScenario sc;
    sc.hosts = {{"gw", {{"web", 0.5}}, std::nullopt},
                {"h1", {{"api", 0.3}}, std::string("ex:param1")},
                {"h2", {{"desk", 0.2}}, std::nullopt}};
    sc.edges = {{0, 1, std::string("ex:port1")}, {1, 2, std::nullopt}};
    sc.vulnerable[1] = "ex:ap1";
    if (compromised) sc.initial_compromised = {2};
    sc.horizon = 10;
    sc.indicators = {"ex:i1"};
    sc.validate();
    return sc;
}

std::size_t defender_index(const NetworkScenario& sc, DefenderKind kind, std::size_t target) {
    const auto all = defender_actions(sc);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i].kind == kind && (kind == DefenderKind::wait || all[i].target == target)) return i;
    throw std::logic_error("no such defender action");
}

std::size_t attacker_index(const NetworkScenario& sc, AttackerKind kind) {
    const auto all = attacker_actions(sc);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i].kind == kind) return i;
    throw std::logic_error("no such attacker action");
}

void add(kg::Graph& g, const std::string& s, const std::string& p, const std::string& o) {
    g.assert_triple({Term::iri(s), Term::iri(p), Term::iri(o)});
}

// i1 indicates ap1 directly; ap2 sits three hops away.
kg::Graph six_triples() {
    kg::Graph g;
    add(g, "ex:i1", "ckg:indicates", "ex:ap1");
    add(g, "ex:i1", "ckg:indicates", "ex:m1");
    add(g, "ex:m1", "ckg:uses", "ex:x");
    add(g, "ex:x", "ckg:related", "ex:y");
    add(g, "ex:y", "ckg:related", "ex:ap2");
    add(g, "ex:ap1", "ckg:targets", "ex:param1");
    return g;
}

NetworkScenario fixture_scenario() { return read_scenario_file(testing::fixture_path("rl/scenario.json")); }

double r_max(const NetworkScenario& sc) { return 1.0 + sc.dynamics.compromise_penalty + sc.dynamics.detection_reward; }

}  // namespace

TEST_CASE("scenario parsing and validation") {
    const auto sc = fixture_scenario();
    CHECK(sc.hosts.size() == 8);
    CHECK(sc.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sc.hosts[sc.gateway].id == "gw");
    CHECK(sc.host_weight(sc.host_index("gw")) == doctest::Approx(0.2));

    CHECK_THROWS_AS(read_scenario_file(testing::fixture_path("rl/missing.json")), ValidationError);
    CHECK_THROWS_AS(parse_scenario("{not json"), ParseError);
    const std::string base =
        R"({"gateway":"a","horizon":3,"hosts":[{"id":"a","services":[{"name":"s","weight":0.5}]},)"
        R"({"id":"b","services":[{"name":"s","weight":0.5}]}],"edges":[{"from":"a","to":"b"}]})";
    CHECK_NOTHROW(parse_scenario(base));

    auto mutate = [&](auto f) {
        auto j = nlohmann::json::parse(base);
        f(j);
        return j.dump();
    };
    CHECK_THROWS_AS(parse_scenario(mutate([](auto& j) { j["hosts"][0]["services"][0]["weight"] = 0.6; })),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario(mutate([](auto& j) { j["edges"] = nlohmann::json::array(); })), ValidationError);
    CHECK_THROWS_AS(parse_scenario(mutate([](auto& j) { j["hosts"][1]["id"] = "a"; })), ValidationError);
    CHECK_THROWS_AS(parse_scenario(mutate([](auto& j) { j["horizon"] = 0; })), ValidationError);
    CHECK_THROWS_AS(parse_scenario(mutate([](auto& j) { j["gateway"] = "zz"; })), ValidationError);
    CHECK_THROWS_AS(parse_scenario(mutate([](auto& j) { j["attacker_weights"] = {{"fly", 1.0}}; })),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario(mutate([](auto& j) { j["dynamics"] = {{"p_lateral", 1.5}}; })), ValidationError);
}

TEST_CASE("attacker families") {
    const auto worm = read_family_file(testing::fixture_path("rl/families/worm.json"));
    CHECK(worm.name == "worm");
    CHECK(worm.profile.techniques.count("ckg:ap-smb-exploit") == 1);
    CHECK_FALSE(worm.profile.indicators.empty());
    CHECK_THROWS_AS(parse_family(R"({"name":"x","weights":{"teleport":1}})"), ValidationError);

    const auto sc = with_family(fixture_scenario(), worm);
    CHECK(sc.indicators == worm.profile.indicators);
    CHECK(std::vector<std::string>(sc.initial_indicators) == worm.initial_indicators);
}

TEST_CASE("step examples") {
    SUBCASE("both wait on an all-healthy state") {
        const auto sc = line3(false);
        const GameState s = initial_state(sc);
        Rng rng(1);
        const auto r = step(s, sc, {}, {}, rng);
        CHECK(r.defender_reward == 0.0);
        GameState expected = s;
        expected.step = 1;
        CHECK(r.next == expected);
    }
    SUBCASE("isolate pre-empts an exploit of the same host") {
        const auto sc = line3();
        const GameState s = initial_state(sc);
        Rng rng(1);
        const auto r = step(s, sc, {AttackerKind::exploit, 1, 0}, {DefenderKind::isolate, 1}, rng);
        CHECK(r.events.attacker_preempted);
        CHECK(r.next.status[1] == HostStatus::isolated);
        CHECK(r.events.newly_compromised == 0);
        CHECK(availability(s, sc) - availability(r.next, sc) == doctest::Approx(sc.host_weight(1)));
        CHECK(r.defender_reward == availability(r.next, sc) - availability(s, sc));
    }
    SUBCASE("monitoring the exploited host detects it") {
        const auto sc = line3();
        const GameState s = initial_state(sc);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            const auto r = step(s, sc, {AttackerKind::exploit, 1, 0}, {DefenderKind::monitor, 1}, rng);
            CHECK(r.events.detections == 1);
            CHECK(r.events.exploit_attempt);
            const double expected = availability(r.next, sc) - availability(s, sc) -
                                    0.1 * r.events.newly_compromised + 0.5;
            CHECK(r.defender_reward == expected);
            CHECK(r.next.observed_indicators.count("ex:i1") == 1);
            CHECK(r.next.detected[1] == (r.next.status[1] == HostStatus::compromised));
        }
    }
    SUBCASE("illegal actions resolve as wait") {
        const auto sc = line3();
        const GameState s = initial_state(sc);
        Rng rng(3);
        const auto r = step(s, sc, {AttackerKind::exploit, 0, 0}, {DefenderKind::restore, 1}, rng);
        CHECK(r.events.defender_illegal);
        CHECK(r.events.attacker_illegal);
        CHECK(r.next.status == s.status);
    }
    SUBCASE("past the horizon") {
        const auto sc = line3();
        GameState s = initial_state(sc);
        s.step = sc.horizon;
        Rng rng(1);
        CHECK_THROWS_AS(step(s, sc, {}, {}, rng), ValidationError);
    }
}

TEST_CASE("termination") {
    const auto sc = line3();
    GameState s = initial_state(sc);
    CHECK_FALSE(is_terminal(s, sc));
    s.step = 1;
    s.status[2] = HostStatus::isolated;
    CHECK(is_terminal(s, sc));
    s = initial_state(line3(false));
    CHECK_FALSE(is_terminal(s, sc));
    s.step = sc.horizon;
    CHECK(is_terminal(s, sc));
}

TEST_CASE("zero-sum and availability bounds on random steps") {
    std::mt19937_64 gen(20261016);
    int steps = 0;
    while (steps < 4000) {
        const auto sc = testing::random_scenario(gen);
        const auto d_actions = defender_actions(sc);
        const auto a_actions = attacker_actions(sc);
        Rng rng(gen());
        GameState s = initial_state(sc, rng);
        const double w = sc.total_weight();
        while (!is_terminal(s, sc)) {
            // Uniform over all actions, legal or not.
            const auto r = step(s, sc, a_actions[rng.index(a_actions.size())], d_actions[rng.index(d_actions.size())],
                                rng);
            CHECK(r.attacker_reward + r.defender_reward == 0.0);
            const double av = availability(r.next, sc);
            CHECK(av >= 0.0);
            CHECK(av <= 1.0);
            CHECK(av == doctest::Approx(testing::availability_oracle(r.next, sc)).epsilon(1e-12));
            CHECK(sc.total_weight() == w);
            s = r.next;
            ++steps;
        }
    }
}

TEST_CASE("defender key round-trips detections and indicators") {
    std::mt19937_64 gen(5);
    for (int i = 0; i < 200; ++i) {
        const auto sc = testing::random_scenario(gen);
        GameState s = initial_state(sc);
        for (std::size_t h = 0; h < sc.hosts.size(); ++h) {
            s.detected[h] = gen() % 2;
            s.patched[h] = gen() % 2;
            s.monitored[h] = gen() % 2;
        }
        for (std::size_t n = gen() % 3; n > 0; --n) s.observed_indicators.insert("ex:i" + std::to_string(gen() % 4));
        const auto v = parse_defender_key(defender_key(s));
        CHECK(v.detected == s.detected);
        CHECK(v.indicators == s.observed_indicators);
    }
    CHECK_THROWS_AS(parse_defender_key("nope"), ValidationError);
}

TEST_CASE("align_bonus examples") {
    const auto sc = line3();
    const auto g = six_triples();
    GameState s = initial_state(sc);
    const DefenderAction patch_h1{DefenderKind::patch, 1};

    CHECK(align_bonus(s, patch_h1, sc, g, 2) == 0);  // no indicators yet
    s.observed_indicators = {"ex:i1"};
    CHECK(align_bonus(s, patch_h1, sc, g, 2) == 1);

    auto far = sc;
    far.vulnerable[1] = "ex:ap2";  // i1 -> m1 -> x -> y -> ap2
    CHECK(align_bonus(s, patch_h1, far, g, 2) == 0);
    CHECK(align_bonus(s, patch_h1, far, g, 4) == 1);

    CHECK(align_bonus(s, {DefenderKind::monitor, 1}, sc, g, 2) == 1);  // i1 -> ap1 -> param1
    CHECK(align_bonus(s, {DefenderKind::monitor, 1}, sc, g, 1) == 0);
    CHECK(align_bonus(s, {DefenderKind::isolate, 1}, sc, g, 2) == 0);
    s.detected[1] = true;
    CHECK(align_bonus(s, {DefenderKind::isolate, 1}, sc, g, 2) == 1);
    CHECK(align_bonus(s, {DefenderKind::block, 0}, sc, g, 2) == 0);  // ex:port1 not in the graph
    CHECK(align_bonus(s, {}, sc, g, 2) == 0);
    CHECK_THROWS_AS(align_bonus(s, patch_h1, sc, g, 0), ValidationError);
}

TEST_CASE("align_bonus matches the reachability oracle on random graphs") {
    std::mt19937_64 gen(99);
    for (int i = 0; i < 100; ++i) {
        auto c = testing::random_align_case(gen);
        CHECK(c.graph.size() <= 50);
        const int k = 1 + static_cast<int>(gen() % 3);
        Aligner aligner(c.graph, c.scenario, k);
        for (const auto& a : defender_actions(c.scenario)) {
            const int expected = testing::align_oracle(c.state, a, c.scenario, c.graph, k);
            CHECK(align_bonus(c.state, a, c.scenario, c.graph, k) == expected);
            CHECK(aligner.bonus(c.state, a) == expected);
        }
    }
}

TEST_CASE("reachable_within") {
    const auto g = six_triples();
    CHECK(reachable_within(g, {"ex:i1"}, 0) == std::set<std::string>{"ex:i1"});
    CHECK(reachable_within(g, {"ex:i1"}, 1) == std::set<std::string>{"ex:i1", "ex:ap1", "ex:m1"});
    CHECK(reachable_within(g, {"ex:nowhere"}, 3) == std::set<std::string>{"ex:nowhere"});
}

TEST_CASE("shaping config validation") {
    ShapingConfig c;
    CHECK_NOTHROW(c.validate());
    for (auto bad : {ShapingConfig{-0.1, 2, 0.95, 0.1, 0.2}, ShapingConfig{0.3, 0, 0.95, 0.1, 0.2},
                     ShapingConfig{0.3, 2, 1.0, 0.1, 0.2}, ShapingConfig{0.3, 2, 0.95, 0.0, 0.2},
                     ShapingConfig{0.3, 2, 0.95, 0.1, 1.5}})
        CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("qtable") {
    QTable q(3);
    Rng rng(1);
    CHECK(q.get("s", 1) == 0.0);
    CHECK_FALSE(q.known("s", 1));
    q.set("s", 1, 2.5);
    q.set("s", 2, -1.0);
    CHECK(q.known("s", 1));
    CHECK(q.entries() == 2);
    CHECK(q.max_value("s", {0, 1, 2}) == 2.5);
    CHECK(q.max_value("s", {0, 2}) == 0.0);
    CHECK(q.max_value("s", {0, 2}, true) == -1.0);
    CHECK(q.max_value("t", {0, 1}, true) == 0.0);
    CHECK(q.greedy("s", {0, 1, 2}, TieBreak::first, rng) == 1);
    CHECK(q.greedy("t", {2, 0}, TieBreak::first, rng) == 2);
    CHECK(q.max_abs() == 2.5);
    CHECK_THROWS_AS(q.set("s", 3, 0.0), ValidationError);
    const auto j = nlohmann::json::parse(q.to_json());
    CHECK(j["n_actions"] == 3);
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0][1] == 1);

    std::set<std::size_t> seen;
    for (int i = 0; i < 200; ++i) seen.insert(q.greedy("t", {0, 1, 2}, TieBreak::random, rng));
    CHECK(seen.size() == 3);
}

TEST_CASE("train_selfplay") {
    const auto sc = fixture_scenario();
    const auto g = testing::fixture_graph();

    SUBCASE("beta = 0 is neutral") {
        ShapingConfig off;
        off.beta = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto with = train_selfplay(sc, off, &g, 20, seed);
            const auto without = train_selfplay(sc, off, nullptr, 20, seed);
            CHECK(with.metrics == without.metrics);
            CHECK(with.defender == without.defender);
            CHECK(with.attacker == without.attacker);
        }
    }
    SUBCASE("deterministic in the seed") {
        const auto a = train_selfplay(sc, {}, &g, 30, 7);
        const auto b = train_selfplay(sc, {}, &g, 30, 7);
        CHECK(a.metrics == b.metrics);
        CHECK(a.defender == b.defender);
        const auto c = train_selfplay(sc, {}, &g, 30, 8);
        CHECK_FALSE(a.metrics == c.metrics);
    }
    SUBCASE("one episode of one step gives one update per agent") {
        auto one = sc;
        one.horizon = 1;
        const auto r = train_selfplay(one, {}, &g, 1, 3);
        CHECK(r.metrics.defender_updates == 1);
        CHECK(r.metrics.attacker_updates == 1);
        CHECK(r.metrics.episodes.size() == 1);
        CHECK(r.metrics.episodes[0].length == 1);
    }
    SUBCASE("Q values stay bounded") {
        ShapingConfig shaping;
        const auto guided = train_selfplay(sc, shaping, &g, 200, 11);
        CHECK(guided.defender.max_abs() <= r_max(sc) / (1 - shaping.gamma) + shaping.beta);
        const auto plain = train_selfplay(sc, shaping, nullptr, 200, 11);
        CHECK(plain.defender.max_abs() <= r_max(sc) / (1 - shaping.gamma));
        CHECK(plain.attacker.max_abs() <= r_max(sc) / (1 - shaping.gamma));
    }
    SUBCASE("episode metrics are consistent") {
        const auto r = train_selfplay(sc, {}, &g, 50, 5);
        std::size_t steps = 0;
        for (const auto& m : r.metrics.episodes) {
            CHECK(m.length >= 1);
            CHECK(m.length <= sc.horizon);
            CHECK(m.availability >= 0.0);
            CHECK(m.availability <= 1.0);
            CHECK(m.detected_attempts <= m.attempts);
            steps += static_cast<std::size_t>(m.length);
        }
        CHECK(r.metrics.trajectory.size() == steps);
        CHECK(r.metrics.defender_updates == steps);
    }
    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(train_selfplay(sc, {}, &g, 0, 1), ValidationError);
        ShapingConfig bad;
        bad.gamma = 1.0;
        CHECK_THROWS_AS(train_selfplay(sc, bad, &g, 1, 1), ValidationError);
    }
}

TEST_CASE("train_offline") {
    const auto sc = fixture_scenario();
    const auto g = testing::fixture_graph();
    const ScriptedAttacker attacker(scenario_family(sc), sc);
    const auto log = collect_transitions(sc, UniformDefender(sc), attacker, default_profile(sc), 20, 4);
    REQUIRE_FALSE(log.empty());

    std::set<std::pair<std::string, std::size_t>> pairs;
    for (const auto& t : log) pairs.emplace(t.state, t.action);

    SUBCASE("zero iterations without a graph") {
        const auto q = train_offline(log, sc, nullptr, {}, 0);
        CHECK(q.entries() == pairs.size());
        for (const auto& [s, a] : pairs) {
            CHECK(q.known(s, a));
            CHECK(q.get(s, a) == 0.0);
        }
    }
    SUBCASE("zero iterations with a graph start at beta * align") {
        ShapingConfig shaping;
        shaping.beta = 1.0;
        const GameState s0 = initial_state(sc);
        const std::size_t patch_file = defender_index(sc, DefenderKind::patch, sc.host_index("file"));
        const std::size_t patch_gw = defender_index(sc, DefenderKind::patch, sc.host_index("gw"));
        const std::vector<Transition> two = {{defender_key(s0), patch_file, 0.0, defender_key(s0), true},
                                             {defender_key(s0), patch_gw, 0.0, defender_key(s0), true}};
        const auto q = train_offline(two, sc, &g, shaping, 0);
        CHECK(q.get(defender_key(s0), patch_file) == 1.0);
        CHECK(q.get(defender_key(s0), patch_gw) == 0.0);
        CHECK(q.entries() == 2);

        const auto full = train_offline(log, sc, &g, shaping, 0);
        const auto prior = knowledge_prior(g, sc, shaping);
        const auto actions = defender_actions(sc);
        for (const auto& [key, a] : pairs) {
            const auto view = parse_defender_key(key);
            GameState probe = initial_state(sc);
            probe.detected = view.detected;
            probe.observed_indicators = view.indicators;
            CHECK(full.get(key, a) == prior(probe, actions[a]));
        }
    }
    SUBCASE("one sweep on a terminal transition moves by alpha") {
        ShapingConfig shaping;
        const std::vector<Transition> one = {{"k", 0, 1.0, "k2", true}};
        const auto q = train_offline(one, sc, nullptr, shaping, 1);
        CHECK(q.get("k", 0) == doctest::Approx(shaping.alpha));
    }
    SUBCASE("deterministic and bounded") {
        ShapingConfig shaping;
        const auto a = train_offline(log, sc, &g, shaping, 10);
        const auto b = train_offline(log, sc, &g, shaping, 10);
        CHECK(a == b);
        CHECK(a.max_abs() <= r_max(sc) / (1 - shaping.gamma) + shaping.beta);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(train_offline({}, sc, nullptr, {}, 1), ValidationError);
        CHECK_THROWS_AS(train_offline(log, sc, nullptr, {}, -1), ValidationError);
        const std::vector<Transition> bad = {{"k", 9999, 0.0, "k", true}};
        CHECK_THROWS_AS(train_offline(bad, sc, nullptr, {}, 1), ValidationError);
    }
    SUBCASE("transition log round-trips through JSON lines") {
        const auto text = transitions_jsonl(log);
        CHECK(parse_transitions_jsonl(text) == log);
        CHECK_THROWS_AS(parse_transitions_jsonl("{broken\n"), ParseError);
    }
}

TEST_CASE("evaluate examples") {
    const auto sc = fixture_scenario();
    const auto profile = default_profile(sc);
    const std::vector<std::uint64_t> seeds = {1, 2, 3};
    const auto d_actions = defender_actions(sc);

    SUBCASE("a defender isolating every host drives availability to 0") {
        const FunctionDefender isolate_all([&](const GameState& s, Rng&) {
            for (std::size_t h = 0; h < sc.hosts.size(); ++h)
                if (s.status[h] != HostStatus::isolated) return defender_index(sc, DefenderKind::isolate, h);
            return std::size_t{0};
        });
        const auto r = evaluate(isolate_all, ScriptedAttacker(scenario_family(sc), sc), sc, seeds, profile);
        CHECK(r.availability.mean == 0.0);
        CHECK(r.availability.std == 0.0);
    }
    SUBCASE("an attacker that always waits leaves availability at 1") {
        const FunctionAttacker idle([](const GameState&, Rng&) { return std::size_t{0}; });
        const FunctionDefender still([](const GameState&, Rng&) { return std::size_t{0}; });
        const auto calm = evaluate(still, idle, sc, seeds, profile);
        CHECK(calm.availability.mean == 1.0);
        CHECK_FALSE(calm.detection_rate.has_value());
        CHECK(calm.episode_length.mean == sc.horizon);
        const auto j = nlohmann::json::parse(calm.to_json());
        CHECK(j["detection_rate"].is_null());
    }
    SUBCASE("detection rate counts detected exploit attempts") {
        const FunctionDefender watch_all([&](const GameState& s, Rng&) {
            for (std::size_t h = 0; h < sc.hosts.size(); ++h)
                if (!s.monitored[h] && s.status[h] != HostStatus::isolated)
                    return defender_index(sc, DefenderKind::monitor, h);
            return std::size_t{0};
        });
        // Exploits only start once every sensor is up.
        const std::size_t n = sc.hosts.size();
        const AttackerFamily fam = scenario_family(sc);
        const ScriptedAttacker scripted(fam, sc);
        const FunctionAttacker late([&](const GameState& s, Rng& rng) {
            return s.step < static_cast<int>(n) ? attacker_index(sc, AttackerKind::wait) : scripted.choose(s, rng);
        });
        const auto r = evaluate(watch_all, late, sc, seeds, profile);
        REQUIRE(r.detection_rate.has_value());
        CHECK(r.detection_rate->mean == 1.0);
    }
    SUBCASE("report JSON round-trip") {
        const auto r = evaluate(UniformDefender(sc), ScriptedAttacker(scenario_family(sc), sc), sc, seeds, profile);
        CHECK(r.per_seed.size() == seeds.size());
        CHECK(MetricsReport::from_json(r.to_json()) == r);
        CHECK_THROWS_AS(MetricsReport::from_json("{}"), ValidationError);
        CHECK_THROWS_AS(evaluate(UniformDefender(sc), ScriptedAttacker(scenario_family(sc), sc), sc, {}, profile),
                        ValidationError);
    }
    SUBCASE("summarize uses the population deviation") {
        const Stat s = summarize({1.0, 3.0});
        CHECK(s.mean == 2.0);
        CHECK(s.std == 1.0);
    }
}

TEST_CASE("scripted attacker only picks legal actions") {
    const auto sc = fixture_scenario();
    const auto a_actions = attacker_actions(sc);
    const auto d_actions = defender_actions(sc);
    const auto fam = read_family_file(testing::fixture_path("rl/families/lateral.json"));
    const ScriptedAttacker attacker(fam, sc);
    const UniformDefender defender(sc);
    Rng rng(17);
    for (int ep = 0; ep < 30; ++ep) {
        GameState s = initial_state(sc, rng);
        while (!is_terminal(s, sc)) {
            const auto a = a_actions[attacker.choose(s, rng)];
            CHECK(is_legal(a, s, sc));
            if (a.kind == AttackerKind::exploit) CHECK(fam.profile.techniques.count(sc.vulnerable.at(a.target)) == 1);
            s = step(s, sc, a, d_actions[defender.choose(s, rng)], rng, fam.profile).next;
        }
    }
}

TEST_CASE("simulate matches the serial reference") {
    const auto sc = fixture_scenario();
    const auto g = testing::fixture_graph();
    SimulationConfig cfg;
    cfg.episodes = 20;
    cfg.seeds = {1, 2, 3, 4};
    for (bool guided : {true, false}) {
        cfg.guided = guided;
        CHECK(simulate(sc, &g, cfg) == simulate_serial(sc, &g, cfg));
    }
    cfg.opponent = Opponent::self_play;
    CHECK(simulate(sc, &g, cfg) == simulate_serial(sc, &g, cfg));
    cfg.seeds.clear();
    CHECK_THROWS_AS(simulate(sc, &g, cfg), ValidationError);
}
