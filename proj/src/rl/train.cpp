#include "ckg/rl/train.hpp"

#include "ckg/error.hpp"
#include "ckg/rl/align.hpp"

#include <json.hpp>

#include <memory>
#include <sstream>

namespace ckg::rl {

namespace {

std::size_t explore_or_exploit(const QTable& q, const std::string& key, const std::vector<std::size_t>& legal,
                               const std::vector<std::size_t>& aligned, double eps, Rng& rng) {
    if (rng.uniform() < eps) {
        const auto& pool = aligned.empty() ? legal : aligned;
        return pool[rng.index(pool.size())];
    }
    return q.greedy(key, legal, TieBreak::random, rng);
}

void q_update(QTable& q, const std::string& key, std::size_t a, double target, double alpha) {
    const double old = q.get(key, a);
    q.set(key, a, old + alpha * (target - old));
}

// Unvisited defender pairs start at the knowledge prior.
void seed_prior(QTable& q, const std::string& key, const GameState& s, const std::vector<std::size_t>& legal,
                const std::vector<DefenderAction>& actions, Aligner& aligner, double beta) {
    for (std::size_t a : legal)
        if (!q.known(key, a)) q.set(key, a, beta * aligner.bonus(s, actions[a]));
}

}  // namespace

SelfPlayResult train_selfplay(const NetworkScenario& sc, const ShapingConfig& shaping, const kg::Graph* graph,
                              int episodes, std::uint64_t seed) {
    sc.validate();
    shaping.validate();
    if (episodes < 1) throw ValidationError("episodes must be >= 1");

    const auto d_actions = defender_actions(sc);
    const auto a_actions = attacker_actions(sc);
    SelfPlayResult res{QTable(d_actions.size()), QTable(a_actions.size()), {}};
    const bool guided = graph != nullptr && shaping.beta > 0.0;
    std::unique_ptr<Aligner> aligner;
    if (guided) aligner = std::make_unique<Aligner>(*graph, sc, shaping.k);

    Rng env(seed);
    Rng agent(seed ^ 0x9e3779b97f4a7c15ULL);
    const AttackerProfile profile = default_profile(sc);

    for (int ep = 0; ep < episodes; ++ep) {
        GameState s = initial_state(sc, env);
        const double start_avail = availability(s, sc);
        EpisodeMetrics m;
        while (!is_terminal(s, sc)) {
            const std::string dkey = defender_key(s);
            const std::string akey = attacker_key(s);
            const auto d_legal = legal_defender(s, sc, d_actions);
            const auto a_legal = legal_attacker(s, sc, a_actions);

            std::vector<std::size_t> aligned;
            if (guided) seed_prior(res.defender, dkey, s, d_legal, d_actions, *aligner, shaping.beta);
            if (guided)
                for (std::size_t i : d_legal)
                    if (aligner->bonus(s, d_actions[i])) aligned.push_back(i);

            const std::size_t d = explore_or_exploit(res.defender, dkey, d_legal, aligned, shaping.epsilon, agent);
            const std::size_t a = explore_or_exploit(res.attacker, akey, a_legal, {}, shaping.epsilon, agent);
            StepResult r = step(s, sc, a_actions[a], d_actions[d], env, profile);

            double shaped = r.defender_reward;
            if (guided) shaped += shaping.beta * aligner->bonus(s, d_actions[d]);

            const bool done = is_terminal(r.next, sc);
            double d_next = 0.0, a_next = 0.0;
            if (!done) {
                const std::string nkey = defender_key(r.next);
                const auto n_legal = legal_defender(r.next, sc, d_actions);
                if (guided) seed_prior(res.defender, nkey, r.next, n_legal, d_actions, *aligner, shaping.beta);
                d_next = res.defender.max_value(nkey, n_legal);
                a_next = res.attacker.max_value(attacker_key(r.next), legal_attacker(r.next, sc, a_actions));
            }
            q_update(res.defender, dkey, d, shaped + shaping.gamma * d_next, shaping.alpha);
            q_update(res.attacker, akey, a, r.attacker_reward + shaping.gamma * a_next, shaping.alpha);
            ++res.metrics.defender_updates;
            ++res.metrics.attacker_updates;
            res.metrics.trajectory.emplace_back(static_cast<std::uint16_t>(d), static_cast<std::uint16_t>(a));

            m.detections += r.events.detections;
            if (r.events.exploit_attempt) {
                ++m.attempts;
                if (r.events.detections) ++m.detected_attempts;
            }
            s = std::move(r.next);
        }
        m.length = s.step;
        m.availability = start_avail > 0.0 ? availability(s, sc) / start_avail : 0.0;
        res.metrics.episodes.push_back(m);
    }
    return res;
}

std::vector<Transition> collect_transitions(const NetworkScenario& sc, const DefenderPolicy& behavior,
                                            const AttackerPolicy& attacker, const AttackerProfile& profile,
                                            int episodes, std::uint64_t seed) {
    sc.validate();
    if (episodes < 1) throw ValidationError("episodes must be >= 1");
    const auto d_actions = defender_actions(sc);
    const auto a_actions = attacker_actions(sc);
    Rng env(seed);
    Rng agent(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Transition> out;
    for (int ep = 0; ep < episodes; ++ep) {
        GameState s = initial_state(sc, env);
        while (!is_terminal(s, sc)) {
            const std::size_t d = behavior.choose(s, agent);
            const std::size_t a = attacker.choose(s, agent);
            StepResult r = step(s, sc, a_actions.at(a), d_actions.at(d), env, profile);
            out.push_back({defender_key(s), d, r.defender_reward, defender_key(r.next), is_terminal(r.next, sc)});
            s = std::move(r.next);
        }
    }
    return out;
}

QPrior knowledge_prior(const kg::Graph& g, const NetworkScenario& sc, const ShapingConfig& shaping) {
    auto aligner = std::make_shared<Aligner>(g, sc, shaping.k);
    const double beta = shaping.beta;
    return [aligner, beta](const GameState& s, const DefenderAction& a) { return beta * aligner->bonus(s, a); };
}

DefenderView parse_defender_key(const std::string& key) {
    DefenderView v;
    const auto first = key.find('|');
    if (first == std::string::npos) throw ValidationError("malformed defender key");
    for (std::size_t i = 0; i < first; ++i) {
        const char c = key[i];
        int code = -1;
        if (c >= '0' && c <= '9') code = c - '0';
        else if (c >= 'a' && c <= 'f') code = c - 'a' + 10;
        if (code < 0) throw ValidationError("malformed defender key");
        v.detected.push_back((code & 2) != 0);
    }
    const auto second = key.find('|', first + 1);
    if (second == std::string::npos) throw ValidationError("malformed defender key");
    std::string rest = key.substr(second + 1);
    std::size_t pos = 0;
    while (!rest.empty() && pos <= rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) v.indicators.insert(item);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return v;
}

QTable train_offline(const std::vector<Transition>& transitions, const NetworkScenario& sc, const kg::Graph* graph,
                     const ShapingConfig& shaping, int iterations) {
    if (transitions.empty()) throw ValidationError("offline training needs at least one transition");
    shaping.validate();
    if (iterations < 0) throw ValidationError("iterations must be >= 0");
    const auto d_actions = defender_actions(sc);
    QTable q(d_actions.size());

    std::unique_ptr<Aligner> aligner;
    if (graph) aligner = std::make_unique<Aligner>(*graph, sc, shaping.k);
    for (const auto& t : transitions) {
        if (t.action >= d_actions.size()) throw ValidationError("transition action out of range");
        if (q.known(t.state, t.action)) continue;
        double init = 0.0;
        if (aligner) {
            const DefenderView v = parse_defender_key(t.state);
            init = shaping.beta * aligner->bonus(v.indicators, v.detected, d_actions[t.action]);
        }
        q.set(t.state, t.action, init);
    }

    std::vector<std::size_t> all(d_actions.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (int it = 0; it < iterations; ++it) {
        for (const auto& t : transitions) {
            const double next = t.terminal ? 0.0 : q.max_value(t.next_state, all, true);
            const double old = q.get(t.state, t.action);
            q.set(t.state, t.action, old + shaping.alpha * (t.reward + shaping.gamma * next - old));
        }
    }
    return q;
}

std::string transitions_jsonl(const std::vector<Transition>& transitions) {
    std::string out;
    for (const auto& t : transitions) {
        nlohmann::ordered_json j;
        j["state"] = t.state;
        j["action"] = t.action;
        j["reward"] = t.reward;
        j["next_state"] = t.next_state;
        j["terminal"] = t.terminal;
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<Transition> parse_transitions_jsonl(const std::string& text) {
    std::vector<Transition> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            out.push_back({j.at("state").get<std::string>(), j.at("action").get<std::size_t>(),
                           j.at("reward").get<double>(), j.at("next_state").get<std::string>(),
                           j.value("terminal", false)});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("transitions: ") + e.what(), lineno);
        }
    }
    return out;
}

}  // namespace ckg::rl
