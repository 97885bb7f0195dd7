#include "ckg/rl/policy.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ckg::rl {

std::vector<std::size_t> legal_defender(const GameState& s, const NetworkScenario& sc,
                                        const std::vector<DefenderAction>& actions) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < actions.size(); ++i)
        if (is_legal(actions[i], s, sc)) out.push_back(i);
    return out;
}

std::vector<std::size_t> legal_attacker(const GameState& s, const NetworkScenario& sc,
                                        const std::vector<AttackerAction>& actions) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < actions.size(); ++i)
        if (is_legal(actions[i], s, sc)) out.push_back(i);
    return out;
}

GreedyDefender::GreedyDefender(const QTable& q, const NetworkScenario& sc, TieBreak tie, QPrior prior)
    : q_(&q), sc_(&sc), actions_(defender_actions(sc)), tie_(tie), prior_(std::move(prior)) {}

std::size_t GreedyDefender::choose(const GameState& s, Rng& rng) const {
    const auto legal = legal_defender(s, *sc_, actions_);
    const std::string key = defender_key(s);
    if (!prior_) return q_->greedy(key, legal, tie_, rng);
    std::vector<std::size_t> best;
    double best_v = 0.0;
    for (std::size_t a : legal) {
        const double v = q_->known(key, a) ? q_->get(key, a) : prior_(s, actions_[a]);
        if (best.empty() || v > best_v) {
            best_v = v;
            best.assign(1, a);
        } else if (v == best_v) {
            best.push_back(a);
        }
    }
    if (tie_ == TieBreak::first || best.size() == 1) return best.front();
    return best[rng.index(best.size())];
}

GreedyAttacker::GreedyAttacker(const QTable& q, const NetworkScenario& sc, TieBreak tie)
    : q_(&q), sc_(&sc), actions_(attacker_actions(sc)), tie_(tie) {}

std::size_t GreedyAttacker::choose(const GameState& s, Rng& rng) const {
    return q_->greedy(attacker_key(s), legal_attacker(s, *sc_, actions_), tie_, rng);
}

UniformDefender::UniformDefender(const NetworkScenario& sc) : sc_(&sc), actions_(defender_actions(sc)) {}

std::size_t UniformDefender::choose(const GameState& s, Rng& rng) const {
    auto legal = legal_defender(s, *sc_, actions_);
    return legal[rng.index(legal.size())];
}

namespace {

AttackerKind parse_kind(const std::string& s) {
    if (s == "wait") return AttackerKind::wait;
    if (s == "scan") return AttackerKind::scan;
    if (s == "exploit") return AttackerKind::exploit;
    if (s == "lateral_move") return AttackerKind::lateral_move;
    if (s == "exfiltrate") return AttackerKind::exfiltrate;
    throw ValidationError("unknown attacker action kind '" + s + "'");
}

}  // namespace

AttackerFamily parse_family(const std::string& json_text) {
    AttackerFamily f;
    try {
        const auto doc = nlohmann::json::parse(json_text);
        f.name = doc.at("name").get<std::string>();
        for (const auto& t : doc.value("techniques", std::vector<std::string>{})) f.profile.techniques.insert(t);
        f.profile.indicators = doc.value("indicators", std::vector<std::string>{});
        f.initial_indicators = doc.value("initial_indicators", std::vector<std::string>{});
        for (const auto& [k, v] : doc.at("weights").items()) {
            const double w = v.get<double>();
            if (!(w >= 0.0)) throw ValidationError("family weights must be non-negative");
            f.weights[parse_kind(k)] = w;
        }
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("family: ") + e.what(), e.byte);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("family: ") + e.what());
    }
    if (f.name.empty()) throw ValidationError("family name must be non-empty");
    return f;
}

AttackerFamily read_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read family file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_family(ss.str());
}

ScriptedAttacker::ScriptedAttacker(AttackerFamily family, const NetworkScenario& sc)
    : family_(std::move(family)), sc_(&sc), actions_(attacker_actions(sc)) {}

std::size_t ScriptedAttacker::choose(const GameState& s, Rng& rng) const {
    std::map<AttackerKind, std::vector<std::size_t>> by_kind;
    for (std::size_t i : legal_attacker(s, *sc_, actions_)) by_kind[actions_[i].kind].push_back(i);

    auto& exploits = by_kind[AttackerKind::exploit];
    if (!family_.profile.techniques.empty()) {
        std::vector<std::size_t> preferred;
        for (std::size_t i : exploits) {
            auto v = sc_->vulnerable.find(actions_[i].target);
            if (v != sc_->vulnerable.end() && family_.profile.techniques.count(v->second)) preferred.push_back(i);
        }
        exploits = std::move(preferred);
    }

    double total = 0.0;
    for (const auto& [kind, idx] : by_kind) {
        auto w = family_.weights.find(kind);
        if (!idx.empty() && w != family_.weights.end()) total += w->second;
    }
    if (total <= 0.0) return 0;
    double r = rng.uniform() * total;
    for (const auto& [kind, idx] : by_kind) {
        auto w = family_.weights.find(kind);
        if (idx.empty() || w == family_.weights.end() || w->second <= 0.0) continue;
        if (r < w->second) return idx[rng.index(idx.size())];
        r -= w->second;
    }
    for (auto it = by_kind.rbegin(); it != by_kind.rend(); ++it) {
        auto w = family_.weights.find(it->first);
        if (!it->second.empty() && w != family_.weights.end() && w->second > 0.0)
            return it->second[rng.index(it->second.size())];
    }
    return 0;
}

AttackerFamily scenario_family(const NetworkScenario& sc) {
    AttackerFamily f;
    f.name = "scenario";
    f.profile = default_profile(sc);
    f.initial_indicators = sc.initial_indicators;
    for (const auto& [k, w] : sc.attacker_weights) f.weights[parse_kind(k)] = w;
    if (f.weights.empty())
        for (auto k : {AttackerKind::wait, AttackerKind::scan, AttackerKind::exploit, AttackerKind::lateral_move,
                       AttackerKind::exfiltrate})
            f.weights[k] = 1.0;
    return f;
}

NetworkScenario with_family(const NetworkScenario& sc, const AttackerFamily& family) {
    NetworkScenario out = sc;
    out.initial_indicators = family.initial_indicators;
    out.indicators = family.profile.indicators;
    out.techniques.assign(family.profile.techniques.begin(), family.profile.techniques.end());
    return out;
}

}  // namespace ckg::rl
