#pragma once

#include "ckg/rl/game.hpp"
#include "ckg/rl/qtable.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ckg::rl {

std::vector<std::size_t> legal_defender(const GameState& s, const NetworkScenario& sc,
                                        const std::vector<DefenderAction>& actions);
std::vector<std::size_t> legal_attacker(const GameState& s, const NetworkScenario& sc,
                                        const std::vector<AttackerAction>& actions);

// Policies return indices into defender_actions(sc) / attacker_actions(sc).
class DefenderPolicy {
public:
    virtual ~DefenderPolicy() = default;
    virtual std::size_t choose(const GameState& s, Rng& rng) const = 0;
};

class AttackerPolicy {
public:
    virtual ~AttackerPolicy() = default;
    virtual std::size_t choose(const GameState& s, Rng& rng) const = 0;
};

// Value of a (state, action) pair that has no entry in the table.
using QPrior = std::function<double(const GameState&, const DefenderAction&)>;

class GreedyDefender final : public DefenderPolicy {
public:
    GreedyDefender(const QTable& q, const NetworkScenario& sc, TieBreak tie = TieBreak::random, QPrior prior = {});
    std::size_t choose(const GameState& s, Rng& rng) const override;

private:
    const QTable* q_;
    const NetworkScenario* sc_;
    std::vector<DefenderAction> actions_;
    TieBreak tie_;
    QPrior prior_;
};

class GreedyAttacker final : public AttackerPolicy {
public:
    GreedyAttacker(const QTable& q, const NetworkScenario& sc, TieBreak tie = TieBreak::random);
    std::size_t choose(const GameState& s, Rng& rng) const override;

private:
    const QTable* q_;
    const NetworkScenario* sc_;
    std::vector<AttackerAction> actions_;
    TieBreak tie_;
};

// Uniform over legal actions.
class UniformDefender final : public DefenderPolicy {
public:
    explicit UniformDefender(const NetworkScenario& sc);
    std::size_t choose(const GameState& s, Rng& rng) const override;

private:
    const NetworkScenario* sc_;
    std::vector<DefenderAction> actions_;
};

// Wraps a callable; handy for scripted defenders in tests and tools.
class FunctionDefender final : public DefenderPolicy {
public:
    explicit FunctionDefender(std::function<std::size_t(const GameState&, Rng&)> f) : f_(std::move(f)) {}
    std::size_t choose(const GameState& s, Rng& rng) const override { return f_(s, rng); }

private:
    std::function<std::size_t(const GameState&, Rng&)> f_;
};

class FunctionAttacker final : public AttackerPolicy {
public:
    explicit FunctionAttacker(std::function<std::size_t(const GameState&, Rng&)> f) : f_(std::move(f)) {}
    std::size_t choose(const GameState& s, Rng& rng) const override { return f_(s, rng); }

private:
    std::function<std::size_t(const GameState&, Rng&)> f_;
};

// Scripted attacker behaviour profile.
struct AttackerFamily {
    std::string name;
    AttackerProfile profile;
    std::vector<std::string> initial_indicators;  // threat intel the defender starts with
    std::map<AttackerKind, double> weights;       // preference per action kind
};

// JSON: {name, techniques:[iri], indicators:[iri], initial_indicators:[iri],
// weights:{scan, exploit, lateral_move, exfiltrate, wait}}
AttackerFamily parse_family(const std::string& json_text);
AttackerFamily read_family_file(const std::string& path);

// Picks an action kind with probability proportional to its weight among
// kinds that have a legal action, then a target uniformly. With a
// technique set, exploits only target hosts vulnerable to one of them.
class ScriptedAttacker final : public AttackerPolicy {
public:
    ScriptedAttacker(AttackerFamily family, const NetworkScenario& sc);
    std::size_t choose(const GameState& s, Rng& rng) const override;
    const AttackerFamily& family() const noexcept { return family_; }

private:
    AttackerFamily family_;
    const NetworkScenario* sc_;
    std::vector<AttackerAction> actions_;
};

// The scenario's own scripted attacker: its techniques, indicators and
// attacker_weights (uniform over kinds when no weights are given).
AttackerFamily scenario_family(const NetworkScenario& sc);

// Copy of `sc` whose initial and revealed indicators come from the family.
NetworkScenario with_family(const NetworkScenario& sc, const AttackerFamily& family);

}  // namespace ckg::rl
