#pragma once

#include "ckg/rl/rng.hpp"
#include "ckg/rl/scenario.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace ckg::rl {

enum class HostStatus : std::uint8_t { healthy, compromised, isolated };

struct GameState {
    std::vector<HostStatus> status;
    std::vector<bool> patched;
    std::vector<bool> blocked;   // per edge
    std::vector<bool> detected;  // defender knows the host is compromised
    std::vector<bool> monitored; // sensor deployed by monitor(host); persists
    bool scanned = false;        // attacker has mapped the network
    std::set<std::string> observed_indicators;
    int step = 0;

    friend bool operator==(const GameState&, const GameState&) = default;
};

enum class DefenderKind : std::uint8_t { wait, monitor, patch, isolate, restore, block };
enum class AttackerKind : std::uint8_t { wait, scan, exploit, lateral_move, exfiltrate };

struct DefenderAction {
    DefenderKind kind = DefenderKind::wait;
    std::size_t target = 0;  // host, or edge for block
    friend bool operator==(const DefenderAction&, const DefenderAction&) = default;
};

struct AttackerAction {
    AttackerKind kind = AttackerKind::wait;
    std::size_t target = 0;  // host; destination for lateral_move
    std::size_t source = 0;  // lateral_move only
    friend bool operator==(const AttackerAction&, const AttackerAction&) = default;
};

std::string to_string(const DefenderAction& a, const NetworkScenario& sc);
std::string to_string(const AttackerAction& a, const NetworkScenario& sc);

// Fixed action enumerations. Index 0 is wait for both players.
std::vector<DefenderAction> defender_actions(const NetworkScenario& sc);
std::vector<AttackerAction> attacker_actions(const NetworkScenario& sc);

bool is_legal(const DefenderAction& a, const GameState& s, const NetworkScenario& sc);
bool is_legal(const AttackerAction& a, const GameState& s, const NetworkScenario& sc);

// Techniques the attacker can exploit (empty = any) and the indicators its
// activity leaves behind.
struct AttackerProfile {
    std::set<std::string> techniques;
    std::vector<std::string> indicators;
};

AttackerProfile default_profile(const NetworkScenario& sc);

// Entry host drawn from entry_points when present.
GameState initial_state(const NetworkScenario& sc, Rng& rng);
GameState initial_state(const NetworkScenario& sc);

// Sum of service weights on healthy, non-isolated hosts reachable from the
// gateway over unblocked edges through non-isolated hosts.
double availability(const GameState& s, const NetworkScenario& sc);

struct StepEvents {
    bool defender_illegal = false;
    bool attacker_illegal = false;
    bool attacker_preempted = false;  // legal when chosen, invalid after the defender moved
    bool exploit_attempt = false;   // exploit actually attempted
    int newly_compromised = 0;
    int detections = 0;
};

struct StepResult {
    GameState next;
    double defender_reward = 0.0;
    double attacker_reward = 0.0;
    StepEvents events;
};

// Simultaneous move, defender resolved first. Throws ValidationError when
// state.step >= horizon.
StepResult step(const GameState& state, const NetworkScenario& sc, const AttackerAction& attacker,
                const DefenderAction& defender, Rng& rng, const AttackerProfile& profile);
StepResult step(const GameState& state, const NetworkScenario& sc, const AttackerAction& attacker,
                const DefenderAction& defender, Rng& rng);

// Horizon reached or no host left compromised.
bool is_terminal(const GameState& s, const NetworkScenario& sc);

// Canonical keys. The defender sees isolation, sensors, patches, blocks,
// detections and indicators; the attacker sees host status,
// patches, blocks and whether it has scanned.
std::string defender_key(const GameState& s);
std::string attacker_key(const GameState& s);

}  // namespace ckg::rl
