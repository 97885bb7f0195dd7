#include "ckg/rl/game.hpp"

#include "ckg/error.hpp"

#include <queue>

namespace ckg::rl {

namespace {

const char* kind_name(DefenderKind k) {
    switch (k) {
        case DefenderKind::wait: return "wait";
        case DefenderKind::monitor: return "monitor";
        case DefenderKind::patch: return "patch";
        case DefenderKind::isolate: return "isolate";
        case DefenderKind::restore: return "restore";
        case DefenderKind::block: return "block";
    }
    return "?";
}

const char* kind_name(AttackerKind k) {
    switch (k) {
        case AttackerKind::wait: return "wait";
        case AttackerKind::scan: return "scan";
        case AttackerKind::exploit: return "exploit";
        case AttackerKind::lateral_move: return "lateral_move";
        case AttackerKind::exfiltrate: return "exfiltrate";
    }
    return "?";
}

bool edge_between(const GameState& s, const NetworkScenario& sc, std::size_t x, std::size_t y) {
    for (std::size_t e = 0; e < sc.edges.size(); ++e) {
        const auto& ed = sc.edges[e];
        if (!s.blocked[e] && ((ed.a == x && ed.b == y) || (ed.a == y && ed.b == x))) return true;
    }
    return false;
}

}  // namespace

std::string to_string(const DefenderAction& a, const NetworkScenario& sc) {
    switch (a.kind) {
        case DefenderKind::wait: return "wait";
        case DefenderKind::block: {
            const auto& e = sc.edges.at(a.target);
            return "block(" + sc.hosts[e.a].id + "," + sc.hosts[e.b].id + ")";
        }
        default: return std::string(kind_name(a.kind)) + "(" + sc.hosts.at(a.target).id + ")";
    }
}

std::string to_string(const AttackerAction& a, const NetworkScenario& sc) {
    switch (a.kind) {
        case AttackerKind::wait:
        case AttackerKind::scan: return kind_name(a.kind);
        case AttackerKind::lateral_move:
            return "lateral_move(" + sc.hosts.at(a.source).id + "," + sc.hosts.at(a.target).id + ")";
        default: return std::string(kind_name(a.kind)) + "(" + sc.hosts.at(a.target).id + ")";
    }
}

std::vector<DefenderAction> defender_actions(const NetworkScenario& sc) {
    std::vector<DefenderAction> out{{DefenderKind::wait, 0}};
    for (auto k : {DefenderKind::monitor, DefenderKind::patch, DefenderKind::isolate, DefenderKind::restore})
        for (std::size_t h = 0; h < sc.hosts.size(); ++h) out.push_back({k, h});
    for (std::size_t e = 0; e < sc.edges.size(); ++e) out.push_back({DefenderKind::block, e});
    return out;
}

std::vector<AttackerAction> attacker_actions(const NetworkScenario& sc) {
    std::vector<AttackerAction> out{{AttackerKind::wait, 0, 0}, {AttackerKind::scan, 0, 0}};
    for (std::size_t h = 0; h < sc.hosts.size(); ++h) out.push_back({AttackerKind::exploit, h, 0});
    for (const auto& e : sc.edges) {
        out.push_back({AttackerKind::lateral_move, e.b, e.a});
        out.push_back({AttackerKind::lateral_move, e.a, e.b});
    }
    for (std::size_t h = 0; h < sc.hosts.size(); ++h) out.push_back({AttackerKind::exfiltrate, h, 0});
    return out;
}

bool is_legal(const DefenderAction& a, const GameState& s, const NetworkScenario& sc) {
    switch (a.kind) {
        case DefenderKind::wait: return true;
        case DefenderKind::block: return a.target < sc.edges.size() && !s.blocked[a.target];
        default: break;
    }
    if (a.target >= sc.hosts.size()) return false;
    const HostStatus st = s.status[a.target];
    switch (a.kind) {
        case DefenderKind::monitor: return st != HostStatus::isolated && !s.monitored[a.target];
        case DefenderKind::patch: return st != HostStatus::isolated && !s.patched[a.target];
        case DefenderKind::isolate: return st != HostStatus::isolated;
        case DefenderKind::restore: return st == HostStatus::isolated;
        default: return false;
    }
}

bool is_legal(const AttackerAction& a, const GameState& s, const NetworkScenario& sc) {
    switch (a.kind) {
        case AttackerKind::wait: return true;
        case AttackerKind::scan: return !s.scanned;
        case AttackerKind::exfiltrate: return a.target < sc.hosts.size() && s.status[a.target] == HostStatus::compromised;
        case AttackerKind::exploit: {
            if (a.target >= sc.hosts.size() || s.status[a.target] != HostStatus::healthy) return false;
            for (std::size_t c = 0; c < sc.hosts.size(); ++c)
                if (s.status[c] == HostStatus::compromised && edge_between(s, sc, c, a.target)) return true;
            return false;
        }
        case AttackerKind::lateral_move:
            return a.source < sc.hosts.size() && a.target < sc.hosts.size() &&
                   s.status[a.source] == HostStatus::compromised && s.status[a.target] == HostStatus::healthy &&
                   edge_between(s, sc, a.source, a.target);
    }
    return false;
}

AttackerProfile default_profile(const NetworkScenario& sc) {
    return {{sc.techniques.begin(), sc.techniques.end()}, sc.indicators};
}

GameState initial_state(const NetworkScenario& sc) {
    GameState s;
    s.status.assign(sc.hosts.size(), HostStatus::healthy);
    s.patched.assign(sc.hosts.size(), false);
    s.detected.assign(sc.hosts.size(), false);
    s.monitored.assign(sc.hosts.size(), false);
    s.blocked.assign(sc.edges.size(), false);
    for (std::size_t h : sc.initial_compromised) s.status[h] = HostStatus::compromised;
    s.observed_indicators.insert(sc.initial_indicators.begin(), sc.initial_indicators.end());
    return s;
}

GameState initial_state(const NetworkScenario& sc, Rng& rng) {
    GameState s = initial_state(sc);
    if (!sc.entry_points.empty()) {
        std::fill(s.status.begin(), s.status.end(), HostStatus::healthy);
        s.status[sc.entry_points[rng.index(sc.entry_points.size())]] = HostStatus::compromised;
    }
    return s;
}

double availability(const GameState& s, const NetworkScenario& sc) {
    if (s.status[sc.gateway] == HostStatus::isolated) return 0.0;
    std::vector<bool> seen(sc.hosts.size(), false);
    std::queue<std::size_t> q;
    q.push(sc.gateway);
    seen[sc.gateway] = true;
    double total = 0.0;
    while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        if (s.status[u] == HostStatus::healthy) total += sc.host_weight(u);
        for (std::size_t e = 0; e < sc.edges.size(); ++e) {
            if (s.blocked[e]) continue;
            const auto& ed = sc.edges[e];
            std::size_t v;
            if (ed.a == u) v = ed.b;
            else if (ed.b == u) v = ed.a;
            else continue;
            if (!seen[v] && s.status[v] != HostStatus::isolated) {
                seen[v] = true;
                q.push(v);
            }
        }
    }
    return std::min(total, 1.0);
}

StepResult step(const GameState& state, const NetworkScenario& sc, const AttackerAction& attacker,
                const DefenderAction& defender, Rng& rng) {
    return step(state, sc, attacker, defender, rng, default_profile(sc));
}

StepResult step(const GameState& state, const NetworkScenario& sc, const AttackerAction& attacker,
                const DefenderAction& defender, Rng& rng, const AttackerProfile& profile) {
    if (state.step >= sc.horizon) throw ValidationError("step called past horizon");
    StepResult res;
    res.next = state;
    GameState& n = res.next;
    StepEvents& ev = res.events;
    // One draw per tick keeps the random stream independent of the actions.
    const double u = rng.uniform();

    DefenderAction d = defender;
    if (!is_legal(d, state, sc)) {
        ev.defender_illegal = true;
        d = {};
    }
    AttackerAction a = attacker;
    if (!is_legal(a, state, sc)) {
        ev.attacker_illegal = true;
        a = {};
    }

    switch (d.kind) {
        case DefenderKind::monitor: n.monitored[d.target] = true; break;
        case DefenderKind::patch: n.patched[d.target] = true; break;
        case DefenderKind::isolate: n.status[d.target] = HostStatus::isolated; break;
        case DefenderKind::restore:
            n.status[d.target] = HostStatus::healthy;
            n.detected[d.target] = false;
            break;
        case DefenderKind::block: n.blocked[d.target] = true; break;
        default: break;
    }

    if (!is_legal(a, n, sc)) {
        ev.attacker_preempted = true;
        a = {};
    }

    std::vector<std::size_t> touched;
    switch (a.kind) {
        case AttackerKind::scan: n.scanned = true; break;
        case AttackerKind::exploit: {
            ev.exploit_attempt = true;
            touched.push_back(a.target);
            auto vuln = sc.vulnerable.find(a.target);
            const bool exploitable = vuln != sc.vulnerable.end() && !n.patched[a.target] &&
                                     (profile.techniques.empty() || profile.techniques.count(vuln->second));
            const double p = n.scanned ? sc.dynamics.p_exploit_scanned : sc.dynamics.p_exploit;
            if (exploitable && u < p) {
                n.status[a.target] = HostStatus::compromised;
                ev.newly_compromised = 1;
            }
            break;
        }
        case AttackerKind::lateral_move:
            touched.push_back(a.source);
            touched.push_back(a.target);
            if (u < sc.dynamics.p_lateral) {
                n.status[a.target] = HostStatus::compromised;
                ev.newly_compromised = 1;
            }
            break;
        case AttackerKind::exfiltrate: touched.push_back(a.target); break;
        default: break;
    }

    for (std::size_t h : touched) {
        if (!n.monitored[h]) continue;
        ev.detections = 1;
        n.observed_indicators.insert(profile.indicators.begin(), profile.indicators.end());
        for (std::size_t t : touched)
            if (n.status[t] == HostStatus::compromised) n.detected[t] = true;
        break;
    }

    n.step = state.step + 1;
    res.defender_reward = (availability(n, sc) - availability(state, sc)) -
                          sc.dynamics.compromise_penalty * ev.newly_compromised +
                          sc.dynamics.detection_reward * ev.detections;
    res.attacker_reward = -res.defender_reward;
    return res;
}

bool is_terminal(const GameState& s, const NetworkScenario& sc) {
    if (s.step >= sc.horizon) return true;
    if (s.step == 0) return false;
    for (auto st : s.status)
        if (st == HostStatus::compromised) return false;
    return true;
}

namespace {

void append_bits(std::string& out, const std::vector<bool>& bits) {
    for (bool b : bits) out += b ? '1' : '0';
    out += '|';
}

void append_indicators(std::string& out, const std::set<std::string>& inds) {
    bool first = true;
    for (const auto& i : inds) {
        if (!first) out += ',';
        out += i;
        first = false;
    }
}

}  // namespace

std::string defender_key(const GameState& s) {
    std::string out;
    for (std::size_t h = 0; h < s.status.size(); ++h) {
        const int code = (s.status[h] == HostStatus::isolated ? 8 : 0) + (s.monitored[h] ? 4 : 0) +
                         (s.detected[h] ? 2 : 0) + (s.patched[h] ? 1 : 0);
        out += "0123456789abcdef"[code];
    }
    out += '|';
    append_bits(out, s.blocked);
    append_indicators(out, s.observed_indicators);
    return out;
}

std::string attacker_key(const GameState& s) {
    std::string out;
    for (auto st : s.status) out += static_cast<char>('0' + static_cast<int>(st));
    out += '|';
    append_bits(out, s.patched);
    append_bits(out, s.blocked);
    out += s.scanned ? 's' : '-';
    return out;
}

}  // namespace ckg::rl
