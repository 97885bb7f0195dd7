#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ckg::rl {

struct Service {
    std::string name;
    double availability_weight = 0.0;
};

struct Host {
    std::string id;
    std::vector<Service> services;
    std::optional<std::string> parameter;  // SystemParameter IRI watched by monitor(host)
};

// Undirected link. `port` names the service IRI that block(edge) cuts.
struct Edge {
    std::size_t a = 0;
    std::size_t b = 0;
    std::optional<std::string> port;
};

struct Dynamics {
    double p_exploit = 0.6;
    double p_exploit_scanned = 0.9;
    double p_lateral = 0.2;
    double compromise_penalty = 0.1;
    double detection_reward = 0.5;
};

struct NetworkScenario {
    std::vector<Host> hosts;
    std::vector<Edge> edges;
    std::map<std::size_t, std::string> vulnerable;  // host -> attack pattern IRI
    std::vector<std::size_t> initial_compromised;
    // When non-empty, each episode starts from one entry point drawn
    // uniformly instead of `initial_compromised`.
    std::vector<std::size_t> entry_points;
    std::size_t gateway = 0;
    int horizon = 1;
    std::vector<std::string> initial_indicators;  // known to the defender at t=0
    std::vector<std::string> indicators;          // revealed when the attacker is detected
    std::vector<std::string> techniques;          // attack patterns the attacker can exploit (empty = any)
    // Action-kind preferences of the scenario's scripted attacker
    // (wait, scan, exploit, lateral_move, exfiltrate).
    std::map<std::string, double> attacker_weights;
    Dynamics dynamics;

    std::size_t host_index(const std::string& id) const;  // throws ValidationError
    double total_weight() const;
    double host_weight(std::size_t h) const;

    // Weights sum to 1, graph connected, horizon >= 1, indices in range,
    // probabilities in [0, 1]. Throws ValidationError.
    void validate() const;
};

// JSON: {gateway, horizon, hosts:[{id, services:[{name, weight}], parameter?}],
// edges:[{from, to, port?}], vulnerable:{host: iri}, initial_compromised:[...],
// entry_points?, initial_indicators?, indicators?, techniques?, attacker_weights?,
// dynamics?}
NetworkScenario parse_scenario(const std::string& json_text);
NetworkScenario read_scenario_file(const std::string& path);

}  // namespace ckg::rl
