#include "ckg/rl/scenario.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace ckg::rl {

std::size_t NetworkScenario::host_index(const std::string& id) const {
    for (std::size_t i = 0; i < hosts.size(); ++i)
        if (hosts[i].id == id) return i;
    throw ValidationError("unknown host '" + id + "'");
}

double NetworkScenario::host_weight(std::size_t h) const {
    double w = 0.0;
    for (const auto& s : hosts.at(h).services) w += s.availability_weight;
    return w;
}

double NetworkScenario::total_weight() const {
    double w = 0.0;
    for (std::size_t h = 0; h < hosts.size(); ++h) w += host_weight(h);
    return w;
}

void NetworkScenario::validate() const {
    if (hosts.empty()) throw ValidationError("scenario has no hosts");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    std::set<std::string> ids;
    for (const auto& h : hosts) {
        if (h.id.empty()) throw ValidationError("host id must be non-empty");
        if (!ids.insert(h.id).second) throw ValidationError("duplicate host id '" + h.id + "'");
        for (const auto& s : h.services)
            if (!(s.availability_weight >= 0.0)) throw ValidationError("service weights must be non-negative");
    }
    if (std::abs(total_weight() - 1.0) > 1e-9) throw ValidationError("availability weights must sum to 1");
    if (gateway >= hosts.size()) throw ValidationError("gateway out of range");
    for (const auto& e : edges)
        if (e.a >= hosts.size() || e.b >= hosts.size() || e.a == e.b) throw ValidationError("invalid edge");
    for (const auto& [h, ap] : vulnerable)
        if (h >= hosts.size() || ap.empty()) throw ValidationError("invalid vulnerable entry");
    for (std::size_t h : initial_compromised)
        if (h >= hosts.size()) throw ValidationError("initial compromised host out of range");
    for (std::size_t h : entry_points)
        if (h >= hosts.size()) throw ValidationError("entry point out of range");
    for (double p : {dynamics.p_exploit, dynamics.p_exploit_scanned, dynamics.p_lateral})
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probabilities must lie in [0, 1]");
    for (const auto& [kind, w] : attacker_weights) {
        if (kind != "wait" && kind != "scan" && kind != "exploit" && kind != "lateral_move" && kind != "exfiltrate")
            throw ValidationError("unknown attacker action kind '" + kind + "'");
        if (!(w >= 0.0)) throw ValidationError("attacker weights must be non-negative");
    }
    if (!(dynamics.compromise_penalty >= 0.0) || !(dynamics.detection_reward >= 0.0))
        throw ValidationError("reward constants must be non-negative");

    std::vector<bool> seen(hosts.size(), false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        for (const auto& e : edges) {
            for (auto [x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
                if (x == u && !seen[y]) {
                    seen[y] = true;
                    q.push(y);
                }
            }
        }
    }
    for (bool s : seen)
        if (!s) throw ValidationError("scenario network must be connected");
}

NetworkScenario parse_scenario(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what(), e.byte);
    }
    NetworkScenario sc;
    try {
        for (const auto& h : doc.at("hosts")) {
            Host host;
            host.id = h.at("id").get<std::string>();
            for (const auto& s : h.value("services", nlohmann::json::array()))
                host.services.push_back({s.at("name").get<std::string>(), s.at("weight").get<double>()});
            if (h.contains("parameter")) host.parameter = h.at("parameter").get<std::string>();
            sc.hosts.push_back(std::move(host));
        }
        for (const auto& e : doc.value("edges", nlohmann::json::array())) {
            Edge edge{sc.host_index(e.at("from").get<std::string>()), sc.host_index(e.at("to").get<std::string>()),
                      std::nullopt};
            if (e.contains("port")) edge.port = e.at("port").get<std::string>();
            sc.edges.push_back(std::move(edge));
        }
        const auto vulnerable = doc.value("vulnerable", nlohmann::json::object());
        for (const auto& [host, ap] : vulnerable.items())
            sc.vulnerable[sc.host_index(host)] = ap.get<std::string>();
        for (const auto& h : doc.value("initial_compromised", nlohmann::json::array()))
            sc.initial_compromised.push_back(sc.host_index(h.get<std::string>()));
        for (const auto& h : doc.value("entry_points", nlohmann::json::array()))
            sc.entry_points.push_back(sc.host_index(h.get<std::string>()));
        sc.gateway = sc.host_index(doc.at("gateway").get<std::string>());
        sc.horizon = doc.at("horizon").get<int>();
        sc.initial_indicators = doc.value("initial_indicators", std::vector<std::string>{});
        sc.indicators = doc.value("indicators", std::vector<std::string>{});
        sc.techniques = doc.value("techniques", std::vector<std::string>{});
        sc.attacker_weights = doc.value("attacker_weights", std::map<std::string, double>{});
        if (doc.contains("dynamics")) {
            const auto& d = doc.at("dynamics");
            sc.dynamics.p_exploit = d.value("p_exploit", sc.dynamics.p_exploit);
            sc.dynamics.p_exploit_scanned = d.value("p_exploit_scanned", sc.dynamics.p_exploit_scanned);
            sc.dynamics.p_lateral = d.value("p_lateral", sc.dynamics.p_lateral);
            sc.dynamics.compromise_penalty = d.value("compromise_penalty", sc.dynamics.compromise_penalty);
            sc.dynamics.detection_reward = d.value("detection_reward", sc.dynamics.detection_reward);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("scenario: ") + e.what());
    }
    sc.validate();
    return sc;
}

NetworkScenario read_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace ckg::rl
