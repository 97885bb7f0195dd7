#include "ckg/cli/config.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace ckg::cli {

void Config::validate() const {
    if (prefix.empty()) throw ValidationError("prefix must be non-empty");
    if (!(align_threshold >= 0.0 && align_threshold <= 1.0))
        throw ValidationError("align_threshold must lie in [0, 1]");
    if (!(window.window > 0.0)) throw ValidationError("window must be positive");
    if (!(window.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
    if (!(window.baseline_mean > 0.0)) throw ValidationError("baseline_mean must be positive");
    weights.validate();
    shaping.validate();
    if (episodes < 1) throw ValidationError("episodes must be >= 1");
    if (eval_episodes < 1) throw ValidationError("eval_episodes must be >= 1");
    for (const auto& p : parameters) {
        if (p.parameter.empty()) throw ValidationError("parameter IRI must be non-empty");
        if (p.baseline_mean && !(*p.baseline_mean > 0.0))
            throw ValidationError("parameter baseline_mean must be positive");
    }
}

std::vector<std::uint64_t> Config::seed_list() const { return seeds.empty() ? std::vector{seed} : seeds; }

namespace {

std::string resolve(const std::string& path, const std::string& base) {
    if (path.empty() || base.empty() || std::filesystem::path(path).is_absolute()) return path;
    return (std::filesystem::path(base) / path).lexically_normal().string();
}

const std::set<std::string> kKeys = {"prefix", "align_threshold", "epsilon", "window", "baseline_mean", "origin",
                                     "w_cosine", "w_support", "w_match_rate", "beta", "k", "gamma", "alpha",
                                     "epsilon_explore", "graph", "policies", "scenario", "seed", "seeds",
                                     "episodes", "eval_episodes", "first_sid", "parameters"};

}  // namespace

Config parse_config(const std::string& json_text, const std::string& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw ValidationError("config must be a JSON object");
    for (const auto& [key, _] : doc.items())
        if (!kKeys.count(key)) throw ValidationError("config: unknown key '" + key + "'");

    Config c;
    try {
        c.prefix = doc.value("prefix", c.prefix);
        c.align_threshold = doc.value("align_threshold", c.align_threshold);
        c.window.epsilon = doc.value("epsilon", c.window.epsilon);
        c.window.window = doc.value("window", c.window.window);
        c.window.baseline_mean = doc.value("baseline_mean", c.window.baseline_mean);
        c.window.origin = doc.value("origin", c.window.origin);
        c.weights.cosine = doc.value("w_cosine", c.weights.cosine);
        c.weights.support = doc.value("w_support", c.weights.support);
        c.weights.match_rate = doc.value("w_match_rate", c.weights.match_rate);
        c.shaping.beta = doc.value("beta", c.shaping.beta);
        c.shaping.k = doc.value("k", c.shaping.k);
        c.shaping.gamma = doc.value("gamma", c.shaping.gamma);
        c.shaping.alpha = doc.value("alpha", c.shaping.alpha);
        c.shaping.epsilon = doc.value("epsilon_explore", c.shaping.epsilon);
        c.graph = resolve(doc.value("graph", c.graph), base_dir);
        c.policies = resolve(doc.value("policies", c.policies), base_dir);
        c.scenario = resolve(doc.value("scenario", c.scenario), base_dir);
        c.seed = doc.value("seed", c.seed);
        c.seeds = doc.value("seeds", c.seeds);
        c.episodes = doc.value("episodes", c.episodes);
        c.eval_episodes = doc.value("eval_episodes", c.eval_episodes);
        c.first_sid = doc.value("first_sid", c.first_sid);
        for (const auto& p : doc.value("parameters", nlohmann::json::array())) {
            observe::ParameterSpec spec;
            spec.parameter = p.at("parameter").get<std::string>();
            spec.field = observe::parse_flow_field(p.value("field", std::string("bytes")));
            if (p.contains("class")) spec.traffic_class = p.at("class").get<std::string>();
            if (p.contains("baseline_mean")) spec.baseline_mean = p.at("baseline_mean").get<double>();
            c.parameters.push_back(std::move(spec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

Config read_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    auto number = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("invalid seed '" + s + "'");
        return std::stoull(s);
    };
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) {
            out.push_back(number(item));
            continue;
        }
        const auto lo = number(item.substr(0, dash));
        const auto hi = number(item.substr(dash + 1));
        if (hi < lo) throw ValidationError("invalid seed range '" + item + "'");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
    }
    if (out.empty()) throw ValidationError("seed list is empty");
    return out;
}

}  // namespace ckg::cli
