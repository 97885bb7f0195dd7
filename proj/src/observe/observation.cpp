#include "ckg/observe/observation.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <map>

namespace ckg::observe {

std::string direction_iri(ChangeDirection d, const kg::Ontology& ont) {
    switch (d) {
    case ChangeDirection::increases: return ont.increases();
    case ChangeDirection::decreases: return ont.decreases();
    case ChangeDirection::none: break;
    }
    return ont.no_change();
}

ChangeDirection mean_change(double mean, double baseline, double eps) {
    if (mean > baseline * (1.0 + eps)) return ChangeDirection::increases;
    if (mean < baseline * (1.0 - eps)) return ChangeDirection::decreases;
    return ChangeDirection::none;
}

FlowField parse_flow_field(std::string_view s) {
    if (s == "bytes") return FlowField::bytes;
    if (s == "packets") return FlowField::packets;
    if (s == "bytes_per_packet") return FlowField::bytes_per_packet;
    throw ValidationError("unknown flow field '" + std::string(s) + "'");
}

namespace {

double field_value(const FlowRecord& r, FlowField f) {
    switch (f) {
    case FlowField::bytes: return static_cast<double>(r.bytes);
    case FlowField::packets: return static_cast<double>(r.packets);
    case FlowField::bytes_per_packet: break;
    }
    return static_cast<double>(r.bytes) / static_cast<double>(r.packets);
}

}  // namespace

std::vector<Observation> construct_observations(const std::vector<FlowRecord>& records, const ParameterSpec& spec,
                                                const std::vector<AdminPolicy>& policies, const WindowConfig& cfg) {
    if (!(cfg.window > 0)) throw ValidationError("window must be positive");
    if (!(cfg.epsilon > 0)) throw ValidationError("epsilon must be positive");
    const double baseline = spec.baseline_mean.value_or(cfg.baseline_mean);
    if (!(baseline > 0)) throw ValidationError("baseline mean must be positive");

    // Bucket values by window index; the per-window reduction is independent.
    std::map<long long, std::vector<double>> buckets;
    for (const auto& r : records) {
        if (spec.traffic_class && classify(r, policies) != *spec.traffic_class) continue;
        const auto k = static_cast<long long>(std::floor((r.timestamp - cfg.origin) / cfg.window));
        buckets[k].push_back(field_value(r, spec.field));
    }

    std::vector<const std::pair<const long long, std::vector<double>>*> windows;
    windows.reserve(buckets.size());
    for (const auto& b : buckets) windows.push_back(&b);

    std::vector<Observation> out(windows.size());
    const auto n = static_cast<std::ptrdiff_t>(windows.size());
#pragma omp parallel for schedule(static) default(none) shared(windows, out, spec, cfg, n, baseline)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& [k, values] = *windows[static_cast<std::size_t>(i)];
        double sum = 0.0;
        for (double v : values) sum += v;
        Observation& o = out[static_cast<std::size_t>(i)];
        o.parameter = spec.parameter;
        o.window_start = cfg.origin + static_cast<double>(k) * cfg.window;
        o.window_end = cfg.origin + static_cast<double>(k + 1) * cfg.window;
        o.mean = sum / static_cast<double>(values.size());
        o.baseline_mean = baseline;
        o.direction = mean_change(o.mean, baseline, cfg.epsilon);
    }
    return out;
}

double verify_alignment(const Observation& obs, const kg::Graph& graph, const kg::Ontology& ont) {
    const std::array<std::string, 3> terms = {obs.parameter, ont.parameter_change(), direction_iri(obs.direction, ont)};
    int hits = 0;
    for (const auto& t : terms) hits += graph.in_vocabulary(t) ? 1 : 0;
    return hits / 3.0;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

std::string observation_iri(const Observation& obs, const kg::Ontology& ont) {
    std::string local = "obs-";
    for (char c : obs.parameter) local += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    local += "-" + format_number(obs.window_start) + "-" + format_number(obs.window_end);
    return ont.iri(local);
}

AssertionOutcome assert_observation(const Observation& obs, kg::Graph& graph, const kg::Ontology& ont,
                                    double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw ValidationError("alignment threshold must lie in [0, 1]");
    AssertionOutcome out{obs, false, verify_alignment(obs, graph, ont), threshold};
    if (out.score < threshold) return out;

    using kg::Term;
    const std::string dir = direction_iri(obs.direction, ont);
    const std::string node = observation_iri(obs, ont);
    graph.assert_triple(obs.parameter, ont.parameter_change(), Term::iri(dir));
    graph.assert_triple(node, kg::kRdfType, Term::iri(ont.observation()));
    graph.assert_triple(node, ont.observed_parameter(), Term::iri(obs.parameter));
    graph.assert_triple(node, ont.parameter_change(), Term::iri(dir));
    graph.assert_triple(node, ont.window_start(), Term::literal(format_number(obs.window_start)));
    graph.assert_triple(node, ont.window_end(), Term::literal(format_number(obs.window_end)));
    out.asserted = true;
    return out;
}

std::string rejection_jsonl(const std::vector<AssertionOutcome>& outcomes, const kg::Ontology& ont) {
    std::string out;
    for (const auto& o : outcomes) {
        if (o.asserted) continue;
        nlohmann::json line{{"observation",
                             {{"parameter", o.observation.parameter},
                              {"direction", direction_iri(o.observation.direction, ont)},
                              {"window_start", o.observation.window_start},
                              {"window_end", o.observation.window_end},
                              {"mean", o.observation.mean},
                              {"baseline_mean", o.observation.baseline_mean}}},
                            {"score", o.score},
                            {"threshold", o.threshold}};
        out += line.dump() + "\n";
    }
    return out;
}

}  // namespace ckg::observe
