#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/kg/ontology.hpp"
#include "ckg/observe/flow.hpp"
#include "ckg/observe/policy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ckg::observe {

enum class ChangeDirection { increases, decreases, none };

std::string direction_iri(ChangeDirection d, const kg::Ontology& ont);

// increases if mean > baseline*(1+eps), decreases if mean < baseline*(1-eps),
// none otherwise.
ChangeDirection mean_change(double mean, double baseline, double eps);

enum class FlowField { bytes, packets, bytes_per_packet };

FlowField parse_flow_field(std::string_view s);

// Which windowed statistic feeds a SystemParameter.
struct ParameterSpec {
    std::string parameter;                    // SystemParameter IRI
    FlowField field = FlowField::bytes;
    std::optional<std::string> traffic_class;  // filter by classify() label
    std::optional<double> baseline_mean;       // overrides WindowConfig::baseline_mean
};

struct Observation {
    std::string parameter;
    ChangeDirection direction = ChangeDirection::none;
    double window_start = 0.0;
    double window_end = 0.0;
    double mean = 0.0;
    double baseline_mean = 0.0;

    friend bool operator==(const Observation&, const Observation&) = default;
};

struct WindowConfig {
    double window = 60.0;  // seconds
    double baseline_mean = 1.0;
    double epsilon = 0.1;
    double origin = 0.0;  // windows are [origin + k*window, origin + (k+1)*window)
};

// One observation per non-empty window, in time order. Throws
// ValidationError for window <= 0, eps <= 0 or baseline <= 0.
std::vector<Observation> construct_observations(const std::vector<FlowRecord>& records, const ParameterSpec& spec,
                                                const std::vector<AdminPolicy>& policies, const WindowConfig& cfg);

// Fraction of {parameter, parameterchange, direction} found in the graph
// vocabulary.
double verify_alignment(const Observation& obs, const kg::Graph& graph, const kg::Ontology& ont);

struct AssertionOutcome {
    Observation observation;
    bool asserted = false;
    double score = 0.0;
    double threshold = 0.0;
};

// Asserts (parameter parameterchange direction) and provenance triples for
// the window when the alignment score reaches `threshold`.
AssertionOutcome assert_observation(const Observation& obs, kg::Graph& graph, const kg::Ontology& ont,
                                    double threshold = 0.5);

// IRI of the provenance node for an observation window.
std::string observation_iri(const Observation& obs, const kg::Ontology& ont);

// One JSON object per line: {observation, score, threshold}.
std::string rejection_jsonl(const std::vector<AssertionOutcome>& outcomes, const kg::Ontology& ont);

std::string format_number(double v);

}  // namespace ckg::observe
