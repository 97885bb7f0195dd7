#pragma once

#include "ckg/error.hpp"
#include "ckg/kg/graph.hpp"
#include "ckg/kg/ontology.hpp"
#include "ckg/observe/observation.hpp"
#include "ckg/rules/hypothesis.hpp"
#include "ckg/rules/rule.hpp"
#include "ckg/rules/scorer.hpp"

#include <string>
#include <vector>

namespace ckg::rules {

// Wraps a failure with the name of the pipeline stage that raised it.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct PipelineConfig {
    std::vector<observe::ParameterSpec> parameters;
    observe::WindowConfig window;
    double align_threshold = 0.5;
    std::uint32_t first_sid = kFirstLocalSid;
};

struct PipelineResult {
    std::vector<observe::AssertionOutcome> outcomes;
    std::vector<Hypothesis> hypotheses;
    std::vector<ScoredEntailment> scored;
    std::vector<std::string> selected;  // one hypothesis id per observed parameter
    std::vector<std::string> rules;

    std::string rules_text() const;
};

// observe -> verify -> hypothesize -> score -> rank -> emit. Asserted
// observations are added to `graph`. Errors from each stage surface as
// StageError. Entailments pair each hypothesis with the asserted,
// non-trivial observations of its parameter.
PipelineResult run_pipeline(kg::Graph& graph, const std::vector<observe::FlowRecord>& records,
                            const std::vector<observe::AdminPolicy>& policies, const PipelineConfig& cfg,
                            const EntailmentScorer& scorer, const kg::Ontology& ont = kg::Ontology());

}  // namespace ckg::rules
