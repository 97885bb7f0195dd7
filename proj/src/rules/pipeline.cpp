#include "ckg/rules/pipeline.hpp"

#include "ckg/rules/entailment.hpp"

#include <algorithm>
#include <map>

namespace ckg::rules {

std::string PipelineResult::rules_text() const {
    std::string out;
    for (const auto& r : rules) out += r + "\n";
    return out;
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

}  // namespace

PipelineResult run_pipeline(kg::Graph& graph, const std::vector<observe::FlowRecord>& records,
                            const std::vector<observe::AdminPolicy>& policies, const PipelineConfig& cfg,
                            const EntailmentScorer& scorer, const kg::Ontology& ont) {
    PipelineResult res;

    std::vector<observe::Observation> observed = stage("observe", [&] {
        if (cfg.first_sid < kFirstLocalSid) throw ValidationError("first sid must be >= 1000001");
        observe::validate_policies(policies);
        std::vector<observe::Observation> all;
        for (const auto& spec : cfg.parameters) {
            auto part = observe::construct_observations(records, spec, policies, cfg.window);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    });

    std::vector<observe::Observation> accepted = stage("verify", [&] {
        if (!(cfg.align_threshold >= 0.0 && cfg.align_threshold <= 1.0))
            throw ValidationError("alignment threshold must lie in [0, 1]");
        std::vector<observe::Observation> ok;
        for (const auto& o : observed) {
            auto outcome = observe::assert_observation(o, graph, ont, cfg.align_threshold);
            if (outcome.asserted && o.direction != observe::ChangeDirection::none) ok.push_back(o);
            res.outcomes.push_back(std::move(outcome));
        }
        return ok;
    });

    res.hypotheses = stage("hypothesize", [&] { return extract_hypotheses(graph, accepted, ont); });

    std::map<std::string, std::vector<observe::Observation>> by_param;
    for (const auto& o : accepted) by_param[o.parameter].push_back(o);

    res.scored = stage("score", [&] {
        std::vector<Candidate> candidates;
        for (const auto& h : res.hypotheses)
            candidates.push_back({h.id, form_entailment(h, by_param.at(h.parameter), ont)});
        return score_all(scorer, candidates, graph);
    });

    stage("rank", [&] {
        std::map<std::string, std::vector<ScoredEntailment>> groups;
        for (std::size_t i = 0; i < res.hypotheses.size(); ++i)
            groups[res.hypotheses[i].parameter].push_back(res.scored[i]);
        for (const auto& [param, group] : groups) res.selected.push_back(rank_and_select(group));
        return 0;
    });

    stage("emit", [&] {
        std::map<std::string, const Hypothesis*> by_id;
        for (const auto& h : res.hypotheses) by_id[h.id] = &h;
        std::uint32_t sid = cfg.first_sid;
        for (const auto& id : res.selected) res.rules.push_back(emit_rule(*by_id.at(id), sid++));
        return 0;
    });

    return res;
}

}  // namespace ckg::rules
