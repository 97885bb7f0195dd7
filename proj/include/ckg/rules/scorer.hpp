#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/kg/ontology.hpp"
#include "ckg/rules/entailment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ckg::rules {

struct ScoreParts {
    double cosine = 0.0;
    double support = 0.0;
    double match_rate = 0.0;
};

struct ScoreWeights {
    double cosine = 0.5;
    double support = 0.25;
    double match_rate = 0.25;

    // Non-negative and summing to 1 (within 1e-9).
    void validate() const;
};

// w.cosine*cosine + w.support*support + w.match_rate*match_rate
double combine(const ScoreParts& p, const ScoreWeights& w);

struct ScoreResult {
    double score = 0.0;
    std::optional<ScoreParts> parts;
};

// Ranks an entailment against the graph. Implementations must return a
// score in [0, 1] and be safe to call concurrently.
class EntailmentScorer {
public:
    virtual ~EntailmentScorer() = default;
    virtual ScoreResult score(const Entailment& e, const kg::Graph& g) const = 0;
};

// Weighted sum of
//   cosine     bag-of-tokens cosine between the two segments
//   support    fraction of the hypothesis' four triples found in the graph
//              (malware uses pattern, both type triples, pattern-target link)
//   match_rate fraction of observation tokens inside the 1-hop neighbourhood
//              of malware, attack pattern and target
class CorrelationScorer final : public EntailmentScorer {
public:
    explicit CorrelationScorer(kg::Ontology ont = kg::Ontology(), ScoreWeights w = {});

    ScoreResult score(const Entailment& e, const kg::Graph& g) const override;
    ScoreParts parts(const Entailment& e, const kg::Graph& g) const;

    const ScoreWeights& weights() const noexcept { return weights_; }

private:
    kg::Ontology ont_;
    ScoreWeights weights_;
};

double bag_cosine(std::span<const std::string> a, std::span<const std::string> b);

struct ScoredEntailment {
    Entailment entailment;
    std::string hypothesis_id;
    double score = 0.0;
    std::optional<ScoreParts> parts;
};

struct Candidate {
    std::string hypothesis_id;
    Entailment entailment;
};

// Scores candidates in parallel; output order follows input order.
std::vector<ScoredEntailment> score_all(const EntailmentScorer& scorer, const std::vector<Candidate>& candidates,
                                        const kg::Graph& g);
std::vector<ScoredEntailment> score_all_serial(const EntailmentScorer& scorer,
                                               const std::vector<Candidate>& candidates, const kg::Graph& g);

// Highest score, ties to the lexicographically smallest hypothesis id.
// Throws ValidationError on an empty list.
std::string rank_and_select(const std::vector<ScoredEntailment>& scored);

// JSON array of {hypothesis_id, score, score_parts} sorted by descending
// score then id.
std::string ranked_report_json(const std::vector<ScoredEntailment>& scored);

}  // namespace ckg::rules
