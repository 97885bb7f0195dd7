#include "ckg/rules/scorer.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace ckg::rules {

using kg::Term;

void ScoreWeights::validate() const {
    if (cosine < 0 || support < 0 || match_rate < 0) throw ValidationError("score weights must be non-negative");
    if (std::abs(cosine + support + match_rate - 1.0) > 1e-9) throw ValidationError("score weights must sum to 1");
}

double bag_cosine(std::span<const std::string> a, std::span<const std::string> b) {
    std::map<std::string_view, std::pair<double, double>> counts;
    for (const auto& t : a) counts[t].first += 1;
    for (const auto& t : b) counts[t].second += 1;
    double dot = 0, na = 0, nb = 0;
    for (const auto& [_, c] : counts) {
        dot += c.first * c.second;
        na += c.first * c.first;
        nb += c.second * c.second;
    }
    if (na == 0 || nb == 0) return 0.0;
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double combine(const ScoreParts& p, const ScoreWeights& w) {
    return w.cosine * p.cosine + w.support * p.support + w.match_rate * p.match_rate;
}

CorrelationScorer::CorrelationScorer(kg::Ontology ont, ScoreWeights w) : ont_(std::move(ont)), weights_(w) {
    weights_.validate();
}

ScoreParts CorrelationScorer::parts(const Entailment& e, const kg::Graph& g) const {
    validate_entailment(e);
    ScoreParts p;
    const auto hyp = e.hypothesis_segment();
    const auto obs = e.observation_segment();
    p.cosine = bag_cosine(hyp, obs);

    // hypothesis segment: malware uses attack_pattern action target
    if (hyp.size() >= kHypothesisTokens) {
        const std::string& m = hyp[0];
        const std::string& ap = hyp[2];
        const std::string& target = hyp[4];
        const Term type = Term::iri(std::string(kg::kRdfType));
        int present = 0;
        present += g.contains({Term::iri(m), Term::iri(hyp[1]), Term::iri(ap)});
        present += g.contains({Term::iri(m), type, Term::iri(ont_.malware())});
        present += g.contains({Term::iri(ap), type, Term::iri(ont_.attack_pattern())});
        present += linked(g, ont_, ap, target);
        p.support = present / 4.0;

        std::set<std::string_view> hood;
        for (const std::string* node : {&m, &ap, &target}) {
            hood.insert(*node);
            const Term n = Term::iri(*node);
            for (std::size_t idx : g.by_subject(n)) {
                const auto& t = g.triples()[idx];
                hood.insert(t.predicate.value);
                hood.insert(t.object.value);
            }
            for (std::size_t idx : g.by_object(n)) {
                const auto& t = g.triples()[idx];
                hood.insert(t.predicate.value);
                hood.insert(t.subject.value);
            }
        }
        std::size_t hits = 0;
        for (const auto& t : obs) hits += hood.count(t);
        p.match_rate = obs.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(obs.size());
    }
    return p;
}

ScoreResult CorrelationScorer::score(const Entailment& e, const kg::Graph& g) const {
    const ScoreParts p = parts(e, g);
    return {std::clamp(combine(p, weights_), 0.0, 1.0), p};
}

namespace {

ScoredEntailment score_one(const EntailmentScorer& scorer, const Candidate& c, const kg::Graph& g) {
    ScoreResult r = scorer.score(c.entailment, g);
    if (!(r.score >= 0.0 && r.score <= 1.0)) throw ValidationError("scorer returned a score outside [0, 1]");
    return {c.entailment, c.hypothesis_id, r.score, r.parts};
}

}  // namespace

std::vector<ScoredEntailment> score_all_serial(const EntailmentScorer& scorer,
                                               const std::vector<Candidate>& candidates, const kg::Graph& g) {
    std::vector<ScoredEntailment> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) out.push_back(score_one(scorer, c, g));
    return out;
}

std::vector<ScoredEntailment> score_all(const EntailmentScorer& scorer, const std::vector<Candidate>& candidates,
                                        const kg::Graph& g) {
    std::vector<ScoredEntailment> out(candidates.size());
    const long n = static_cast<long>(candidates.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = score_one(scorer, candidates[static_cast<std::size_t>(i)], g);
        } catch (...) {
#pragma omp critical(ckg_score_all_error)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::string rank_and_select(const std::vector<ScoredEntailment>& scored) {
    if (scored.empty()) throw ValidationError("rank_and_select needs at least one scored entailment");
    const ScoredEntailment* best = &scored.front();
    for (const auto& s : scored) {
        if (s.score > best->score || (s.score == best->score && s.hypothesis_id < best->hypothesis_id)) best = &s;
    }
    return best->hypothesis_id;
}

std::string ranked_report_json(const std::vector<ScoredEntailment>& scored) {
    std::vector<const ScoredEntailment*> order;
    for (const auto& s : scored) order.push_back(&s);
    std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        if (a->score != b->score) return a->score > b->score;
        return a->hypothesis_id < b->hypothesis_id;
    });
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto* s : order) {
        nlohmann::ordered_json item;
        item["hypothesis_id"] = s->hypothesis_id;
        item["score"] = s->score;
        if (s->parts) {
            item["score_parts"] = {{"cosine", s->parts->cosine},
                                   {"support", s->parts->support},
                                   {"match_rate", s->parts->match_rate}};
        } else {
            item["score_parts"] = nullptr;
        }
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

}  // namespace ckg::rules
