#include "ckg/rules/entailment.hpp"

#include "ckg/error.hpp"

#include <algorithm>

namespace ckg::rules {

namespace {

std::size_t sep_index(const std::vector<std::string>& tokens) {
    auto it = std::find(tokens.begin(), tokens.end(), kSepToken);
    return static_cast<std::size_t>(it - tokens.begin());
}

}  // namespace

std::span<const std::string> Entailment::hypothesis_segment() const {
    const std::size_t sep = sep_index(tokens);
    if (tokens.empty() || sep == 0) return {};
    return std::span<const std::string>(tokens).subspan(1, sep - 1);
}

std::span<const std::string> Entailment::observation_segment() const {
    const std::size_t sep = sep_index(tokens);
    if (sep >= tokens.size()) return {};
    return std::span<const std::string>(tokens).subspan(sep + 1);
}

void validate_entailment(const Entailment& e) {
    if (e.tokens.empty() || e.tokens.front() != kStartToken) throw ValidationError("entailment must begin with [START]");
    if (std::count(e.tokens.begin(), e.tokens.end(), kSepToken) != 1)
        throw ValidationError("entailment must contain exactly one [SEP]");
    if (std::count(e.tokens.begin(), e.tokens.end(), kStartToken) != 1)
        throw ValidationError("entailment must contain exactly one [START]");
    if (e.hypothesis_segment().empty() || e.observation_segment().empty())
        throw ValidationError("entailment segments must be non-empty");
    for (const auto& t : e.tokens)
        if (t.empty()) throw ValidationError("entailment contains an empty token");
}

Entailment form_entailment(const Hypothesis& h, std::vector<observe::Observation> observations,
                           const kg::Ontology& ont) {
    if (observations.empty()) throw ValidationError("entailment needs at least one observation");
    std::stable_sort(observations.begin(), observations.end(),
                     [](const auto& a, const auto& b) { return a.window_start < b.window_start; });

    Entailment e;
    e.tokens.reserve(2 + kHypothesisTokens + 2 * observations.size());
    e.tokens.emplace_back(kStartToken);
    e.tokens.push_back(h.malware);
    e.tokens.push_back(ont.uses());
    e.tokens.push_back(h.attack_pattern);
    e.tokens.emplace_back(to_string(h.action));
    e.tokens.push_back(h.parameter);
    e.tokens.emplace_back(kSepToken);
    for (const auto& o : observations) {
        e.tokens.push_back(o.parameter);
        e.tokens.push_back(observe::direction_iri(o.direction, ont));
    }
    validate_entailment(e);
    return e;
}

}  // namespace ckg::rules
