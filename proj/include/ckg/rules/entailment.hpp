#pragma once

#include "ckg/kg/ontology.hpp"
#include "ckg/observe/observation.hpp"
#include "ckg/rules/hypothesis.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ckg::rules {

inline constexpr std::string_view kStartToken = "[START]";
inline constexpr std::string_view kSepToken = "[SEP]";

// [START] malware uses attack_pattern action target [SEP] (parameter direction)...
struct Entailment {
    std::vector<std::string> tokens;

    std::span<const std::string> hypothesis_segment() const;
    std::span<const std::string> observation_segment() const;

    friend bool operator==(const Entailment&, const Entailment&) = default;
};

inline constexpr std::size_t kHypothesisTokens = 5;

// Throws ValidationError unless tokens start with [START], contain exactly
// one [SEP], and both segments are non-empty.
void validate_entailment(const Entailment& e);

// Observations are ordered by window start. Throws ValidationError when
// `observations` is empty.
Entailment form_entailment(const Hypothesis& h, std::vector<observe::Observation> observations,
                           const kg::Ontology& ont);

}  // namespace ckg::rules
