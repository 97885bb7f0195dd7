#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/kg/ontology.hpp"
#include "ckg/observe/observation.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ckg::rules {

enum class RuleAction { alert, block };

std::string_view to_string(RuleAction a);

// "Malware M is active via attack pattern A, evidenced by parameter P".
struct Hypothesis {
    std::string id;
    std::string malware;
    std::string attack_pattern;
    std::string parameter;
    std::set<std::string> evidence_terms;
    RuleAction action = RuleAction::alert;
    std::string protocol = "ip";
    std::optional<std::uint16_t> port;

    friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

// "h-" + 16 hex digits of FNV-1a over (malware, attack pattern, parameter).
std::string hypothesis_id(std::string_view malware, std::string_view attack_pattern, std::string_view parameter);

// True when a triple (a p b) or (b p a) with p in {indicates, targets,
// parameterchange} links the two IRIs.
bool linked(const kg::Graph& g, const kg::Ontology& ont, const std::string& a, const std::string& b);

// One hypothesis per (malware uses attack-pattern) pair whose attack
// pattern is linked to an observed parameter with a non-trivial direction.
// Both individuals must carry their ontology type. The proposed action is
// block when some course of action mitigates the attack pattern. Port and
// protocol come from ckg:port / ckg:protocol literals on the attack
// pattern, falling back to the parameter. Sorted by (parameter, malware,
// attack pattern).
std::vector<Hypothesis> extract_hypotheses(const kg::Graph& g, const std::vector<observe::Observation>& observations,
                                           const kg::Ontology& ont);

}  // namespace ckg::rules
