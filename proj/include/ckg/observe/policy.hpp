#pragma once

#include "ckg/observe/flow.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ckg::observe {

enum class MatchOp { eq, neq, lt, gt, in_range };

struct Condition {
    std::string field;  // a FlowRecord field name
    MatchOp op = MatchOp::eq;
    std::variant<double, std::string> value;
    double upper = 0.0;  // in_range only, inclusive bounds [value, upper]

    bool matches(const FlowRecord& r) const;
};

// All conditions must hold. Higher priority wins.
struct AdminPolicy {
    std::string id;
    std::vector<Condition> match;
    std::string label;
    int priority = 0;

    bool matches(const FlowRecord& r) const;
};

inline constexpr std::string_view kUnclassified = "unclassified";

// Throws ValidationError on duplicate ids or unknown fields/operators.
void validate_policies(const std::vector<AdminPolicy>& policies);

// JSON array of {id, match: condition | [condition...], label, priority};
// condition = {field, op, value} with value [lo, hi] for "in-range".
std::vector<AdminPolicy> parse_policies(std::string_view json_text);
std::vector<AdminPolicy> read_policies_file(const std::string& path);

// Label of the highest-priority matching policy, ties to the smallest id;
// "unclassified" when nothing matches.
std::string classify(const FlowRecord& record, const std::vector<AdminPolicy>& policies);

}  // namespace ckg::observe
