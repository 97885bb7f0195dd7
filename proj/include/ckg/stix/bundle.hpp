#pragma once

#include "ckg/kg/ontology.hpp"
#include "ckg/kg/term.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ckg::stix {

enum class ObjectType { malware, attack_pattern, indicator, relationship, other };

std::string_view to_string(ObjectType t);

struct StixObject {
    std::string id;
    ObjectType type = ObjectType::other;
    std::string raw_type;  // as it appeared in the bundle
    std::optional<std::string> name;
    std::optional<std::string> pattern;
    // relationship objects only
    std::string source_ref;
    std::string target_ref;
    std::string relationship_type;
};

struct Bundle {
    std::vector<StixObject> objects;
};

// Throws ParseError for non-JSON input, a missing `objects` array, or an
// element without `id` (location() is the 0-based element index + 1).
Bundle parse_bundle(std::string_view json_text);

struct SkippedObject {
    std::size_t index;
    std::string id;
    std::string type;
    std::string reason;
};

struct Mapping {
    std::vector<kg::Triple> triples;
    std::vector<SkippedObject> skipped;
    std::vector<std::string> warnings;
};

// Mapping table:
//   malware        -> (id rdf:type Malware) [+ (id name "name")]
//   attack-pattern -> (id rdf:type AttackPattern) [+ (id name "name")]
//   indicator      -> (id rdf:type Indicator) [+ (id hasHash hash-<hex>)]
//   relationship   -> (source <rel> target) for uses/indicates/mitigates/targets
// Other objects and relationship types are skipped. Dangling references
// only produce a warning.
Mapping map_to_triples(const Bundle& bundle, const kg::Ontology& ontology);

// First hex digest in a STIX indicator pattern such as
// "[file:hashes.'SHA-256' = 'ab12...']".
std::optional<std::string> extract_hash(std::string_view pattern);

// JSON report of skipped objects and warnings.
std::string skipped_report_json(const Mapping& m);

}  // namespace ckg::stix
