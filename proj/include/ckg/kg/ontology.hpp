#pragma once

#include <string>
#include <string_view>

namespace ckg::kg {

inline constexpr std::string_view kRdfType = "rdf:type";

// STIX-flavored CKG vocabulary. Every ontology IRI is `prefix + local name`.
class Ontology {
public:
    explicit Ontology(std::string prefix = "ckg:");

    const std::string& prefix() const noexcept { return prefix_; }
    std::string iri(std::string_view local) const;

    // Classes
    std::string malware() const { return iri("Malware"); }
    std::string attack_pattern() const { return iri("AttackPattern"); }
    std::string indicator() const { return iri("Indicator"); }
    std::string tool() const { return iri("Tool"); }
    std::string vulnerability() const { return iri("Vulnerability"); }
    std::string course_of_action() const { return iri("CourseOfAction"); }
    std::string system_parameter() const { return iri("SystemParameter"); }
    std::string observation() const { return iri("Observation"); }

    // Properties
    std::string uses() const { return iri("uses"); }
    std::string has_hash() const { return iri("hasHash"); }
    std::string indicates() const { return iri("indicates"); }
    std::string mitigates() const { return iri("mitigates"); }
    std::string targets() const { return iri("targets"); }
    std::string parameter_change() const { return iri("parameterchange"); }
    std::string name() const { return iri("name"); }
    std::string port() const { return iri("port"); }
    std::string protocol() const { return iri("protocol"); }
    std::string observed_parameter() const { return iri("observedParameter"); }
    std::string window_start() const { return iri("windowStart"); }
    std::string window_end() const { return iri("windowEnd"); }

    // Mean-change values
    std::string increases() const { return iri("increases_meanchange"); }
    std::string decreases() const { return iri("decreases_meanchange"); }
    std::string no_change() const { return iri("no_meanchange"); }

    // Individual naming for hash indicators: `<prefix>hash-<lowercase hex>`.
    std::string hash_individual(std::string_view hex) const;

private:
    std::string prefix_;
};

}  // namespace ckg::kg
