#pragma once

#include "ckg/rules/hypothesis.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ckg::rules {

inline constexpr std::uint32_t kFirstLocalSid = 1000001;

// SNORT-style rule header plus msg/sid/rev options.
struct Rule {
    std::string action;  // alert | drop
    std::string protocol;
    std::string src = "any";
    std::string src_port = "any";
    std::string dst = "any";
    std::string dst_port = "any";
    std::vector<std::pair<std::string, std::string>> options;

    std::string to_string() const;
};

// Throws ValidationError when sid < 1000001.
Rule make_rule(const Hypothesis& h, std::uint32_t sid);

// `<action> <proto> any any -> any <port> (msg:"<malware> via <pattern>"; sid:<sid>; rev:1;)`
std::string emit_rule(const Hypothesis& h, std::uint32_t sid);

}  // namespace ckg::rules
