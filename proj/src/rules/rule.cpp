#include "ckg/rules/rule.hpp"

#include "ckg/error.hpp"

namespace ckg::rules {

std::string Rule::to_string() const {
    std::string out = action + " " + protocol + " " + src + " " + src_port + " -> " + dst + " " + dst_port + " (";
    for (std::size_t i = 0; i < options.size(); ++i) {
        if (i) out += ' ';
        out += options[i].first + ":" + options[i].second + ";";
    }
    return out + ")";
}

Rule make_rule(const Hypothesis& h, std::uint32_t sid) {
    if (sid < kFirstLocalSid) throw ValidationError("sid must be >= 1000001");
    Rule r;
    r.action = h.action == RuleAction::block ? "drop" : "alert";
    r.protocol = h.protocol.empty() ? "ip" : h.protocol;
    r.dst_port = h.port ? std::to_string(*h.port) : "any";
    std::string msg = h.malware + " via " + h.attack_pattern;
    for (char& c : msg)
        if (c == '"' || c == ';') c = '_';
    r.options = {{"msg", "\"" + msg + "\""}, {"sid", std::to_string(sid)}, {"rev", "1"}};
    return r;
}

std::string emit_rule(const Hypothesis& h, std::uint32_t sid) { return make_rule(h, sid).to_string(); }

}  // namespace ckg::rules
