#include "ckg/observe/policy.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ckg::observe {
namespace {

using nlohmann::json;

bool is_numeric_field(std::string_view f) {
    return f == "timestamp" || f == "src_port" || f == "dst_port" || f == "bytes" || f == "packets";
}

bool is_text_field(std::string_view f) { return f == "src" || f == "dst" || f == "protocol"; }

double numeric_value(const FlowRecord& r, std::string_view f) {
    if (f == "timestamp") return r.timestamp;
    if (f == "src_port") return r.src_port;
    if (f == "dst_port") return r.dst_port;
    if (f == "bytes") return static_cast<double>(r.bytes);
    return static_cast<double>(r.packets);
}

std::string text_value(const FlowRecord& r, std::string_view f) {
    if (f == "src") return r.src;
    if (f == "dst") return r.dst;
    return std::string(to_string(r.protocol));
}

MatchOp parse_op(const std::string& s) {
    if (s == "eq") return MatchOp::eq;
    if (s == "neq") return MatchOp::neq;
    if (s == "lt") return MatchOp::lt;
    if (s == "gt") return MatchOp::gt;
    if (s == "in-range" || s == "in_range") return MatchOp::in_range;
    throw ValidationError("unknown match operator '" + s + "'");
}

Condition parse_condition(const json& j) {
    Condition c;
    c.field = j.at("field").get<std::string>();
    c.op = parse_op(j.at("op").get<std::string>());
    const json& v = j.at("value");
    if (c.op == MatchOp::in_range) {
        if (!v.is_array() || v.size() != 2) throw ValidationError("in-range needs a [low, high] value");
        c.value = v[0].get<double>();
        c.upper = v[1].get<double>();
    } else if (v.is_string()) {
        c.value = v.get<std::string>();
    } else {
        c.value = v.get<double>();
    }
    return c;
}

}  // namespace

bool Condition::matches(const FlowRecord& r) const {
    if (is_text_field(field)) {
        const auto* s = std::get_if<std::string>(&value);
        if (!s) return false;
        std::string actual = text_value(r, field);
        if (field == "protocol") return (op == MatchOp::eq) == (parse_protocol(*s) == r.protocol);
        return (op == MatchOp::eq) == (actual == *s);
    }
    const auto* d = std::get_if<double>(&value);
    if (!d) return false;
    const double x = numeric_value(r, field);
    switch (op) {
    case MatchOp::eq: return x == *d;
    case MatchOp::neq: return x != *d;
    case MatchOp::lt: return x < *d;
    case MatchOp::gt: return x > *d;
    case MatchOp::in_range: return x >= *d && x <= upper;
    }
    return false;
}

bool AdminPolicy::matches(const FlowRecord& r) const {
    return std::all_of(match.begin(), match.end(), [&](const Condition& c) { return c.matches(r); });
}

void validate_policies(const std::vector<AdminPolicy>& policies) {
    std::set<std::string> ids;
    for (const auto& p : policies) {
        if (p.id.empty()) throw ValidationError("policy with empty id");
        if (!ids.insert(p.id).second) throw ValidationError("duplicate policy id '" + p.id + "'");
        if (p.label.empty()) throw ValidationError("policy '" + p.id + "' has no label");
        for (const auto& c : p.match) {
            if (is_text_field(c.field)) {
                if (c.op != MatchOp::eq && c.op != MatchOp::neq)
                    throw ValidationError("policy '" + p.id + "': field '" + c.field + "' supports only eq/neq");
                if (!std::holds_alternative<std::string>(c.value))
                    throw ValidationError("policy '" + p.id + "': field '" + c.field + "' needs a string value");
            } else if (is_numeric_field(c.field)) {
                if (!std::holds_alternative<double>(c.value))
                    throw ValidationError("policy '" + p.id + "': field '" + c.field + "' needs a numeric value");
            } else {
                throw ValidationError("policy '" + p.id + "': unknown field '" + c.field + "'");
            }
        }
    }
}

std::vector<AdminPolicy> parse_policies(std::string_view text) {
    std::vector<AdminPolicy> out;
    try {
        const json doc = json::parse(text);
        if (!doc.is_array()) throw ParseError("policy file must be a JSON array");
        for (const auto& j : doc) {
            AdminPolicy p;
            p.id = j.at("id").get<std::string>();
            p.label = j.at("label").get<std::string>();
            p.priority = j.value("priority", 0);
            const json& m = j.at("match");
            if (m.is_array()) {
                for (const auto& c : m) p.match.push_back(parse_condition(c));
            } else {
                p.match.push_back(parse_condition(m));
            }
            out.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid policy file: ") + e.what());
    }
    validate_policies(out);
    return out;
}

std::vector<AdminPolicy> read_policies_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_policies(ss.str());
}

std::string classify(const FlowRecord& record, const std::vector<AdminPolicy>& policies) {
    const AdminPolicy* best = nullptr;
    for (const auto& p : policies) {
        if (!p.matches(record)) continue;
        if (!best || p.priority > best->priority || (p.priority == best->priority && p.id < best->id)) best = &p;
    }
    return best ? best->label : std::string(kUnclassified);
}

}  // namespace ckg::observe
