#include "ckg/observe/flow.hpp"

#include "ckg/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace ckg::observe {
namespace {

constexpr std::array<std::string_view, 8> kColumns = {"timestamp", "src",      "dst",   "src_port",
                                                      "dst_port",  "protocol", "bytes", "packets"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Comma-separated fields with optional double quotes ("" escapes a quote).
std::vector<std::string> split_csv(std::string_view line, std::size_t lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError("line " + std::to_string(lineno) + ": unterminated quote", lineno);
    out.emplace_back(trim(cur));
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

std::string_view to_string(Protocol p) {
    switch (p) {
    case Protocol::tcp: return "tcp";
    case Protocol::udp: return "udp";
    case Protocol::icmp: return "icmp";
    case Protocol::other: break;
    }
    return "other";
}

Protocol parse_protocol(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "tcp" || lower == "6") return Protocol::tcp;
    if (lower == "udp" || lower == "17") return Protocol::udp;
    if (lower == "icmp" || lower == "1") return Protocol::icmp;
    return Protocol::other;
}

std::vector<FlowRecord> parse_flows(std::string_view text) {
    std::vector<FlowRecord> out;
    std::array<std::size_t, kColumns.size()> col{};
    bool have_header = false;
    std::size_t lineno = 0;
    std::size_t start = 0;

    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (trim(line).empty()) continue;

        auto fields = split_csv(line, lineno);
        if (!have_header) {
            for (std::size_t k = 0; k < kColumns.size(); ++k) {
                auto it = std::find(fields.begin(), fields.end(), kColumns[k]);
                if (it == fields.end())
                    throw ParseError("line " + std::to_string(lineno) + ": missing column '" +
                                         std::string(kColumns[k]) + "'",
                                     lineno);
                col[k] = static_cast<std::size_t>(it - fields.begin());
            }
            have_header = true;
            continue;
        }

        auto fail = [&](const std::string& msg) -> void {
            throw ParseError("row at line " + std::to_string(lineno) + ": " + msg, lineno);
        };
        auto field = [&](std::size_t k) -> const std::string& {
            if (col[k] >= fields.size()) fail("missing value for '" + std::string(kColumns[k]) + "'");
            return fields[col[k]];
        };
        auto port = [&](std::size_t k) -> std::uint16_t {
            auto v = parse_number<long long>(field(k));
            if (!v || *v < 0 || *v > 65535) fail(std::string(kColumns[k]) + " '" + field(k) + "' out of range 0-65535");
            return static_cast<std::uint16_t>(*v);
        };

        FlowRecord r;
        auto ts = parse_number<double>(field(0));
        if (!ts || !std::isfinite(*ts) || *ts < 0) fail("timestamp '" + field(0) + "' is not a non-negative number");
        r.timestamp = *ts;
        r.src = field(1);
        r.dst = field(2);
        if (r.src.empty() || r.dst.empty()) fail("empty host id");
        r.src_port = port(3);
        r.dst_port = port(4);
        r.protocol = parse_protocol(field(5));
        auto bytes = parse_number<std::uint64_t>(field(6));
        if (!bytes) fail("bytes '" + field(6) + "' is not a non-negative integer");
        r.bytes = *bytes;
        auto packets = parse_number<std::uint64_t>(field(7));
        if (!packets || *packets < 1) fail("packets '" + field(7) + "' must be a positive integer");
        r.packets = *packets;
        out.push_back(std::move(r));
    }
    if (!have_header) throw ParseError("flow file has no header row", 1);
    return out;
}

std::vector<FlowRecord> read_flows_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_flows(ss.str());
}

}  // namespace ckg::observe
