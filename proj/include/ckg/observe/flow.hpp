#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ckg::observe {

enum class Protocol { tcp, udp, icmp, other };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view s);

struct FlowRecord {
    double timestamp = 0.0;  // seconds
    std::string src;
    std::string dst;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    Protocol protocol = Protocol::other;
    std::uint64_t bytes = 0;
    std::uint64_t packets = 1;
};

// Columns are located by header name, so order is free and extra columns
// are ignored. ParseError::location() is the 1-based line number.
std::vector<FlowRecord> parse_flows(std::string_view csv_text);

std::vector<FlowRecord> read_flows_file(const std::string& path);

}  // namespace ckg::observe
