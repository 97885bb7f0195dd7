#pragma once

#include "ckg/rl/rng.hpp"

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace ckg::rl {

struct ShapingConfig {
    double beta = 0.3;
    int k = 2;
    double gamma = 0.95;
    double alpha = 0.1;
    double epsilon = 0.2;

    void validate() const;  // throws ValidationError
};

enum class TieBreak { first, random };

// (state key, action index) -> value. Entries never written read as 0 and
// are reported as unknown.
class QTable {
public:
    struct Row {
        std::vector<double> q;
        std::vector<char> known;
        friend bool operator==(const Row&, const Row&) = default;
    };

    explicit QTable(std::size_t n_actions = 0) : n_actions_(n_actions) {}

    std::size_t n_actions() const noexcept { return n_actions_; }
    std::size_t entries() const;
    double get(const std::string& key, std::size_t a) const;
    bool known(const std::string& key, std::size_t a) const;
    bool has_state(const std::string& key) const { return rows_.count(key) != 0; }
    void set(const std::string& key, std::size_t a, double v);

    // Max over `actions`; when `known_only`, over known entries (0 if none).
    double max_value(const std::string& key, const std::vector<std::size_t>& actions, bool known_only = false) const;
    double max_abs() const;

    // Best of `actions`; unknown entries count as 0.
    std::size_t greedy(const std::string& key, const std::vector<std::size_t>& actions, TieBreak tie, Rng& rng) const;

    const std::unordered_map<std::string, Row>& rows() const noexcept { return rows_; }

    // {"n_actions": n, "entries": [[key, action, value], ...]} sorted by key, action.
    std::string to_json() const;

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::size_t n_actions_;
    std::unordered_map<std::string, Row> rows_;
};

}  // namespace ckg::rl
