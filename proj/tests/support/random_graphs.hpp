#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/kg/query.hpp"

#include <random>
#include <string>
#include <vector>

namespace ckg::testing {

// Small vocabularies so that random patterns actually join.
struct RandomKg {
    std::mt19937_64 rng;

    explicit RandomKg(std::uint64_t seed) : rng(seed) {}

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

    kg::Term node() { return kg::Term::iri("ex:n" + std::to_string(pick(12))); }
    kg::Term predicate() { return kg::Term::iri("ex:p" + std::to_string(pick(4))); }
    kg::Term object() {
        if (pick(5) == 0) return kg::Term::literal("v" + std::to_string(pick(3)));
        return node();
    }

    kg::Graph graph(std::size_t max_triples) {
        kg::Graph g;
        const std::size_t n = pick(max_triples + 1);
        for (std::size_t i = 0; i < n; ++i) g.assert_triple({node(), predicate(), object()});
        return g;
    }

    kg::SelectQuery query(std::size_t max_patterns, std::size_t max_vars) {
        static const char* names[] = {"a", "b", "c", "d"};
        kg::SelectQuery q;
        const std::size_t vars = 1 + pick(max_vars);
        const std::size_t n = 1 + pick(max_patterns);
        auto var_or = [&](kg::Term constant, int var_weight) {
            if (static_cast<int>(pick(10)) < var_weight) return kg::Term::variable(names[pick(vars)]);
            return constant;
        };
        for (std::size_t i = 0; i < n; ++i)
            q.patterns.push_back({var_or(node(), 7), var_or(predicate(), 3), var_or(object(), 6)});
        std::vector<std::string> present;
        for (const auto& p : q.patterns)
            for (const kg::Term* t : {&p.subject, &p.predicate, &p.object})
                if (t->is_variable() && std::find(present.begin(), present.end(), t->value) == present.end())
                    present.push_back(t->value);
        if (present.empty()) {
            q.patterns[0].subject = kg::Term::variable("a");
            present.push_back("a");
        }
        for (const auto& v : present)
            if (pick(4) != 0 || q.projected.empty()) q.projected.push_back(v);
        q.distinct = pick(2) == 0;
        return q;
    }
};

}  // namespace ckg::testing
