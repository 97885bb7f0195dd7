#include "ckg/error.hpp"
#include "ckg/kg/query.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ckg::kg {
namespace {

// A pattern position is either a constant term or a variable slot.
struct Slot {
    const Term* constant = nullptr;
    int var = -1;
};

struct CompiledPattern {
    Slot pos[3];
};

using Binding = std::vector<const Term*>;
using Row = std::vector<Term>;

class Plan {
public:
    Plan(const Graph& g, const SelectQuery& q) : graph_(g) {
        std::unordered_map<std::string, int> slots;
        auto slot_of = [&](const Term& t) {
            Slot s;
            if (!t.is_variable()) {
                s.constant = &t;
                return s;
            }
            auto [it, inserted] = slots.try_emplace(t.value, static_cast<int>(slots.size()));
            s.var = it->second;
            return s;
        };
        std::vector<CompiledPattern> compiled;
        for (const auto& p : q.patterns)
            compiled.push_back({{slot_of(p.subject), slot_of(p.predicate), slot_of(p.object)}});
        var_count_ = slots.size();
        for (const auto& name : q.projected) projection_.push_back(slots.at(name));
        order(compiled);
    }

    std::size_t var_count() const { return var_count_; }
    std::size_t depth() const { return steps_.size(); }

    // Indices of triples that may match step `i` under `b`.
    std::span<const std::size_t> candidates(std::size_t i, const Binding& b) const {
        const auto& p = steps_[i];
        auto bound = [&](const Slot& s) -> const Term* {
            return s.constant ? s.constant : b[static_cast<std::size_t>(s.var)];
        };
        if (const Term* t = bound(p.pos[0])) return graph_.by_subject(*t);
        if (const Term* t = bound(p.pos[2])) return graph_.by_object(*t);
        if (const Term* t = bound(p.pos[1])) return graph_.by_predicate(*t);
        return all_;
    }

    // Binds step `i` against triple `idx`; appends newly bound slots to
    // `newly` and returns false (with those slots left for the caller to
    // undo) on mismatch.
    bool bind(std::size_t i, std::size_t idx, Binding& b, std::vector<int>& newly) const {
        const Triple& t = graph_.triples()[idx];
        const Term* terms[3] = {&t.subject, &t.predicate, &t.object};
        for (int k = 0; k < 3; ++k) {
            const Slot& s = steps_[i].pos[k];
            if (s.constant) {
                if (!(*s.constant == *terms[k])) return false;
                continue;
            }
            auto& cur = b[static_cast<std::size_t>(s.var)];
            if (cur) {
                if (!(*cur == *terms[k])) return false;
            } else {
                cur = terms[k];
                newly.push_back(s.var);
            }
        }
        return true;
    }

    Row project(const Binding& b) const {
        Row row;
        row.reserve(projection_.size());
        for (int v : projection_) row.push_back(*b[static_cast<std::size_t>(v)]);
        return row;
    }

    void extend(std::size_t i, Binding& b, std::vector<Row>& out) const {
        if (i == steps_.size()) {
            out.push_back(project(b));
            return;
        }
        std::vector<int> newly;
        for (std::size_t idx : candidates(i, b)) {
            newly.clear();
            if (bind(i, idx, b, newly)) extend(i + 1, b, out);
            for (int v : newly) b[static_cast<std::size_t>(v)] = nullptr;
        }
    }

private:
    // Greedy join order: next step is the pattern with the most positions
    // fixed by constants or earlier steps; ties keep textual order.
    void order(std::vector<CompiledPattern> remaining) {
        std::vector<bool> bound(var_count_, false);
        while (!remaining.empty()) {
            std::size_t best = 0;
            int best_fixed = -1;
            for (std::size_t i = 0; i < remaining.size(); ++i) {
                int fixed = 0;
                for (const auto& s : remaining[i].pos)
                    fixed += (s.constant || bound[static_cast<std::size_t>(s.var)]) ? 1 : 0;
                if (fixed > best_fixed) {
                    best_fixed = fixed;
                    best = i;
                }
            }
            for (const auto& s : remaining[best].pos)
                if (!s.constant) bound[static_cast<std::size_t>(s.var)] = true;
            steps_.push_back(remaining[best]);
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        }
        all_.resize(graph_.size());
        for (std::size_t i = 0; i < all_.size(); ++i) all_[i] = i;
    }

    const Graph& graph_;
    std::vector<CompiledPattern> steps_;
    std::vector<int> projection_;
    std::vector<std::size_t> all_;
    std::size_t var_count_ = 0;
};

QueryResult finish(const SelectQuery& q, std::vector<Row> rows) {
    std::sort(rows.begin(), rows.end());
    if (q.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return QueryResult{q.projected, std::move(rows)};
}

}  // namespace

void validate_query(const SelectQuery& q) {
    if (q.patterns.empty()) throw ValidationError("query has no triple patterns");
    for (const auto& v : q.projected) {
        bool found = std::any_of(q.patterns.begin(), q.patterns.end(), [&](const TriplePattern& p) {
            for (const Term* t : {&p.subject, &p.predicate, &p.object})
                if (t->is_variable() && t->value == v) return true;
            return false;
        });
        if (!found) throw ValidationError("projected variable ?" + v + " does not appear in any pattern");
    }
}

const Term& QueryResult::get(std::size_t row, std::string_view variable) const {
    auto it = std::find(variables.begin(), variables.end(), variable);
    if (it == variables.end()) throw std::out_of_range("unknown variable ?" + std::string(variable));
    return rows.at(row).at(static_cast<std::size_t>(it - variables.begin()));
}

QueryResult evaluate_serial(const Graph& g, const SelectQuery& q) {
    validate_query(q);
    Plan plan(g, q);
    Binding b(plan.var_count(), nullptr);
    std::vector<Row> rows;
    plan.extend(0, b, rows);
    return finish(q, std::move(rows));
}

QueryResult evaluate(const Graph& g, const SelectQuery& q) {
    validate_query(q);
    Plan plan(g, q);
    const Binding empty(plan.var_count(), nullptr);
    const auto first = plan.candidates(0, empty);
    const auto n = static_cast<std::ptrdiff_t>(first.size());

    std::vector<Row> rows;
#pragma omp parallel default(none) shared(plan, first, empty, rows, n)
    {
        std::vector<Row> local;
        Binding b = empty;
        std::vector<int> newly;
#pragma omp for schedule(dynamic, 16) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            newly.clear();
            if (plan.bind(0, first[static_cast<std::size_t>(i)], b, newly)) plan.extend(1, b, local);
            for (int v : newly) b[static_cast<std::size_t>(v)] = nullptr;
        }
#pragma omp critical(ckg_query_merge)
        rows.insert(rows.end(), std::make_move_iterator(local.begin()),
                    std::make_move_iterator(local.end()));
    }
    return finish(q, std::move(rows));
}

std::string format_rows(const QueryResult& r) {
    std::string out;
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += '\t';
            out += to_string(row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace ckg::kg
