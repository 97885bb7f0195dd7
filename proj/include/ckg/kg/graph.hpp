#pragma once

#include "ckg/kg/term.hpp"

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ckg::kg {

// In-memory triple set with subject/predicate/object indexes.
//
// Concurrent const access is safe; mutation needs exclusive access.
class Graph {
public:
    // Returns true if the triple was new. Throws ValidationError for
    // malformed terms.
    bool assert_triple(const Triple& t);
    bool assert_triple(std::string_view s, std::string_view p, const Term& o);

    bool contains(const Triple& t) const;
    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }

    // Insertion order.
    const std::vector<Triple>& triples() const noexcept { return triples_; }

    // Every IRI that appears in any position, sorted.
    const std::set<std::string, std::less<>>& vocabulary() const noexcept { return vocabulary_; }
    bool in_vocabulary(std::string_view iri) const { return vocabulary_.contains(iri); }

    // Triple indices with the given term in that position.
    std::span<const std::size_t> by_subject(const Term& t) const;
    std::span<const std::size_t> by_predicate(const Term& t) const;
    std::span<const std::size_t> by_object(const Term& t) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.members_ == b.members_; }

private:
    using Index = std::unordered_map<Term, std::vector<std::size_t>, TermHash>;
    static std::span<const std::size_t> lookup(const Index& idx, const Term& t);

    std::vector<Triple> triples_;
    std::unordered_set<Triple, TripleHash> members_;
    std::set<std::string, std::less<>> vocabulary_;
    Index subjects_;
    Index predicates_;
    Index objects_;
};

}  // namespace ckg::kg
