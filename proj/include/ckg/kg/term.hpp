#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace ckg::kg {

enum class TermKind { iri, literal, variable };

// A node or edge label in the knowledge graph. Variables only occur in
// query patterns; `value` holds the variable name without its leading '?'.
struct Term {
    TermKind kind = TermKind::iri;
    std::string value;

    static Term iri(std::string value) { return {TermKind::iri, std::move(value)}; }
    static Term literal(std::string value) { return {TermKind::literal, std::move(value)}; }
    static Term variable(std::string name) { return {TermKind::variable, std::move(name)}; }

    bool is_iri() const noexcept { return kind == TermKind::iri; }
    bool is_literal() const noexcept { return kind == TermKind::literal; }
    bool is_variable() const noexcept { return kind == TermKind::variable; }

    // Lexicographic on value first so result ordering follows the text.
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
        if (auto c = a.value <=> b.value; c != 0) return c;
        return a.kind <=> b.kind;
    }
    friend bool operator==(const Term&, const Term&) = default;
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend auto operator<=>(const Triple&, const Triple&) = default;
    friend bool operator==(const Triple&, const Triple&) = default;
};

// Non-empty and free of whitespace and angle brackets / quotes, so that the
// IRI survives an N-Triples round trip.
bool is_valid_iri(std::string_view iri) noexcept;

// Throws ValidationError unless `t` is a storable triple: IRI subject and
// predicate, IRI or literal object, no variables.
void validate_triple(const Triple& t);

std::string to_string(const Term& t);

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept {
        return std::hash<std::string>{}(t.value) * 31 + static_cast<std::size_t>(t.kind);
    }
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const noexcept {
        TermHash h;
        std::size_t seed = h(t.subject);
        seed ^= h(t.predicate) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
        seed ^= h(t.object) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
        return seed;
    }
};

}  // namespace ckg::kg
