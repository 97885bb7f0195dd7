#pragma once

#include "ckg/kg/graph.hpp"
#include "ckg/kg/term.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ckg::kg {

struct TriplePattern {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

// SELECT [DISTINCT] ?v... WHERE { conjunctive triple patterns }
struct SelectQuery {
    std::vector<std::string> projected;
    bool distinct = false;
    std::vector<TriplePattern> patterns;
};

// Throws ValidationError when the query has no patterns or projects a
// variable that no pattern mentions.
void validate_query(const SelectQuery& q);

struct QueryResult {
    std::vector<std::string> variables;
    std::vector<std::vector<Term>> rows;

    // Value bound to `variable` in `row`; throws std::out_of_range.
    const Term& get(std::size_t row, std::string_view variable) const;
};

struct ParseOptions {
    // Prefix declarations applied before any PREFIX lines in the text,
    // e.g. {"FusedCKG", "ckg:"}. Undeclared prefixed names are kept verbatim.
    std::map<std::string, std::string, std::less<>> prefixes;
};

// Parses the SPARQL subset: PREFIX declarations, SELECT [DISTINCT] with a
// variable list or '*', and a WHERE block of triple patterns joined by
// '.', ';' and ','. `a` abbreviates rdf:type. ParseError::location() is
// the 1-based character offset of the offending token.
SelectQuery parse_query(std::string_view text, const ParseOptions& opts = {});

// Natural join of the pattern matches projected onto q.projected, rows
// sorted lexicographically, duplicates removed when q.distinct. Parallel
// over the candidates of the first join step.
QueryResult evaluate(const Graph& g, const SelectQuery& q);

// Single-threaded reference for `evaluate`; identical output.
QueryResult evaluate_serial(const Graph& g, const SelectQuery& q);

// Tab-separated rows, one per line, terms in N-Triples-like notation.
std::string format_rows(const QueryResult& r);

}  // namespace ckg::kg
