#pragma once

#include "ckg/kg/graph.hpp"

#include <string>
#include <string_view>

namespace ckg::kg {

// Subset of N-Triples: `<iri> <iri> <iri> .` or `<iri> <iri> "literal" .`
// per line. Blank lines and `#` comments are ignored. Throws ParseError
// with the 1-based line number.
Graph load_ntriples(std::string_view text);

// Appends to an existing graph; returns the number of new triples.
std::size_t load_ntriples_into(Graph& g, std::string_view text);

// One line per triple, sorted, so equal graphs serialize identically.
std::string serialize_ntriples(const Graph& g);

Graph read_ntriples_file(const std::string& path);
void write_ntriples_file(const Graph& g, const std::string& path);

}  // namespace ckg::kg
