#include "ckg/kg/term.hpp"

#include "ckg/error.hpp"

#include <algorithm>

namespace ckg::kg {

bool is_valid_iri(std::string_view iri) noexcept {
    if (iri.empty()) return false;
    return std::none_of(iri.begin(), iri.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' ||
               c == '<' || c == '>' || c == '"';
    });
}

void validate_triple(const Triple& t) {
    if (!t.subject.is_iri() || !t.predicate.is_iri())
        throw ValidationError("subject and predicate must be IRIs");
    if (t.object.is_variable()) throw ValidationError("stored triples cannot contain variables");
    if (!is_valid_iri(t.subject.value))
        throw ValidationError("malformed subject IRI '" + t.subject.value + "'");
    if (!is_valid_iri(t.predicate.value))
        throw ValidationError("malformed predicate IRI '" + t.predicate.value + "'");
    if (t.object.is_iri() && !is_valid_iri(t.object.value))
        throw ValidationError("malformed object IRI '" + t.object.value + "'");
}

std::string to_string(const Term& t) {
    switch (t.kind) {
    case TermKind::iri:
        return "<" + t.value + ">";
    case TermKind::variable:
        return "?" + t.value;
    case TermKind::literal:
        break;
    }
    std::string out = "\"";
    for (char c : t.value) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

}  // namespace ckg::kg
