#include "ckg/kg/ontology.hpp"

#include "ckg/error.hpp"
#include "ckg/kg/term.hpp"

#include <cctype>

namespace ckg::kg {

Ontology::Ontology(std::string prefix) : prefix_(std::move(prefix)) {
    if (!is_valid_iri(prefix_)) throw ValidationError("invalid namespace prefix '" + prefix_ + "'");
}

std::string Ontology::iri(std::string_view local) const {
    std::string out = prefix_;
    out += local;
    return out;
}

std::string Ontology::hash_individual(std::string_view hex) const {
    std::string out = prefix_ + "hash-";
    for (char c : hex) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace ckg::kg
