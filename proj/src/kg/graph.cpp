#include "ckg/kg/graph.hpp"

namespace ckg::kg {

bool Graph::assert_triple(const Triple& t) {
    validate_triple(t);
    if (!members_.insert(t).second) return false;

    const std::size_t idx = triples_.size();
    triples_.push_back(t);
    subjects_[t.subject].push_back(idx);
    predicates_[t.predicate].push_back(idx);
    objects_[t.object].push_back(idx);

    vocabulary_.insert(t.subject.value);
    vocabulary_.insert(t.predicate.value);
    if (t.object.is_iri()) vocabulary_.insert(t.object.value);
    return true;
}

bool Graph::assert_triple(std::string_view s, std::string_view p, const Term& o) {
    return assert_triple(Triple{Term::iri(std::string(s)), Term::iri(std::string(p)), o});
}

bool Graph::contains(const Triple& t) const { return members_.contains(t); }

std::span<const std::size_t> Graph::lookup(const Index& idx, const Term& t) {
    auto it = idx.find(t);
    if (it == idx.end()) return {};
    return it->second;
}

std::span<const std::size_t> Graph::by_subject(const Term& t) const { return lookup(subjects_, t); }
std::span<const std::size_t> Graph::by_predicate(const Term& t) const { return lookup(predicates_, t); }
std::span<const std::size_t> Graph::by_object(const Term& t) const { return lookup(objects_, t); }

}  // namespace ckg::kg
