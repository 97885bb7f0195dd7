#include "ckg/stix/bundle.hpp"

#include "ckg/error.hpp"

#include <json.hpp>

#include <regex>
#include <unordered_set>

namespace ckg::stix {
namespace {

using nlohmann::json;

ObjectType classify_type(std::string_view t) {
    if (t == "malware") return ObjectType::malware;
    if (t == "attack-pattern") return ObjectType::attack_pattern;
    if (t == "indicator") return ObjectType::indicator;
    if (t == "relationship") return ObjectType::relationship;
    return ObjectType::other;
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t index) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string())
        throw ParseError("objects[" + std::to_string(index) + "]." + key + " is not a string", index + 1);
    return it->get<std::string>();
}

std::string required_string(const json& obj, const char* key, std::size_t index) {
    auto v = optional_string(obj, key, index);
    if (!v || v->empty())
        throw ParseError("objects[" + std::to_string(index) + "] is missing '" + key + "'", index + 1);
    return *v;
}

bool is_mapped_relationship(std::string_view rel) {
    return rel == "uses" || rel == "indicates" || rel == "mitigates" || rel == "targets";
}

}  // namespace

std::string_view to_string(ObjectType t) {
    switch (t) {
    case ObjectType::malware: return "malware";
    case ObjectType::attack_pattern: return "attack-pattern";
    case ObjectType::indicator: return "indicator";
    case ObjectType::relationship: return "relationship";
    case ObjectType::other: break;
    }
    return "other";
}

Bundle parse_bundle(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bundle is not valid JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw ParseError("bundle must be a JSON object");
    auto objs = doc.find("objects");
    if (objs == doc.end() || !objs->is_array()) throw ParseError("bundle has no 'objects' array");

    Bundle b;
    b.objects.reserve(objs->size());
    for (std::size_t i = 0; i < objs->size(); ++i) {
        const json& o = (*objs)[i];
        if (!o.is_object()) throw ParseError("objects[" + std::to_string(i) + "] is not an object", i + 1);
        StixObject s;
        s.id = required_string(o, "id", i);
        s.raw_type = optional_string(o, "type", i).value_or("");
        s.type = classify_type(s.raw_type);
        s.name = optional_string(o, "name", i);
        s.pattern = optional_string(o, "pattern", i);
        if (s.type == ObjectType::relationship) {
            s.source_ref = required_string(o, "source_ref", i);
            s.target_ref = required_string(o, "target_ref", i);
            s.relationship_type = required_string(o, "relationship_type", i);
        }
        b.objects.push_back(std::move(s));
    }
    return b;
}

std::optional<std::string> extract_hash(std::string_view pattern) {
    static const std::regex re(R"(hashes\.(?:'[^']*'|[A-Za-z0-9_-]+)\s*=\s*'([0-9A-Fa-f]+)')");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(pattern.begin(), pattern.end(), m, re)) return std::nullopt;
    return m[1].str();
}

Mapping map_to_triples(const Bundle& bundle, const kg::Ontology& ont) {
    using kg::Term;
    Mapping out;
    std::unordered_set<std::string> ids;
    for (const auto& o : bundle.objects) ids.insert(o.id);

    const Term type = Term::iri(std::string(kg::kRdfType));
    auto typed = [&](const StixObject& o, const std::string& cls) {
        out.triples.push_back({Term::iri(o.id), type, Term::iri(cls)});
    };
    auto named = [&](const StixObject& o) {
        if (o.name) out.triples.push_back({Term::iri(o.id), Term::iri(ont.name()), Term::literal(*o.name)});
    };

    for (std::size_t i = 0; i < bundle.objects.size(); ++i) {
        const auto& o = bundle.objects[i];
        switch (o.type) {
        case ObjectType::malware:
            typed(o, ont.malware());
            named(o);
            break;
        case ObjectType::attack_pattern:
            typed(o, ont.attack_pattern());
            named(o);
            break;
        case ObjectType::indicator: {
            typed(o, ont.indicator());
            if (o.pattern) {
                if (auto hex = extract_hash(*o.pattern))
                    out.triples.push_back(
                        {Term::iri(o.id), Term::iri(ont.has_hash()), Term::iri(ont.hash_individual(*hex))});
            }
            break;
        }
        case ObjectType::relationship:
            if (!is_mapped_relationship(o.relationship_type)) {
                out.skipped.push_back({i, o.id, o.raw_type, "unsupported relationship_type '" + o.relationship_type + "'"});
                out.warnings.push_back(o.id + ": relationship type '" + o.relationship_type + "' not mapped");
                break;
            }
            for (const std::string* ref : {&o.source_ref, &o.target_ref})
                if (!ids.contains(*ref)) out.warnings.push_back(o.id + ": reference to '" + *ref + "' not in bundle");
            out.triples.push_back(
                {Term::iri(o.source_ref), Term::iri(ont.iri(o.relationship_type)), Term::iri(o.target_ref)});
            break;
        case ObjectType::other:
            out.skipped.push_back({i, o.id, o.raw_type, "unsupported object type"});
            break;
        }
    }
    for (const auto& t : out.triples) kg::validate_triple(t);
    return out;
}

std::string skipped_report_json(const Mapping& m) {
    json skipped = json::array();
    for (const auto& s : m.skipped)
        skipped.push_back({{"index", s.index}, {"id", s.id}, {"type", s.type}, {"reason", s.reason}});
    json report{{"triples", m.triples.size()}, {"skipped", skipped}, {"warnings", m.warnings}};
    return report.dump(2);
}

}  // namespace ckg::stix
