#include "ckg/rules/hypothesis.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <tuple>

namespace ckg::rules {

using kg::Term;

std::string_view to_string(RuleAction a) { return a == RuleAction::block ? "block" : "alert"; }

std::string hypothesis_id(std::string_view malware, std::string_view attack_pattern, std::string_view parameter) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0x1f;
        h *= 0x100000001b3ULL;
    };
    mix(malware);
    mix(attack_pattern);
    mix(parameter);
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("h-") + buf;
}

bool linked(const kg::Graph& g, const kg::Ontology& ont, const std::string& a, const std::string& b) {
    for (const auto& pred : {ont.indicates(), ont.targets(), ont.parameter_change()}) {
        const Term p = Term::iri(pred);
        if (g.contains({Term::iri(a), p, Term::iri(b)}) || g.contains({Term::iri(b), p, Term::iri(a)})) return true;
    }
    return false;
}

namespace {

std::optional<std::string> literal_of(const kg::Graph& g, const std::string& subject, const std::string& pred) {
    std::optional<std::string> best;
    for (std::size_t idx : g.by_subject(Term::iri(subject))) {
        const auto& t = g.triples()[idx];
        if (t.predicate.value == pred && t.object.is_literal() && (!best || t.object.value < *best))
            best = t.object.value;
    }
    return best;
}

std::optional<std::uint16_t> parse_port(const std::optional<std::string>& s) {
    if (!s) return std::nullopt;
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
    if (ec != std::errc{} || p != s->data() + s->size() || v > 65535) return std::nullopt;
    return static_cast<std::uint16_t>(v);
}

std::string normalize_protocol(const std::optional<std::string>& s) {
    if (!s) return "ip";
    std::string p = *s;
    std::transform(p.begin(), p.end(), p.begin(), [](unsigned char c) { return std::tolower(c); });
    if (p == "tcp" || p == "udp" || p == "icmp" || p == "ip") return p;
    return "ip";
}

bool has_type(const kg::Graph& g, const std::string& iri, const std::string& cls) {
    return g.contains({Term::iri(iri), Term::iri(std::string(kg::kRdfType)), Term::iri(cls)});
}

}  // namespace

std::vector<Hypothesis> extract_hypotheses(const kg::Graph& g, const std::vector<observe::Observation>& observations,
                                           const kg::Ontology& ont) {
    std::set<std::string> parameters;
    for (const auto& o : observations)
        if (o.direction != observe::ChangeDirection::none) parameters.insert(o.parameter);

    std::vector<Hypothesis> out;
    if (g.empty()) return out;

    const Term uses = Term::iri(ont.uses());
    const Term indicates = Term::iri(ont.indicates());
    const Term has_hash = Term::iri(ont.has_hash());
    const Term mitigates = Term::iri(ont.mitigates());

    for (const auto& param : parameters) {
        std::set<std::pair<std::string, std::string>> pairs;
        for (std::size_t idx : g.by_predicate(uses)) {
            const auto& t = g.triples()[idx];
            if (!t.object.is_iri()) continue;
            const std::string& m = t.subject.value;
            const std::string& ap = t.object.value;
            if (!has_type(g, m, ont.malware()) || !has_type(g, ap, ont.attack_pattern())) continue;
            if (linked(g, ont, ap, param)) pairs.emplace(m, ap);
        }
        for (const auto& [m, ap] : pairs) {
            Hypothesis h;
            h.id = hypothesis_id(m, ap, param);
            h.malware = m;
            h.attack_pattern = ap;
            h.parameter = param;
            h.evidence_terms.insert(param);
            for (const std::string* node : {&m, &ap}) {
                for (std::size_t idx : g.by_object(Term::iri(*node)))
                    if (g.triples()[idx].predicate == indicates) h.evidence_terms.insert(g.triples()[idx].subject.value);
            }
            for (std::size_t idx : g.by_subject(Term::iri(m)))
                if (g.triples()[idx].predicate == has_hash && g.triples()[idx].object.is_iri())
                    h.evidence_terms.insert(g.triples()[idx].object.value);
            for (std::size_t idx : g.by_object(Term::iri(ap)))
                if (g.triples()[idx].predicate == mitigates) h.action = RuleAction::block;

            auto port = literal_of(g, ap, ont.port());
            if (!port) port = literal_of(g, param, ont.port());
            auto proto = literal_of(g, ap, ont.protocol());
            if (!proto) proto = literal_of(g, param, ont.protocol());
            h.port = parse_port(port);
            h.protocol = normalize_protocol(proto);
            out.push_back(std::move(h));
        }
    }
    return out;
}

}  // namespace ckg::rules
