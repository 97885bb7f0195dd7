// Serial reference kernels against their OpenMP counterparts.

#include "ckg/kg/graph.hpp"
#include "ckg/kg/ntriples.hpp"
#include "ckg/kg/ontology.hpp"
#include "ckg/kg/query.hpp"
#include "ckg/observe/observation.hpp"
#include "ckg/rl/evaluate.hpp"
#include "ckg/rl/scenario.hpp"
#include "ckg/rules/entailment.hpp"
#include "ckg/rules/scorer.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>
#include <string>
#include <vector>

using namespace ckg;

namespace {

// Layered graph: hosts run services, services expose ports, malware targets
// services. The query joins all three.
kg::Graph synthetic_graph(int hosts) {
    kg::Graph g;
    std::mt19937_64 rng(42);
    const std::string ns = "http://example.org/";
    for (int h = 0; h < hosts; ++h) {
        const auto host = ns + "host" + std::to_string(h);
        for (int s = 0; s < 4; ++s) {
            const auto svc = ns + "svc" + std::to_string(rng() % (hosts / 2 + 1));
            g.assert_triple(host, ns + "runs", kg::Term::iri(svc));
            g.assert_triple(svc, ns + "port", kg::Term::literal(std::to_string(rng() % 1024)));
        }
    }
    for (int m = 0; m < hosts / 4; ++m)
        g.assert_triple(ns + "mal" + std::to_string(m), ns + "targets",
                        kg::Term::iri(ns + "svc" + std::to_string(rng() % (hosts / 2 + 1))));
    return g;
}

const char* kJoin =
    "PREFIX ex: <http://example.org/>\n"
    "SELECT ?m ?h ?p WHERE { ?m ex:targets ?s . ?h ex:runs ?s . ?s ex:port ?p . }";

template <bool Serial>
void BM_query(benchmark::State& st) {
    const auto g = synthetic_graph(static_cast<int>(st.range(0)));
    const auto q = kg::parse_query(kJoin);
    for (auto _ : st) {
        auto r = Serial ? kg::evaluate_serial(g, q) : kg::evaluate(g, q);
        benchmark::DoNotOptimize(r);
    }
    st.counters["triples"] = static_cast<double>(g.size());
}

std::vector<rules::Candidate> synthetic_candidates(int n) {
    std::vector<rules::Candidate> out;
    std::mt19937_64 rng(7);
    for (int i = 0; i < n; ++i) {
        rules::Entailment e;
        e.tokens = {"[START]", "mal" + std::to_string(rng() % 50), "uses", "pattern" + std::to_string(rng() % 20),
                    "block", "[SEP]"};
        for (int k = 0; k < 24; ++k) e.tokens.push_back("tok" + std::to_string(rng() % 200));
        out.push_back({"h" + std::to_string(i), std::move(e)});
    }
    return out;
}

template <bool Serial>
void BM_score(benchmark::State& st) {
    const auto g = synthetic_graph(400);
    const auto cands = synthetic_candidates(static_cast<int>(st.range(0)));
    const rules::CorrelationScorer scorer;
    for (auto _ : st) {
        auto r = Serial ? rules::score_all_serial(scorer, cands, g) : rules::score_all(scorer, cands, g);
        benchmark::DoNotOptimize(r);
    }
}

// construct_observations has no separate serial entry point; the serial
// baseline pins OpenMP to one thread.
void BM_windows(benchmark::State& st) {
    const int threads = st.range(1) == 0 ? 1 : omp_get_max_threads();
    std::vector<observe::FlowRecord> flows;
    std::mt19937_64 rng(3);
    for (int i = 0; i < st.range(0); ++i) {
        observe::FlowRecord r;
        r.timestamp = static_cast<double>(i) * 0.05;
        r.src = "10.0.0." + std::to_string(rng() % 250);
        r.dst = "10.0.1." + std::to_string(rng() % 250);
        r.dst_port = static_cast<std::uint16_t>(rng() % 2 ? 445 : 3389);
        r.protocol = observe::Protocol::tcp;
        r.bytes = 500 + rng() % 1000;
        flows.push_back(std::move(r));
    }
    const observe::ParameterSpec spec{kg::Ontology().iri("smb-bytes"), observe::FlowField::bytes, {}, 750.0};
    observe::WindowConfig cfg;
    cfg.window = 1.0;
    const int saved = omp_get_max_threads();
    omp_set_num_threads(threads);
    for (auto _ : st) {
        auto r = observe::construct_observations(flows, spec, {}, cfg);
        benchmark::DoNotOptimize(r);
    }
    omp_set_num_threads(saved);
    st.counters["threads"] = threads;
}

template <bool Serial>
void BM_simulate(benchmark::State& st) {
    const auto sc = rl::read_scenario_file(std::string(CKG_FIXTURES_DIR) + "/rl/scenario.json");
    const auto g = kg::read_ntriples_file(std::string(CKG_FIXTURES_DIR) + "/ckg.nt");
    rl::SimulationConfig cfg;
    cfg.episodes = 50;
    for (int s = 0; s < st.range(0); ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s + 1));
    for (auto _ : st) {
        auto r = Serial ? rl::simulate_serial(sc, &g, cfg) : rl::simulate(sc, &g, cfg);
        benchmark::DoNotOptimize(r);
    }
}

}  // namespace

BENCHMARK(BM_query<true>)->Name("query/serial")->Arg(500)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_query<false>)->Name("query/omp")->Arg(500)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score<true>)->Name("score/serial")->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score<false>)->Name("score/omp")->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_windows)->Name("windows")->Args({200000, 0})->Args({200000, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate<true>)->Name("simulate/serial")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate<false>)->Name("simulate/omp")->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
