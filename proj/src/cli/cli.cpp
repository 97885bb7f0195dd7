#include "ckg/cli/cli.hpp"

#include "ckg/cli/config.hpp"
#include "ckg/error.hpp"
#include "ckg/kg/ntriples.hpp"
#include "ckg/kg/query.hpp"
#include "ckg/observe/flow.hpp"
#include "ckg/observe/policy.hpp"
#include "ckg/rl/evaluate.hpp"
#include "ckg/rules/pipeline.hpp"
#include "ckg/stix/bundle.hpp"
#include "ckg/stix/taxii.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace ckg::cli {

namespace {

std::string read_text(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(std::string("cannot read ") + what + " '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ValidationError("write failed for '" + path + "'");
}

std::string need(const std::string& value, const char* flag) {
    if (value.empty()) throw ValidationError(std::string("missing ") + flag + " (flag or config)");
    return value;
}

// Values given on the command line; unset ones keep the config value.
struct Overrides {
    std::optional<double> threshold, epsilon, window, beta, gamma, alpha, explore;
    std::optional<int> k, episodes;
    std::optional<std::uint64_t> seed;
    std::string seeds, graph, policies, scenario, prefix;

    void apply(Config& c) const {
        if (threshold) c.align_threshold = *threshold;
        if (epsilon) c.window.epsilon = *epsilon;
        if (window) c.window.window = *window;
        if (beta) c.shaping.beta = *beta;
        if (gamma) c.shaping.gamma = *gamma;
        if (alpha) c.shaping.alpha = *alpha;
        if (explore) c.shaping.epsilon = *explore;
        if (k) c.shaping.k = *k;
        if (episodes) c.episodes = *episodes;
        if (seed) c.seed = *seed;
        if (!seeds.empty()) c.seeds = parse_seed_list(seeds);
        if (!graph.empty()) c.graph = graph;
        if (!policies.empty()) c.policies = policies;
        if (!scenario.empty()) c.scenario = scenario;
        if (!prefix.empty()) c.prefix = prefix;
    }
};

Config load_config(const std::string& flag_path) {
    std::string path = flag_path;
    if (path.empty())
        if (const char* env = std::getenv("CKG_CONFIG"); env && *env) path = env;
    return path.empty() ? Config{} : read_config_file(path);
}

int cmd_ingest(const Config& c, const std::string& source, const std::string& out_path, std::ostream& out) {
    const std::string graph_path = need(c.graph, "--graph");
    const std::string target = out_path.empty() ? graph_path : out_path;
    kg::Graph g;
    if (std::filesystem::exists(graph_path)) g = kg::read_ntriples_file(graph_path);
    const kg::Ontology ont(c.prefix);
    const auto mapping = stix::map_to_triples(stix::fetch_collection(source), ont);
    std::size_t added = 0;
    for (const auto& t : mapping.triples) added += g.assert_triple(t) ? 1 : 0;
    kg::write_ntriples_file(g, target);
    out << "added: " << added << "\n";
    out << "skipped: " << mapping.skipped.size() << "\n";
    return kExitOk;
}

int cmd_query(const Config& c, std::string text, const std::string& file, const std::vector<std::string>& prefixes,
              std::ostream& out) {
    if (!file.empty()) text = read_text(file, "query file");
    if (text.empty()) throw ValidationError("no query given");
    kg::ParseOptions opts;
    for (const auto& p : prefixes) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationError("--prefix expects NAME=IRI, got '" + p + "'");
        opts.prefixes[p.substr(0, eq)] = p.substr(eq + 1);
    }
    const kg::Graph g = kg::read_ntriples_file(need(c.graph, "--graph"));
    const auto q = kg::parse_query(text, opts);
    out << kg::format_rows(kg::evaluate(g, q));
    return kExitOk;
}

rules::PipelineConfig pipeline_config(const Config& c) {
    rules::PipelineConfig p;
    p.parameters = c.parameters;
    p.window = c.window;
    p.align_threshold = c.align_threshold;
    p.first_sid = c.first_sid;
    return p;
}

int cmd_observe(const Config& c, const std::string& flows_path, const std::string& out_graph,
                const std::string& rejections, std::ostream& out) {
    kg::Graph g = kg::read_ntriples_file(need(c.graph, "--graph"));
    const auto flows = observe::read_flows_file(need(flows_path, "--flows"));
    const auto policies = observe::read_policies_file(need(c.policies, "--policies"));
    const kg::Ontology ont(c.prefix);
    std::vector<observe::AssertionOutcome> outcomes;
    for (const auto& spec : c.parameters)
        for (const auto& o : observe::construct_observations(flows, spec, policies, c.window))
            outcomes.push_back(observe::assert_observation(o, g, ont, c.align_threshold));
    for (const auto& o : outcomes) {
        nlohmann::ordered_json j;
        j["parameter"] = o.observation.parameter;
        j["window_start"] = o.observation.window_start;
        j["window_end"] = o.observation.window_end;
        j["mean"] = o.observation.mean;
        j["direction"] = observe::direction_iri(o.observation.direction, ont);
        j["score"] = o.score;
        j["asserted"] = o.asserted;
        out << j.dump() << "\n";
    }
    if (!out_graph.empty()) kg::write_ntriples_file(g, out_graph);
    if (!rejections.empty()) write_text(rejections, observe::rejection_jsonl(outcomes, ont));
    return kExitOk;
}

int cmd_rules(const Config& c, const std::string& flows_path, const std::string& out_path, const std::string& ranked,
              const std::string& golden, bool bless, std::ostream& out, std::ostream& err) {
    const std::string rules_path = need(out_path, "--out");
    kg::Graph g = kg::read_ntriples_file(need(c.graph, "--graph"));
    const auto flows = observe::read_flows_file(need(flows_path, "--flows"));
    const auto policies = observe::read_policies_file(need(c.policies, "--policies"));
    const kg::Ontology ont(c.prefix);
    const rules::CorrelationScorer scorer(ont, c.weights);
    const auto res = rules::run_pipeline(g, flows, policies, pipeline_config(c), scorer, ont);
    const std::string text = res.rules_text();
    write_text(rules_path, text);
    if (!ranked.empty()) write_text(ranked, rules::ranked_report_json(res.scored));
    out << "rules: " << res.rules.size() << "\n";

    if (golden.empty()) return kExitOk;
    if (bless) {
        write_text(golden, text);
        out << "blessed: " << golden << "\n";
        return kExitOk;
    }
    if (read_text(golden, "golden file") != text) {
        err << "error: rules differ from golden file '" << golden << "'\n";
        return kExitInternal;
    }
    out << "golden: match\n";
    return kExitOk;
}

int cmd_simulate(const Config& c, bool unguided, const std::string& opponent, const std::string& out_path,
                 std::ostream& out) {
    const auto sc = rl::read_scenario_file(need(c.scenario, "--scenario"));
    rl::SimulationConfig sim;
    sim.shaping = c.shaping;
    sim.episodes = c.episodes;
    sim.seeds = c.seed_list();
    sim.guided = !unguided;
    sim.eval.episodes_per_seed = c.eval_episodes;
    if (opponent == "self-play") sim.opponent = rl::Opponent::self_play;
    else if (opponent != "scripted") throw ValidationError("--opponent must be scripted or self-play");

    std::optional<kg::Graph> graph;
    if (sim.guided) graph = kg::read_ntriples_file(need(c.graph, "--graph"));
    const auto report = rl::simulate(sc, graph ? &*graph : nullptr, sim);
    if (out_path.empty()) out << report.to_json();
    else write_text(out_path, report.to_json());
    return kExitOk;
}

int cmd_report(const std::string& guided, const std::string& unguided, std::ostream& out) {
    const auto g = rl::MetricsReport::from_json(read_text(guided, "report"));
    const auto u = rl::MetricsReport::from_json(read_text(unguided, "report"));
    out << rl::comparison_table(g, u);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cybersecurity knowledge graph toolkit", "ckg"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (default: $CKG_CONFIG)");

    Overrides ov;
    auto common = [&](CLI::App* sub) { sub->add_option("--prefix", ov.prefix, "Ontology namespace prefix"); };

    auto* ingest = app.add_subcommand("ingest", "Map a STIX bundle (file or TAXII URL) into the graph");
    std::string source, ingest_out;
    ingest->add_option("source", source, "Bundle path or http URL")->required();
    ingest->add_option("--graph", ov.graph, "Graph to extend (created when absent)");
    ingest->add_option("--out", ingest_out, "Output graph (default: --graph)");
    common(ingest);

    auto* query = app.add_subcommand("query", "Run a SELECT query against a graph");
    std::string query_text, query_file;
    std::vector<std::string> prefixes;
    query->add_option("query", query_text, "Query text");
    query->add_option("--file", query_file, "Read the query from a file");
    query->add_option("--graph", ov.graph, "N-Triples graph");
    query->add_option("--prefix", prefixes, "Extra prefix NAME=IRI")->take_all();

    std::string flows;
    auto* obs = app.add_subcommand("observe", "Window flows into observations and assert the aligned ones");
    std::string obs_out, rejections;
    obs->add_option("--graph", ov.graph, "N-Triples graph");
    obs->add_option("--flows", flows, "Flow CSV");
    obs->add_option("--policies", ov.policies, "Admin policy JSON");
    obs->add_option("--out", obs_out, "Write the updated graph here");
    obs->add_option("--rejections", rejections, "Write rejected observations (JSON lines)");
    obs->add_option("--threshold", ov.threshold, "Alignment threshold");
    obs->add_option("--epsilon", ov.epsilon, "Mean-change tolerance");
    obs->add_option("--window", ov.window, "Window length in seconds");
    common(obs);

    auto* rules_cmd = app.add_subcommand("rules", "Run the observation-to-rule pipeline");
    std::string rules_out, ranked, golden;
    bool bless = false;
    rules_cmd->add_option("--graph", ov.graph, "N-Triples graph");
    rules_cmd->add_option("--flows", flows, "Flow CSV");
    rules_cmd->add_option("--policies", ov.policies, "Admin policy JSON");
    rules_cmd->add_option("--out", rules_out, "Rule file to write");
    rules_cmd->add_option("--ranked", ranked, "Ranked hypotheses JSON to write");
    rules_cmd->add_option("--golden", golden, "Compare the rule file with this golden file");
    rules_cmd->add_flag("--bless", bless, "Regenerate the golden file instead of comparing");
    rules_cmd->add_option("--threshold", ov.threshold, "Alignment threshold");
    rules_cmd->add_option("--epsilon", ov.epsilon, "Mean-change tolerance");
    rules_cmd->add_option("--window", ov.window, "Window length in seconds");
    common(rules_cmd);

    auto* sim = app.add_subcommand("simulate", "Train and evaluate defenders on a scenario");
    bool guided_flag = false, unguided = false;
    std::string opponent = "scripted", sim_out;
    sim->add_option("--scenario", ov.scenario, "Scenario JSON");
    sim->add_option("--graph", ov.graph, "CKG used for guidance");
    auto* g_opt = sim->add_flag("--guided", guided_flag, "Knowledge-guided training (default)");
    sim->add_flag("--unguided", unguided, "Plain self-play")->excludes(g_opt);
    sim->add_option("--episodes", ov.episodes, "Training episodes per seed");
    sim->add_option("--seeds", ov.seeds, "Seed list, e.g. 1-20 or 1,4,9");
    sim->add_option("--seed", ov.seed, "Single seed");
    sim->add_option("--opponent", opponent, "scripted or self-play");
    sim->add_option("--beta", ov.beta, "Shaping magnitude");
    sim->add_option("--k", ov.k, "Hop radius");
    sim->add_option("--gamma", ov.gamma, "Discount");
    sim->add_option("--alpha", ov.alpha, "Learning rate");
    sim->add_option("--explore", ov.explore, "Exploration rate");
    sim->add_option("--out", sim_out, "Write the MetricsReport JSON here (default: stdout)");

    auto* report = app.add_subcommand("report", "Compare a guided and an unguided MetricsReport");
    std::string guided_path, unguided_path;
    report->add_option("guided", guided_path, "Guided report JSON")->required();
    report->add_option("unguided", unguided_path, "Unguided report JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUser;
    }

    try {
        if (report->parsed()) return cmd_report(guided_path, unguided_path, out);
        Config c = load_config(config_path);
        ov.apply(c);
        c.validate();
        if (ingest->parsed()) return cmd_ingest(c, source, ingest_out, out);
        if (query->parsed()) return cmd_query(c, query_text, query_file, prefixes, out);
        if (obs->parsed()) return cmd_observe(c, flows, obs_out, rejections, out);
        if (rules_cmd->parsed()) return cmd_rules(c, flows, rules_out, ranked, golden, bless, out, err);
        if (sim->parsed()) return cmd_simulate(c, unguided, opponent, sim_out, out);
    } catch (const rules::StageError& e) {
        err << "error: stage '" << e.stage() << "' failed: " << e.what() << "\n";
        return kExitUser;
    } catch (const ParseError& e) {
        err << "error: " << e.what();
        if (e.location()) err << " (position " << e.location() << ")";
        err << "\n";
        return kExitUser;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUser;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace ckg::cli
