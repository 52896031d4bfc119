// qwalk: command-line front end. Subcommands: gen, walk, entropy, capacity,
// coin-sweep, hadamard-line, karp-sipser, matching-scatter, ensemble.

#include "qwalk/entanglement.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/matching.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/walk.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace qwalk;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Shared global options.
struct Globals {
    std::uint64_t seed = 1;
    std::string log_base = "natural";
    std::string out_path;
    std::string format = "csv";

    LogBase base() const { return log_base == "two" || log_base == "2" ? LogBase::two : LogBase::natural; }
};

// Writes either to --out or stdout.
class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Graph source shared by most subcommands: an edge-list file or a generator.
struct GraphOpts {
    std::string file;
    std::string model;
    int n = 0;
    double p = -1.0;
    int m = 0;
    bool require_connected = false;
};

void add_graph_options(CLI::App* sub, GraphOpts& opts) {
    sub->add_option("--graph", opts.file, "edge-list file (one 'u v' pair per line, # comments)");
    sub->add_option("--model", opts.model, "generator: er, ba, cycle, prism")
        ->check(CLI::IsMember({"er", "ba", "cycle", "prism"}));
    sub->add_option("-n,--nodes", opts.n, "node count for generators");
    sub->add_option("-p,--prob", opts.p, "er edge probability");
    sub->add_option("-m,--attach", opts.m, "ba attachments per node");
    sub->add_flag("--require-connected", opts.require_connected,
                  "er: rejection-sample until connected");
}

Graph build_graph(const GraphOpts& opts, std::uint64_t seed) {
    if (!opts.file.empty()) return parse_edge_list(read_file(opts.file));
    if (opts.model == "er") return generate_er(opts.n, opts.p, seed, opts.require_connected);
    if (opts.model == "ba") return generate_ba(opts.n, opts.m, seed);
    if (opts.model == "cycle") return generate_cycle(opts.n);
    if (opts.model == "prism") return triangular_prism();
    throw std::runtime_error("no graph given: use --graph <file> or --model <gen>");
}

std::pair<int, int> parse_arc_option(const std::string& text) {
    std::istringstream in(text);
    int u, v;
    if (!(in >> u >> v)) throw std::runtime_error("expected an arc as two integers: \"u v\"");
    return {u, v};
}

json witness_json(const Matching& m) {
    json arr = json::array();
    for (const auto& [s, t] : m) arr.push_back({s, t});
    return arr;
}

int run_gen(const Globals& g, const GraphOpts& opts, bool dump_arcs) {
    const Graph graph = build_graph(opts, g.seed);
    OutputStream out(g.out_path);
    if (dump_arcs) {
        const ArcSpace space = symmetric_digraph(graph);
        out.get() << "index,tail,head,reverse\n";
        for (int a = 0; a < space.n_arcs(); ++a) {
            out.get() << a << ',' << space.arcs[a].first << ',' << space.arcs[a].second << ','
                      << space.reverse_of[a] << '\n';
        }
        return 0;
    }
    if (g.format == "json") {
        const GraphMetrics gm = metrics(graph);
        json j;
        j["n_nodes"] = graph.n_nodes;
        j["edges"] = json::array();
        for (const auto& [u, v] : graph.edges) j["edges"].push_back({u, v});
        j["mean_degree"] = gm.mean_degree;
        j["avg_clustering"] = gm.avg_clustering;
        j["connected"] = gm.connected;
        j["max_degree"] = gm.max_degree;
        out.get() << j.dump(2) << '\n';
        return 0;
    }
    out.get() << to_edge_list(graph);
    return 0;
}

int run_walk(const Globals& g, const GraphOpts& opts, const std::string& start_arc, int steps,
             const std::string& coin_name) {
    if (coin_name != "grover") throw std::runtime_error("only --coin grover is supported");
    const Graph graph = build_graph(opts, g.seed);
    const auto space = make_arc_space(graph);
    if (space->n_arcs() == 0) throw std::runtime_error("graph has no edges to walk on");

    WalkerState start;
    if (start_arc.empty()) {
        start = basis_state(space, space->arcs[0].first, space->arcs[0].second);
    } else {
        const auto [u, v] = parse_arc_option(start_arc);
        start = basis_state(space, u, v);
    }
    const CoinOperator coin = grover_coin(*space);

    OutputStream out(g.out_path);
    out.get() << "# log_base=" << log_base_name(g.base()) << " coin=\"grover (2/d)J - I\"\n";
    out.get() << "t,entropy,norm\n";
    evolve(start, coin, steps, [&](int t, const WalkerState& s) {
        out.get() << t << ',' << fmt_double(source_target_entropy(s, g.base())) << ','
                  << fmt_double(s.norm()) << '\n';
    });
    return 0;
}

int run_entropy(const Globals& g, const GraphOpts& opts, const std::string& state_path) {
    const Graph graph = build_graph(opts, g.seed);
    const auto space = make_arc_space(graph);

    WalkerState state;
    state.space = space;
    state.amplitudes = Eigen::VectorXcd::Zero(space->n_arcs());
    std::istringstream in(read_file(state_path));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        std::string a_s, re_s, im_s;
        if (!std::getline(row, a_s, ',') || !std::getline(row, re_s, ',') ||
            !std::getline(row, im_s, ',')) {
            throw std::runtime_error("state file line " + std::to_string(line_no) +
                                     ": expected arc,re,im");
        }
        const int a = std::stoi(a_s);
        if (a < 0 || a >= space->n_arcs()) {
            throw std::runtime_error("state file line " + std::to_string(line_no) +
                                     ": arc index out of range");
        }
        state.amplitudes[a] = {std::stod(re_s), std::stod(im_s)};
    }

    const SchmidtSpectrum spectrum = schmidt_decompose(amplitude_matrix(state));
    const double entropy = singular_value_entropy(spectrum.values, g.base());
    const int bound = largest_matching_in_support(state);

    OutputStream out(g.out_path);
    if (g.format == "json") {
        json j;
        j["norm"] = state.norm();
        j["log_base"] = log_base_name(g.base());
        j["entropy"] = entropy;
        j["rank"] = spectrum.rank;
        j["singular_values"] = std::vector<double>(
            spectrum.values.data(), spectrum.values.data() + spectrum.values.size());
        j["support_matching_bound"] = bound;
        out.get() << j.dump(2) << '\n';
        return 0;
    }
    out.get() << "norm " << fmt_double(state.norm()) << '\n';
    out.get() << "entropy " << fmt_double(entropy) << " (log_base=" << log_base_name(g.base())
              << ")\n";
    out.get() << "rank " << spectrum.rank << '\n';
    out.get() << "singular_values";
    for (Eigen::Index i = 0; i < spectrum.values.size(); ++i) {
        out.get() << ' ' << fmt_double(spectrum.values[i]);
    }
    out.get() << '\n';
    out.get() << "support_matching_bound " << bound << '\n';
    return 0;
}

int run_capacity(const Globals& g, const GraphOpts& opts) {
    const Graph graph = build_graph(opts, g.seed);
    const CapacityReport report = entanglement_capacity(graph, g.base());
    json j;
    j["max_matching_size"] = report.max_matching_size;
    j["capacity"] = report.capacity;
    j["log_base"] = log_base_name(report.log_base);
    j["witness"] = witness_json(report.witness);
    OutputStream out(g.out_path);
    out.get() << j.dump(2) << '\n';
    return 0;
}

int run_coin_sweep(const Globals& g, const GraphOpts& opts, int n_states, bool keep_all) {
    const Graph graph = build_graph(opts, g.seed);
    const auto space = make_arc_space(graph);
    std::vector<WalkerState> states;
    states.reserve(n_states);
    for (int i = 0; i < n_states; ++i) {
        states.push_back(haar_random_state(space, derive_seed(g.seed, i)));
    }
    const SweepResult sweep = coin_assignment_sweep(graph, states, g.base(), keep_all);

    OutputStream out(g.out_path);
    out.get() << "# n_assignments=" << sweep.n_assignments
              << " log_base=" << log_base_name(g.base()) << " states=" << n_states
              << " seed=" << g.seed << '\n';
    out.get() << "# per state: index,source_target,min,max,mean\n";
    for (std::size_t s = 0; s < sweep.per_state.size(); ++s) {
        const SweepStateSummary& sum = sweep.per_state[s];
        out.get() << "# " << s << ',' << fmt_double(sum.source_target) << ','
                  << fmt_double(sum.min_entropy) << ',' << fmt_double(sum.max_entropy) << ','
                  << fmt_double(sum.mean_entropy) << '\n';
    }
    if (keep_all) {
        out.get() << "assignment,state,entropy\n";
        for (long long a = 0; a < sweep.n_assignments; ++a) {
            for (std::size_t s = 0; s < sweep.per_state.size(); ++s) {
                out.get() << a << ',' << s << ',' << fmt_double(sweep.per_state[s].entropies[a])
                          << '\n';
            }
        }
    } else {
        out.get() << "state,source_target,min,max,mean\n";
        for (std::size_t s = 0; s < sweep.per_state.size(); ++s) {
            const SweepStateSummary& sum = sweep.per_state[s];
            out.get() << s << ',' << fmt_double(sum.source_target) << ','
                      << fmt_double(sum.min_entropy) << ',' << fmt_double(sum.max_entropy) << ','
                      << fmt_double(sum.mean_entropy) << '\n';
        }
    }
    return 0;
}

int run_hadamard_line(const Globals& g, int steps, int sites) {
    const HadamardLineResult result = hadamard_line(steps, sites);
    const double scale = log_base_scale(g.base());
    OutputStream out(g.out_path);
    out.get() << "# n_sites=" << result.n_sites << " log_base=" << log_base_name(g.base())
              << '\n';
    out.get() << "t,coin_entropy,source_target_entropy,norm\n";
    for (int t = 0; t <= result.t_max; ++t) {
        out.get() << t << ',' << fmt_double(scale * result.coin_position_entropy[t]) << ','
                  << fmt_double(scale * result.source_target_entropy[t]) << ','
                  << fmt_double(result.norms[t]) << '\n';
    }
    return 0;
}

int run_karp_sipser(const Globals& g, int n, double kbar) {
    const double y = solve_fixed_point(kbar);
    const double expected = karp_sipser_expected(n, kbar);
    const double residual = std::abs(y - std::exp(-kbar * std::exp(-kbar * y)));
    OutputStream out(g.out_path);
    if (g.format == "json") {
        json j;
        j["n"] = n;
        j["kbar"] = kbar;
        j["y"] = y;
        j["residual"] = residual;
        j["expected_matching"] = expected;
        out.get() << j.dump(2) << '\n';
        return 0;
    }
    out.get() << "kbar " << fmt_double(kbar) << '\n';
    out.get() << "y " << fmt_double(y) << " (residual " << fmt_double(residual) << ")\n";
    out.get() << "expected_matching " << fmt_double(expected) << " of n=" << n << '\n';
    return 0;
}

int run_matching_scatter(const Globals& g, ScatterSpec spec) {
    spec.base_seed = g.seed;
    const ScatterResult result = matching_scatter(spec);
    OutputStream out(g.out_path);
    if (g.format == "json") {
        json j;
        j["model"] = spec.model;
        j["realizations"] = spec.realizations;
        j["base_seed"] = spec.base_seed;
        j["slope"] = result.slope;
        j["records"] = json::array();
        for (const ScatterRecord& r : result.records) {
            j["records"].push_back({{"n_nodes", r.n_nodes},
                                    {"param", r.param},
                                    {"realization", r.realization},
                                    {"matching_graph", r.matching_graph},
                                    {"matching_cover", r.matching_cover}});
        }
        j["averages"] = json::array();
        for (const ScatterAverage& a : result.averages) {
            j["averages"].push_back({{"n_nodes", a.n_nodes},
                                     {"param", a.param},
                                     {"mean_graph", a.mean_graph},
                                     {"mean_cover", a.mean_cover}});
        }
        out.get() << j.dump(2) << '\n';
        return 0;
    }
    out.get() << "# model=" << spec.model << " realizations=" << spec.realizations
              << " base_seed=" << spec.base_seed << " slope=" << fmt_double(result.slope) << '\n';
    out.get() << "n_nodes,param,realization,matching_graph,matching_cover\n";
    for (const ScatterRecord& r : result.records) {
        out.get() << r.n_nodes << ',' << fmt_double(r.param) << ',' << r.realization << ','
                  << r.matching_graph << ',' << r.matching_cover << '\n';
    }
    return 0;
}

int run_ensemble_cmd(const Globals& g, const std::string& config_path,
                     const std::string& series_path, const std::string& summary_path,
                     const std::string& json_path, int workers) {
    ExperimentConfig cfg = config_from_json(read_file(config_path));
    if (!series_path.empty()) cfg.csv_series = series_path;
    if (!summary_path.empty()) cfg.csv_summary = summary_path;
    if (!json_path.empty()) cfg.json_out = json_path;
    if (workers >= 0) cfg.workers = workers;
    const EnsembleResult result = run_ensemble(cfg);
    for (const ParameterSummary& s : result.summaries) {
        std::cout << "param " << fmt_double(s.param)
                  << ": mean_plateau=" << fmt_double(s.mean_plateau)
                  << " mean_clustering=" << fmt_double(s.mean_clustering) << '\n';
    }
    if (!g.out_path.empty()) {
        OutputStream out(g.out_path);
        out.get() << ensemble_to_json(result) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time quantum walks on graphs: source-target entanglement, "
                 "matching capacity, ensemble experiments"};
    app.require_subcommand(1);

    Globals globals;
    app.add_option("--seed", globals.seed, "base RNG seed")->capture_default_str();
    app.add_option("--log-base", globals.log_base, "entropy log base: natural|two")
        ->check(CLI::IsMember({"natural", "e", "two", "2"}))
        ->capture_default_str();
    app.add_option("--out", globals.out_path, "output file (default stdout)");
    app.add_option("--format", globals.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // gen
    auto* gen = app.add_subcommand("gen", "generate or ingest a graph and print it");
    gen->fallthrough();
    GraphOpts gen_opts;
    add_graph_options(gen, gen_opts);
    bool dump_arcs = false;
    gen->add_flag("--dump-arcs", dump_arcs, "dump the arc table (index,tail,head,reverse)");
    gen->callback([&]() { run_gen(globals, gen_opts, dump_arcs); });

    // walk
    auto* walk = app.add_subcommand("walk", "evolve a Grover walk and record entropy per step");
    walk->fallthrough();
    GraphOpts walk_opts;
    add_graph_options(walk, walk_opts);
    std::string walk_start, walk_coin = "grover";
    int walk_steps = 100;
    walk->add_option("--start-arc", walk_start, "initial arc as \"u v\" (default: first arc)");
    walk->add_option("--coin", walk_coin, "coin operator (grover)")->capture_default_str();
    walk->add_option("--steps", walk_steps, "number of steps")->capture_default_str();
    walk->callback([&]() { run_walk(globals, walk_opts, walk_start, walk_steps, walk_coin); });

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Schmidt spectrum and entropy of a stored state");
    entropy->fallthrough();
    GraphOpts entropy_opts;
    add_graph_options(entropy, entropy_opts);
    std::string state_path;
    entropy->add_option("--state", state_path, "state CSV: arc,re,im per line")->required();
    entropy->callback([&]() { run_entropy(globals, entropy_opts, state_path); });

    // capacity
    auto* capacity = app.add_subcommand("capacity", "entanglement capacity and witness matching");
    capacity->fallthrough();
    GraphOpts capacity_opts;
    add_graph_options(capacity, capacity_opts);
    capacity->callback([&]() { run_capacity(globals, capacity_opts); });

    // coin-sweep
    auto* sweep = app.add_subcommand("coin-sweep",
                                     "exhaustive coin-assignment sweep on a regular graph");
    sweep->fallthrough();
    GraphOpts sweep_opts;
    add_graph_options(sweep, sweep_opts);
    int sweep_states = 10;
    bool sweep_keep_all = false;
    sweep->add_option("--states", sweep_states, "number of Haar random states")
        ->capture_default_str();
    sweep->add_flag("--keep-all", sweep_keep_all, "emit one row per (assignment, state)");
    sweep->callback([&]() { run_coin_sweep(globals, sweep_opts, sweep_states, sweep_keep_all); });

    // hadamard-line
    auto* hline = app.add_subcommand("hadamard-line",
                                     "Hadamard walk on a segment: both entropy series");
    hline->fallthrough();
    int hline_steps = 100, hline_sites = 0;
    hline->add_option("--steps", hline_steps, "number of steps")->capture_default_str();
    hline->add_option("--sites", hline_sites, "segment length (0 = smallest valid, 2*steps+3)")
        ->capture_default_str();
    hline->callback([&]() { run_hadamard_line(globals, hline_steps, hline_sites); });

    // karp-sipser
    auto* ks = app.add_subcommand("karp-sipser", "expected maximum matching of an ER graph");
    ks->fallthrough();
    int ks_n = 10000;
    double ks_kbar = 0.0;
    ks->add_option("--n", ks_n, "node count")->capture_default_str();
    ks->add_option("--kbar", ks_kbar, "mean degree")->required();
    ks->callback([&]() { run_karp_sipser(globals, ks_n, ks_kbar); });

    // matching-scatter
    auto* scatter = app.add_subcommand("matching-scatter",
                                       "paired maximum matchings of G and B(G) over ensembles");
    scatter->fallthrough();
    ScatterSpec scatter_spec;
    scatter->add_option("--model", scatter_spec.model, "er or ba")
        ->check(CLI::IsMember({"er", "ba"}))
        ->capture_default_str();
    scatter->add_option("--sizes", scatter_spec.sizes, "node counts")
        ->delimiter(',')
        ->capture_default_str();
    scatter->add_option("--params", scatter_spec.params,
                        "er: p values, ba: m values (default: built-in grid)")
        ->delimiter(',');
    scatter->add_option("--realizations", scatter_spec.realizations, "graphs per parameter")
        ->capture_default_str();
    scatter->callback([&]() { run_matching_scatter(globals, scatter_spec); });

    // ensemble
    auto* ensemble = app.add_subcommand("ensemble", "run a full ensemble experiment from JSON config");
    ensemble->fallthrough();
    std::string cfg_path, series_path, summary_path, json_path;
    int ens_workers = -1;
    ensemble->add_option("--config", cfg_path, "experiment config JSON (\"schema\": 1)")
        ->required()
        ->check(CLI::ExistingFile);
    ensemble->add_option("--series", series_path, "override series CSV path");
    ensemble->add_option("--summary", summary_path, "override summary CSV path");
    ensemble->add_option("--json-out", json_path, "override JSON dump path");
    ensemble->add_option("--workers", ens_workers, "override worker count (0 = auto)");
    ensemble->callback([&]() {
        run_ensemble_cmd(globals, cfg_path, series_path, summary_path, json_path, ens_workers);
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
