#include "qwalk/experiments.hpp"

#include "qwalk/entanglement.hpp"
#include "qwalk/matching.hpp"
#include "qwalk/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qwalk {

namespace {

using nlohmann::json;

constexpr const char* kCoinConvention = "grover (2/d)J - I";
constexpr const char* kBaSeedGraph = "star";
constexpr const char* kSeedProvenance =
    "graph seed = mix(base_seed, param_index, realization); haar start adds sub-stream 0x57a7e";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

LogBase parse_log_base(const std::string& name) {
    if (name == "natural" || name == "e") return LogBase::natural;
    if (name == "two" || name == "2") return LogBase::two;
    throw std::invalid_argument("log_base must be natural/e or two/2");
}

json config_to_json_obj(const ExperimentConfig& cfg) {
    json j;
    j["schema"] = 1;
    j["model"] = cfg.model;
    j["params"] = cfg.params;
    j["n_nodes"] = cfg.n_nodes;
    j["realizations"] = cfg.realizations;
    j["steps"] = cfg.steps;
    j["base_seed"] = cfg.base_seed;
    j["log_base"] = log_base_name(cfg.log_base);
    j["start_rule"] = cfg.start_rule;
    if (cfg.start_rule == "arc") j["start_arc"] = {cfg.start_tail, cfg.start_head};
    j["plateau_window"] = {cfg.plateau_start, cfg.plateau_end};
    j["require_connected"] = cfg.require_connected;
    j["store_states"] = cfg.store_states;
    j["workers"] = cfg.workers;
    if (!cfg.graph_file.empty()) j["graph_file"] = cfg.graph_file;
    if (!cfg.csv_series.empty()) j["csv_series"] = cfg.csv_series;
    if (!cfg.csv_summary.empty()) j["csv_summary"] = cfg.csv_summary;
    if (!cfg.json_out.empty()) j["json_out"] = cfg.json_out;
    return j;
}

ExperimentConfig config_from_json_obj(const json& j) {
    if (!j.contains("schema") || !j["schema"].is_number() || j["schema"].get<int>() != 1) {
        throw std::invalid_argument("config: expected \"schema\": 1");
    }
    ExperimentConfig cfg;
    cfg.model = j.value("model", cfg.model);
    if (j.contains("params")) cfg.params = j["params"].get<std::vector<double>>();
    cfg.n_nodes = j.value("n_nodes", cfg.n_nodes);
    cfg.realizations = j.value("realizations", cfg.realizations);
    cfg.steps = j.value("steps", cfg.steps);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    if (j.contains("log_base")) cfg.log_base = parse_log_base(j["log_base"].get<std::string>());
    cfg.start_rule = j.value("start_rule", cfg.start_rule);
    if (j.contains("start_arc")) {
        const auto& arr = j["start_arc"];
        if (!arr.is_array() || arr.size() != 2) {
            throw std::invalid_argument("config: start_arc must be [tail, head]");
        }
        cfg.start_tail = arr[0].get<int>();
        cfg.start_head = arr[1].get<int>();
    }
    if (j.contains("plateau_window")) {
        const auto& arr = j["plateau_window"];
        if (!arr.is_array() || arr.size() != 2) {
            throw std::invalid_argument("config: plateau_window must be [t_start, t_end]");
        }
        cfg.plateau_start = arr[0].get<int>();
        cfg.plateau_end = arr[1].get<int>();
    }
    cfg.require_connected = j.value("require_connected", cfg.require_connected);
    cfg.store_states = j.value("store_states", cfg.store_states);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.graph_file = j.value("graph_file", cfg.graph_file);
    cfg.csv_series = j.value("csv_series", cfg.csv_series);
    cfg.csv_summary = j.value("csv_summary", cfg.csv_summary);
    cfg.json_out = j.value("json_out", cfg.json_out);
    validate_config(cfg);
    return cfg;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return out;
}

void write_metadata_header(std::ostream& out, const ExperimentConfig& cfg) {
    out << "# schema=1 model=" << cfg.model << " n_nodes=" << cfg.n_nodes
        << " realizations=" << cfg.realizations << " steps=" << cfg.steps
        << " base_seed=" << cfg.base_seed << "\n";
    out << "# log_base=" << log_base_name(cfg.log_base) << " coin=\"" << kCoinConvention
        << "\" ba_seed_graph=" << kBaSeedGraph << "\n";
    out << "# start_rule=" << cfg.start_rule << " plateau_window=[" << cfg.plateau_start
        << "," << cfg.plateau_end << "] require_connected=" << (cfg.require_connected ? 1 : 0)
        << "\n";
}

RunRecord run_one(const ExperimentConfig& cfg, const Graph& file_graph, int param_index,
                  int realization) {
    RunRecord rec;
    rec.param_index = param_index;
    rec.param = cfg.params[param_index];
    rec.realization = realization;
    rec.seed = derive_seed(cfg.base_seed, param_index, realization);

    Graph g;
    if (cfg.model == "er") {
        g = generate_er(cfg.n_nodes, rec.param, rec.seed, cfg.require_connected);
    } else if (cfg.model == "ba") {
        g = generate_ba(cfg.n_nodes, static_cast<int>(rec.param), rec.seed);
    } else if (cfg.model == "cycle") {
        g = generate_cycle(cfg.n_nodes);
    } else {
        g = file_graph;
    }
    if (g.n_edges() == 0) {
        throw std::runtime_error("run_ensemble: realization produced an edgeless graph");
    }

    const GraphMetrics gm = metrics(g);
    rec.mean_degree = gm.mean_degree;
    rec.avg_clustering = gm.avg_clustering;
    const CapacityReport cap = entanglement_capacity(g, cfg.log_base);
    rec.max_matching_size = cap.max_matching_size;
    rec.capacity = cap.capacity;

    const auto space = make_arc_space(g);
    WalkerState start;
    if (cfg.start_rule == "first-arc") {
        start = basis_state(space, space->arcs[0].first, space->arcs[0].second);
    } else if (cfg.start_rule == "arc") {
        start = basis_state(space, cfg.start_tail, cfg.start_head);
    } else { // haar
        start = haar_random_state(space, derive_seed(rec.seed, 0x57a7eULL));
    }
    const CoinOperator coin = grover_coin(*space);

    rec.entropy.reserve(cfg.steps + 1);
    if (cfg.store_states) rec.states.reserve(cfg.steps + 1);
    evolve(start, coin, cfg.steps, [&](int, const WalkerState& s) {
        rec.entropy.push_back(source_target_entropy(s, cfg.log_base));
        if (cfg.store_states) rec.states.push_back(s);
    });

    const auto [mean, stddev] = plateau_average(rec.entropy, cfg.plateau_start, cfg.plateau_end);
    rec.plateau_mean = mean;
    rec.plateau_stddev = stddev;
    return rec;
}

} // namespace

void validate_config(ExperimentConfig& cfg) {
    if (cfg.model != "er" && cfg.model != "ba" && cfg.model != "cycle" && cfg.model != "file") {
        throw std::invalid_argument("config: model must be er, ba, cycle, or file");
    }
    if (cfg.model == "er" || cfg.model == "ba") {
        if (cfg.params.empty()) {
            throw std::invalid_argument("config: params must be nonempty for er/ba");
        }
    } else {
        cfg.params.assign(1, 0.0);
    }
    if (cfg.n_nodes < 1 || (cfg.model == "cycle" && cfg.n_nodes < 3)) {
        throw std::invalid_argument("config: invalid n_nodes");
    }
    if (cfg.model == "er") {
        for (double p : cfg.params) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument("config: er p values must lie in [0, 1]");
            }
        }
    }
    if (cfg.model == "ba") {
        for (double m : cfg.params) {
            if (m != static_cast<int>(m) || m < 1 || m >= cfg.n_nodes) {
                throw std::invalid_argument("config: ba m values must be integers in [1, n_nodes)");
            }
        }
    }
    if (cfg.model == "file" && cfg.graph_file.empty()) {
        throw std::invalid_argument("config: model file requires graph_file");
    }
    if (cfg.realizations < 1) {
        throw std::invalid_argument("config: realizations must be >= 1");
    }
    if (cfg.steps < 0) {
        throw std::invalid_argument("config: steps must be >= 0");
    }
    if (cfg.plateau_end == -1) cfg.plateau_end = cfg.steps;
    if (cfg.plateau_start < 0 || cfg.plateau_end < cfg.plateau_start ||
        cfg.plateau_end > cfg.steps) {
        throw std::invalid_argument("config: need 0 <= plateau_start <= plateau_end <= steps");
    }
    if (cfg.start_rule != "first-arc" && cfg.start_rule != "arc" && cfg.start_rule != "haar") {
        throw std::invalid_argument("config: start_rule must be first-arc, arc, or haar");
    }
    if (cfg.workers < 0) {
        throw std::invalid_argument("config: workers must be >= 0");
    }
}

ExperimentConfig config_from_json(const std::string& text) {
    try {
        return config_from_json_obj(json::parse(text));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

std::string config_to_json(const ExperimentConfig& cfg) {
    return config_to_json_obj(cfg).dump(2);
}

EnsembleResult run_ensemble(ExperimentConfig cfg) {
    validate_config(cfg);

    Graph file_graph;
    if (cfg.model == "file") {
        std::ifstream in(cfg.graph_file);
        if (!in) {
            throw std::runtime_error("cannot open graph file: " + cfg.graph_file);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        file_graph = parse_edge_list(buf.str());
    }

    const int n_params = static_cast<int>(cfg.params.size());
    const int total = n_params * cfg.realizations;
    EnsembleResult result;
    result.config = cfg;
    result.records.resize(total);

    std::atomic<int> next_task{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker_fn = [&]() {
        for (;;) {
            const int task = next_task.fetch_add(1);
            if (task >= total) return;
            try {
                result.records[task] =
                    run_one(cfg, file_graph, task / cfg.realizations, task % cfg.realizations);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    int n_workers = cfg.workers;
    if (n_workers == 0) {
        n_workers = static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
    }
    n_workers = std::min(n_workers, total);
    if (n_workers <= 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker_fn);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    result.summaries.resize(n_params);
    for (int pi = 0; pi < n_params; ++pi) {
        ParameterSummary& s = result.summaries[pi];
        s.param_index = pi;
        s.param = cfg.params[pi];
        s.mean_entropy.assign(cfg.steps + 1, 0.0);
        for (int r = 0; r < cfg.realizations; ++r) {
            const RunRecord& rec = result.records[pi * cfg.realizations + r];
            for (int t = 0; t <= cfg.steps; ++t) s.mean_entropy[t] += rec.entropy[t];
            s.mean_plateau += rec.plateau_mean;
            s.mean_clustering += rec.avg_clustering;
        }
        for (double& e : s.mean_entropy) e /= cfg.realizations;
        s.mean_plateau /= cfg.realizations;
        s.mean_clustering /= cfg.realizations;
    }

    if (!cfg.csv_series.empty()) emit_csv_series(result, cfg.csv_series);
    if (!cfg.csv_summary.empty()) emit_csv_summary(result, cfg.csv_summary);
    if (!cfg.json_out.empty()) emit_json(result, cfg.json_out);
    return result;
}

void emit_csv_series(const EnsembleResult& result, const std::string& path) {
    std::ofstream out = open_out(path);
    write_metadata_header(out, result.config);
    out << "param_index,param,realization,t,entropy\n";
    for (const RunRecord& rec : result.records) {
        for (std::size_t t = 0; t < rec.entropy.size(); ++t) {
            out << rec.param_index << ',' << fmt_double(rec.param) << ',' << rec.realization
                << ',' << t << ',' << fmt_double(rec.entropy[t]) << '\n';
        }
    }
}

void emit_csv_summary(const EnsembleResult& result, const std::string& path) {
    std::ofstream out = open_out(path);
    write_metadata_header(out, result.config);
    out << "param_index,param,realization,seed,mean_degree,avg_clustering,"
           "max_matching_size,capacity,plateau_mean,plateau_stddev\n";
    for (const RunRecord& rec : result.records) {
        out << rec.param_index << ',' << fmt_double(rec.param) << ',' << rec.realization << ','
            << rec.seed << ',' << fmt_double(rec.mean_degree) << ','
            << fmt_double(rec.avg_clustering) << ',' << rec.max_matching_size << ','
            << fmt_double(rec.capacity) << ',' << fmt_double(rec.plateau_mean) << ','
            << fmt_double(rec.plateau_stddev) << '\n';
    }
}

std::string ensemble_to_json(const EnsembleResult& result) {
    json j;
    j["schema"] = 1;
    j["config"] = config_to_json_obj(result.config);
    j["coin"] = kCoinConvention;
    j["ba_seed_graph"] = kBaSeedGraph;
    j["seed_provenance"] = kSeedProvenance;
    j["records"] = json::array();
    for (const RunRecord& rec : result.records) {
        json r;
        r["param_index"] = rec.param_index;
        r["param"] = rec.param;
        r["realization"] = rec.realization;
        r["seed"] = rec.seed;
        r["mean_degree"] = rec.mean_degree;
        r["avg_clustering"] = rec.avg_clustering;
        r["max_matching_size"] = rec.max_matching_size;
        r["capacity"] = rec.capacity;
        r["plateau_mean"] = rec.plateau_mean;
        r["plateau_stddev"] = rec.plateau_stddev;
        r["entropy"] = rec.entropy;
        j["records"].push_back(std::move(r));
    }
    j["summaries"] = json::array();
    for (const ParameterSummary& s : result.summaries) {
        json r;
        r["param_index"] = s.param_index;
        r["param"] = s.param;
        r["mean_plateau"] = s.mean_plateau;
        r["mean_clustering"] = s.mean_clustering;
        r["mean_entropy"] = s.mean_entropy;
        j["summaries"].push_back(std::move(r));
    }
    return j.dump(2);
}

void emit_json(const EnsembleResult& result, const std::string& path) {
    std::ofstream out = open_out(path);
    out << ensemble_to_json(result) << '\n';
}

EnsembleResult ensemble_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.contains("schema") || j["schema"].get<int>() != 1) {
        throw std::invalid_argument("ensemble dump: expected \"schema\": 1");
    }
    EnsembleResult result;
    result.config = config_from_json_obj(j.at("config"));
    for (const json& r : j.at("records")) {
        RunRecord rec;
        rec.param_index = r.at("param_index").get<int>();
        rec.param = r.at("param").get<double>();
        rec.realization = r.at("realization").get<int>();
        rec.seed = r.at("seed").get<std::uint64_t>();
        rec.mean_degree = r.at("mean_degree").get<double>();
        rec.avg_clustering = r.at("avg_clustering").get<double>();
        rec.max_matching_size = r.at("max_matching_size").get<int>();
        rec.capacity = r.at("capacity").get<double>();
        rec.plateau_mean = r.at("plateau_mean").get<double>();
        rec.plateau_stddev = r.at("plateau_stddev").get<double>();
        rec.entropy = r.at("entropy").get<std::vector<double>>();
        result.records.push_back(std::move(rec));
    }
    for (const json& r : j.at("summaries")) {
        ParameterSummary s;
        s.param_index = r.at("param_index").get<int>();
        s.param = r.at("param").get<double>();
        s.mean_plateau = r.at("mean_plateau").get<double>();
        s.mean_clustering = r.at("mean_clustering").get<double>();
        s.mean_entropy = r.at("mean_entropy").get<std::vector<double>>();
        result.summaries.push_back(std::move(s));
    }
    return result;
}

} // namespace qwalk
