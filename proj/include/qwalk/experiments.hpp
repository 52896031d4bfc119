// experiments.hpp
// Ensemble experiments end-to-end: generate graphs, run Grover walks,
// record per-step source-target entropy, aggregate plateau statistics and
// clustering correlations. Fully deterministic given the config (including
// across worker counts), with CSV and JSON persistence.

#pragma once

#include "qwalk/graph.hpp"
#include "qwalk/log_base.hpp"
#include "qwalk/stats.hpp"
#include "qwalk/walk.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qwalk {

struct ExperimentConfig {
    std::string model = "er";        // er | ba | cycle | file
    std::vector<double> params;      // er: p values; ba: m values; unused for cycle/file
    int n_nodes = 100;
    int realizations = 20;
    int steps = 100;
    std::uint64_t base_seed = 1;
    LogBase log_base = LogBase::natural;
    std::string start_rule = "first-arc"; // first-arc | arc | haar
    int start_tail = 0, start_head = 0;   // used when start_rule == "arc"
    int plateau_start = 20;
    int plateau_end = -1;            // -1 resolves to steps
    bool require_connected = true;   // ER only
    bool store_states = false;       // keep full trajectories (memory heavy)
    int workers = 0;                 // 0 = hardware concurrency (capped at 8)
    std::string graph_file;          // model == file: edge-list path
    std::string csv_series;          // output paths; empty = not written
    std::string csv_summary;
    std::string json_out;
};

// Throws std::invalid_argument on any violated field constraint; resolves
// plateau_end = -1 to steps.
void validate_config(ExperimentConfig& cfg);

ExperimentConfig config_from_json(const std::string& text); // requires "schema": 1
std::string config_to_json(const ExperimentConfig& cfg);

struct RunRecord {
    int param_index = 0;
    double param = 0.0;
    int realization = 0;
    std::uint64_t seed = 0;         // the graph seed actually used
    double mean_degree = 0.0;
    double avg_clustering = 0.0;
    int max_matching_size = 0;      // of B(G) for this realization's graph
    double capacity = 0.0;          // log of the above, in cfg.log_base
    std::vector<double> entropy;    // S_st(t), t = 0..steps
    double plateau_mean = 0.0;
    double plateau_stddev = 0.0;
    std::vector<WalkerState> states; // full trajectory when store_states
};

struct ParameterSummary {
    int param_index = 0;
    double param = 0.0;
    std::vector<double> mean_entropy; // mean over realizations, per t
    double mean_plateau = 0.0;
    double mean_clustering = 0.0;
};

struct EnsembleResult {
    ExperimentConfig config;
    std::vector<RunRecord> records;       // sorted by (param_index, realization)
    std::vector<ParameterSummary> summaries;
};

// Runs the full ensemble; deterministic given cfg. Realizations execute in
// parallel across workers; each writes a pre-assigned slot, so the result
// is identical for any worker count. Output files listed in cfg are
// written afterwards.
EnsembleResult run_ensemble(ExperimentConfig cfg);

// Persistence. The CSV headers carry the metadata contract (schema,
// log base, coin convention, seed provenance); doubles are printed with
// round-trip precision.
void emit_csv_series(const EnsembleResult& result, const std::string& path);
void emit_csv_summary(const EnsembleResult& result, const std::string& path);
void emit_json(const EnsembleResult& result, const std::string& path);

std::string ensemble_to_json(const EnsembleResult& result);
// Re-parses a dump (trajectory states are not persisted).
EnsembleResult ensemble_from_json(const std::string& text);

} // namespace qwalk
