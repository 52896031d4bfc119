// entanglement.hpp
// Source-target entanglement of walker states via the double-cover
// amplitude matrix, matching-state construction, and coin-walker
// entanglement under explicit coin assignments on regular graphs.

#pragma once

#include "qwalk/log_base.hpp"
#include "qwalk/matching.hpp"
#include "qwalk/walk.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace qwalk {

// N x N complex matrix with Psi_{nm} = psi_{n->m} on arcs, 0 elsewhere.
using AmplitudeMatrix = Eigen::MatrixXcd;

AmplitudeMatrix amplitude_matrix(const WalkerState& state);

struct SchmidtSpectrum {
    Eigen::VectorXd values; // singular values, nonincreasing
    int rank = 0;           // count above rank_tolerance * largest value
};

// Singular values of the amplitude matrix; rank counted above the relative
// tolerance (default 1e-10 of the largest singular value).
SchmidtSpectrum schmidt_decompose(const AmplitudeMatrix& m, double rank_tolerance = 1e-10);

// -sum sigma_j^2 log sigma_j^2 with 0 log 0 = 0, in the chosen base.
double singular_value_entropy(const Eigen::VectorXd& singular_values,
                              LogBase base = LogBase::natural);

// Von Neumann entropy of the source/target bipartition of the state.
double source_target_entropy(const WalkerState& state, LogBase base = LogBase::natural);

// Equal-magnitude superposition over a matching's arcs with per-arc phases
// exp(i phi): amplitudes exp(i phi_k)/sqrt(|m|). Empty phases means all
// zero; otherwise phases.size() must equal m.size(). Attains
// source-target entropy log |m|.
WalkerState matching_state(std::shared_ptr<const ArcSpace> space, const Matching& m,
                           const std::vector<double>& phases = {});

// Per-node bijection from outgoing arcs (in canonical head-sorted order)
// to coin labels {0..d-1} on a d-regular graph: labels[n][k] is the coin
// label of the k-th outgoing arc of node n.
struct CoinAssignment {
    std::vector<std::vector<int>> labels;
};

// Degree of a regular graph; throws if degrees are not uniform.
int regular_degree(const Graph& g);

bool is_valid_assignment(const ArcSpace& space, const CoinAssignment& assignment);

// Entropy of the coin/position bipartition: reshape the amplitudes into an
// N x d matrix Phi with Phi[n][assignment label] = psi on that arc, then
// take the entropy of its singular values. Requires a d-regular graph with
// d >= 1.
double coin_walker_entropy(const WalkerState& state, const CoinAssignment& assignment,
                           LogBase base = LogBase::natural);

// Number of distinct coin assignments, (d!)^N; throws on non-regular
// graphs or 64-bit overflow.
long long n_assignments(const ArcSpace& space);

// The index-th assignment in the deterministic enumeration order: node 0
// is the least-significant mixed-radix digit, each digit selecting a
// permutation of {0..d-1} in lexicographic order.
CoinAssignment assignment_from_index(const ArcSpace& space, long long index);

inline constexpr long long kSweepBudget = 10'000'000;

struct SweepStateSummary {
    double source_target = 0.0; // assignment-independent
    double min_entropy = 0.0;
    double max_entropy = 0.0;
    double mean_entropy = 0.0;
    std::vector<double> entropies; // full per-assignment list when requested
};

struct SweepResult {
    long long n_assignments = 0;
    std::vector<SweepStateSummary> per_state;
};

// Exhaustive coin-assignment sweep over all (d!)^N assignments (budget
// guard kSweepBudget), evaluating the coin-walker entropy of every state
// under every assignment.
SweepResult coin_assignment_sweep(const Graph& g, const std::vector<WalkerState>& states,
                                  LogBase base = LogBase::natural, bool keep_all = false);

// Named assignments on consecutive cycle graphs (edges {i, i+1 mod N}).
//
// direction_assignment: label 0 on every clockwise arc n -> n+1, label 1
// on every counter-clockwise arc (the "coin up = move right" picture).
CoinAssignment direction_assignment(const Graph& g);

// head_pair_assignment: an arc's label is the parity of floor(tail/2) for
// clockwise arcs and its complement for counter-clockwise ones, so the two
// arcs converging on a node from its flanking pair share a label. Under it
// states like (|0->1> + |2->1>)/sqrt(2) are coin-position separable.
CoinAssignment head_pair_assignment(const Graph& g);

// Assignment induced by a proper edge coloring with exactly d colors (both
// arcs of an edge share the edge's color). Found by backtracking --
// intended for small graphs; throws if no d-coloring exists (class-2
// graphs, e.g. odd cycles).
CoinAssignment edge_coloring_assignment(const Graph& g);

} // namespace qwalk
