// matching.hpp
// Maximum matchings: Hopcroft-Karp on bipartite covers, Edmonds blossom on
// general graphs, the support-restricted matching bound for walker states,
// graph entanglement capacity, exhaustive matching counts on small covers,
// and the Karp-Sipser expectation for ER ensembles.

#pragma once

#include "qwalk/arc_space.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/log_base.hpp"
#include "qwalk/walk.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qwalk {

// A matching is a set of (tail, head) pairs with pairwise-distinct tails
// and pairwise-distinct heads. For matchings of a bipartite cover the pair
// is (source, target); for matchings of an undirected graph it is an edge
// (u, v) with u < v, where distinct-tails/distinct-heads degenerates to
// the usual vertex-disjointness.
using Matching = std::vector<std::pair<int, int>>;

bool is_valid_matching(const Matching& m);

// Checks vertex-disjointness of undirected edges (no endpoint repeated on
// either side of any pair).
bool is_vertex_disjoint(const Matching& m);

// Maximum-cardinality matching of the cover via Hopcroft-Karp. The witness
// is sorted by source; only its size is canonical.
Matching max_matching_bipartite(const BipartiteCover& cover);

// Maximum-cardinality matching of the undirected graph itself via the
// Edmonds blossom algorithm (greedy initialization, O(V^3)).
Matching max_matching_general(const Graph& g);

inline constexpr double kSupportThreshold = 1e-12;

// Size of the largest matching of B(G) fully contained in the state's
// support {(n+, m-) : |psi_{n->m}| > threshold}. This upper-bounds the
// source-target entropy: S_st <= log(result).
int largest_matching_in_support(const WalkerState& state,
                                double threshold = kSupportThreshold);

struct CapacityReport {
    int max_matching_size = 0; // s* of B(G)
    double capacity = 0.0;     // log(s*) in the configured base
    Matching witness;          // one maximum matching of B(G), as (source, target)
    LogBase log_base = LogBase::natural;
};

// Entanglement capacity of a graph: log of the maximum matching size of
// its bipartite double cover. Requires at least one edge.
CapacityReport entanglement_capacity(const Graph& g, LogBase base = LogBase::natural);

// Exact count of maximum-cardinality matchings by exhaustive dynamic
// programming over target subsets. Guarded to <= 16 nodes per side.
long long count_maximum_matchings(const BipartiteCover& cover);

// Smallest y in [0, 1] with y = exp(-kbar * exp(-kbar * y)): dense scan for
// a sign-change bracket, then bisection to 1e-12. Requires kbar > 0.
double solve_fixed_point(double kbar);

// Expected maximum matching size of an ER graph with n nodes and mean
// degree kbar: (n/2) * (2 - y - (1 + kbar*y) * exp(-kbar*y)).
double karp_sipser_expected(int n, double kbar);

// Paired maximum matching sizes of G and B(G) over random-graph sweeps.
struct ScatterSpec {
    std::string model = "er";       // "er" or "ba"
    std::vector<int> sizes = {25, 100};
    std::vector<double> params;     // ER: p values; BA: m values. Empty = per-size default grid.
    int realizations = 50;
    std::uint64_t base_seed = 1;
};

struct ScatterRecord {
    int n_nodes = 0;
    double param = 0.0;
    int realization = 0;
    int matching_graph = 0; // |M*(G)|
    int matching_cover = 0; // |M*(B(G))|
};

struct ScatterAverage {
    int n_nodes = 0;
    double param = 0.0;
    double mean_graph = 0.0;
    double mean_cover = 0.0;
};

struct ScatterResult {
    ScatterSpec spec;
    std::vector<ScatterRecord> records;
    std::vector<ScatterAverage> averages; // one per (size, param)
    double slope = 0.0;                   // least-squares slope of averages, cover vs graph
};

// Default parameter grids used when spec.params is empty: ER sweeps mean
// degree (p = kbar/N) from 0.5 upward, BA sweeps m = 1..8.
std::vector<double> scatter_default_params(const std::string& model, int n_nodes);

ScatterResult matching_scatter(const ScatterSpec& spec);

} // namespace qwalk
