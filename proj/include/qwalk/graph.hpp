// graph.hpp
// Simple undirected graphs: construction, random-graph generators,
// edge-list ingestion, and structural metrics.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qwalk {

using Edge = std::pair<int, int>; // normalized u < v

// Immutable simple undirected graph. Node ids are dense 0-based integers;
// edges are stored normalized (u < v), sorted, and unique. No self-loops.
struct Graph {
    int n_nodes = 0;
    std::vector<Edge> edges;

    int n_edges() const { return static_cast<int>(edges.size()); }
    bool has_edge(int u, int v) const;
};

// Validates and normalizes: sorts endpoints, dedupes, rejects self-loops
// and out-of-range ids.
Graph make_graph(int n_nodes, std::vector<Edge> edges);

struct GraphMetrics {
    double mean_degree = 0.0;
    double avg_clustering = 0.0;
    bool connected = false;
    int max_degree = 0;
};

// Per-node neighbor lists, each sorted ascending.
std::vector<std::vector<int>> adjacency_lists(const Graph& g);
std::vector<int> degrees(const Graph& g);

// Erdos-Renyi G(n, p): each unordered pair drawn independently with
// probability p. With require_connected, whole-graph rejection sampling
// with sub-seeds derive_seed(seed, attempt), capped at kErRetryCap draws.
inline constexpr int kErRetryCap = 10000;
Graph generate_er(int n, double p, std::uint64_t seed, bool require_connected);

// Barabasi-Albert preferential attachment. Seed graph is a star on m+1
// nodes (hub = node 0); each later node attaches to m distinct existing
// nodes with probability proportional to current degree (without
// replacement within one step). Always connected; |edges| = m*(n-m).
Graph generate_ba(int n, int m, std::uint64_t seed);

// Cycle graph C_n, n >= 3.
Graph generate_cycle(int n);

// Triangular prism (C_3 x K_2): the default 6-node 3-regular graph for
// coin-assignment sweeps.
Graph triangular_prism();

// Whitespace-separated integer pairs, one edge per line; lines whose first
// non-blank character is '#' are ignored. n_nodes = 1 + max id (gaps become
// isolated nodes); duplicate and reversed pairs collapse. Throws on
// self-loops, non-integer tokens, and malformed lines.
Graph parse_edge_list(const std::string& text);

std::string to_edge_list(const Graph& g);

// Mean over all nodes of c_i = 2 t_i / (d_i (d_i - 1)); nodes with
// degree < 2 contribute 0.
double average_clustering(const Graph& g);

bool is_connected(const Graph& g);

GraphMetrics metrics(const Graph& g);

} // namespace qwalk
