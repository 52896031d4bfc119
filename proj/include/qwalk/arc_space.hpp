// arc_space.hpp
// The symmetric digraph of a graph (two arcs per edge) and its bipartite
// double cover. Arc indexing is the canonical order shared by every
// downstream module: arcs sorted lexicographically by (tail, head), so a
// node's outgoing arcs form one contiguous, head-sorted block.

#pragma once

#include "qwalk/graph.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace qwalk {

using Arc = std::pair<int, int>; // (tail, head)

struct ArcSpace {
    Graph graph;
    std::vector<Arc> arcs;        // sorted lex by (tail, head)
    std::vector<int> out_offset;  // size n_nodes+1; arcs with tail n are [out_offset[n], out_offset[n+1])
    std::vector<int> reverse_of;  // fixed-point-free involution

    int n_arcs() const { return static_cast<int>(arcs.size()); }
    int degree(int node) const { return out_offset[node + 1] - out_offset[node]; }
    int out_begin(int node) const { return out_offset[node]; }
};

ArcSpace symmetric_digraph(const Graph& g);

// Shared-ownership convenience for walker states and trajectories.
std::shared_ptr<const ArcSpace> make_arc_space(const Graph& g);

// Index of arc tail->head; throws if the arc does not exist.
int arc_of(const ArcSpace& space, int tail, int head);

// Bipartite double cover B(G): source copies n+ in [0, N), target copies
// m- in a separate index space of size N. edges[i] = (source, target)
// corresponds one-to-one to space.arcs[i].
struct BipartiteCover {
    int n_sources = 0;
    int n_targets = 0;
    std::vector<std::pair<int, int>> edges; // sorted lex, mirrors arc order

    int n_edges() const { return static_cast<int>(edges.size()); }
};

BipartiteCover bipartite_double_cover(const Graph& g);

} // namespace qwalk
