#include "qwalk/arc_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qwalk {

ArcSpace symmetric_digraph(const Graph& g) {
    ArcSpace space;
    space.graph = g;
    space.arcs.reserve(2 * g.edges.size());
    for (const auto& [u, v] : g.edges) {
        space.arcs.emplace_back(u, v);
        space.arcs.emplace_back(v, u);
    }
    std::sort(space.arcs.begin(), space.arcs.end());

    space.out_offset.assign(g.n_nodes + 1, 0);
    for (const auto& [tail, head] : space.arcs) {
        ++space.out_offset[tail + 1];
    }
    for (int n = 0; n < g.n_nodes; ++n) {
        space.out_offset[n + 1] += space.out_offset[n];
    }

    space.reverse_of.resize(space.arcs.size());
    for (int a = 0; a < space.n_arcs(); ++a) {
        const auto& [tail, head] = space.arcs[a];
        space.reverse_of[a] = arc_of(space, head, tail);
    }
    return space;
}

std::shared_ptr<const ArcSpace> make_arc_space(const Graph& g) {
    return std::make_shared<const ArcSpace>(symmetric_digraph(g));
}

int arc_of(const ArcSpace& space, int tail, int head) {
    const Arc key{tail, head};
    auto it = std::lower_bound(space.arcs.begin(), space.arcs.end(), key);
    if (it == space.arcs.end() || *it != key) {
        throw std::invalid_argument("arc_of: no arc " + std::to_string(tail) +
                                    "->" + std::to_string(head));
    }
    return static_cast<int>(it - space.arcs.begin());
}

BipartiteCover bipartite_double_cover(const Graph& g) {
    const ArcSpace space = symmetric_digraph(g);
    BipartiteCover cover;
    cover.n_sources = g.n_nodes;
    cover.n_targets = g.n_nodes;
    cover.edges = space.arcs; // arc tail->head becomes cover edge (tail+, head-)
    return cover;
}

} // namespace qwalk
