#include "qwalk/graph.hpp"

#include "qwalk/rng.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qwalk {

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    Edge e{std::min(u, v), std::max(u, v)};
    return std::binary_search(edges.begin(), edges.end(), e);
}

Graph make_graph(int n_nodes, std::vector<Edge> edges) {
    if (n_nodes < 0) throw std::invalid_argument("make_graph: negative node count");
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("make_graph: self-loop " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n_nodes || v >= n_nodes)
            throw std::invalid_argument("make_graph: endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph{n_nodes, std::move(edges)};
}

std::vector<std::vector<int>> adjacency_lists(const Graph& g) {
    std::vector<std::vector<int>> adj(g.n_nodes);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

std::vector<int> degrees(const Graph& g) {
    std::vector<int> deg(g.n_nodes, 0);
    for (auto [u, v] : g.edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

namespace {

Graph draw_er_once(int n, double p, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform01() < p) edges.emplace_back(u, v);
    return Graph{n, std::move(edges)}; // already normalized by construction
}

} // namespace

Graph generate_er(int n, double p, std::uint64_t seed, bool require_connected) {
    if (n < 1) throw std::invalid_argument("generate_er: n must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("generate_er: p outside [0, 1]");
    for (int attempt = 0; attempt < kErRetryCap; ++attempt) {
        Graph g = draw_er_once(n, p, derive_seed(seed, attempt));
        if (!require_connected || is_connected(g)) return g;
    }
    throw std::runtime_error("generate_er: no connected realization within retry cap (p too small for this n?)");
}

Graph generate_ba(int n, int m, std::uint64_t seed) {
    if (m < 1 || m >= n) throw std::invalid_argument("generate_ba: require 1 <= m < n");
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    // Degree-proportional sampling via the endpoint list: every edge pushes
    // both endpoints, so a uniform pick is a pick proportional to degree.
    std::vector<int> endpoints;
    for (int leaf = 1; leaf <= m; ++leaf) {
        edges.emplace_back(0, leaf);
        endpoints.push_back(0);
        endpoints.push_back(leaf);
    }
    std::vector<int> picked;
    for (int node = m + 1; node < n; ++node) {
        picked.clear();
        while (static_cast<int>(picked.size()) < m) {
            int target = endpoints[rng.below(endpoints.size())];
            if (std::find(picked.begin(), picked.end(), target) == picked.end())
                picked.push_back(target);
        }
        for (int target : picked) {
            edges.emplace_back(std::min(node, target), std::max(node, target));
            endpoints.push_back(node);
            endpoints.push_back(target);
        }
    }
    return make_graph(n, std::move(edges));
}

Graph generate_cycle(int n) {
    if (n < 3) throw std::invalid_argument("generate_cycle: n must be >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    return make_graph(n, std::move(edges));
}

Graph triangular_prism() {
    return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

Graph parse_edge_list(const std::string& text) {
    std::vector<Edge> edges;
    int max_id = -1;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream toks(line);
        long long u, v;
        std::string extra;
        if (!(toks >> u >> v) || (toks >> extra))
            throw std::invalid_argument("parse_edge_list: line " + std::to_string(lineno) +
                                        ": expected two integer tokens");
        if (u < 0 || v < 0)
            throw std::invalid_argument("parse_edge_list: line " + std::to_string(lineno) +
                                        ": negative node id");
        if (u == v)
            throw std::invalid_argument("parse_edge_list: line " + std::to_string(lineno) +
                                        ": self-loop on node " + std::to_string(u));
        max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return make_graph(max_id + 1, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# nodes " << g.n_nodes << "\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
    return out.str();
}

double average_clustering(const Graph& g) {
    if (g.n_nodes == 0) return 0.0;
    auto adj = adjacency_lists(g);
    double total = 0.0;
    for (int i = 0; i < g.n_nodes; ++i) {
        const auto& nb = adj[i];
        int d = static_cast<int>(nb.size());
        if (d < 2) continue;
        long long t = 0;
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (std::binary_search(adj[nb[a]].begin(), adj[nb[a]].end(), nb[b])) ++t;
        total += 2.0 * static_cast<double>(t) / (static_cast<double>(d) * (d - 1));
    }
    return total / g.n_nodes;
}

bool is_connected(const Graph& g) {
    if (g.n_nodes <= 1) return true;
    auto adj = adjacency_lists(g);
    std::vector<char> seen(g.n_nodes, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
    }
    return count == g.n_nodes;
}

GraphMetrics metrics(const Graph& g) {
    GraphMetrics m;
    m.mean_degree = g.n_nodes > 0 ? 2.0 * g.n_edges() / g.n_nodes : 0.0;
    m.avg_clustering = average_clustering(g);
    m.connected = is_connected(g);
    auto deg = degrees(g);
    m.max_degree = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    return m;
}

} // namespace qwalk
