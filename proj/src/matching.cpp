#include "qwalk/matching.hpp"

#include "qwalk/rng.hpp"
#include "qwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace qwalk {

namespace {

// Hopcroft-Karp on an explicit left/right adjacency structure.
struct HopcroftKarp {
    int nl, nr;
    std::vector<std::vector<int>> adj; // left index -> right indices
    std::vector<int> match_l, match_r, dist;
    static constexpr int kInf = std::numeric_limits<int>::max();

    HopcroftKarp(int nl_, int nr_) : nl(nl_), nr(nr_), adj(nl_) {}

    void add_edge(int l, int r) { adj[l].push_back(r); }

    bool bfs() {
        std::queue<int> q;
        dist.assign(nl, kInf);
        for (int l = 0; l < nl; ++l) {
            if (match_l[l] == -1) {
                dist[l] = 0;
                q.push(l);
            }
        }
        bool reachable_free = false;
        while (!q.empty()) {
            const int l = q.front();
            q.pop();
            for (int r : adj[l]) {
                const int l2 = match_r[r];
                if (l2 == -1) {
                    reachable_free = true;
                } else if (dist[l2] == kInf) {
                    dist[l2] = dist[l] + 1;
                    q.push(l2);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int l) {
        for (int r : adj[l]) {
            const int l2 = match_r[r];
            if (l2 == -1 || (dist[l2] == dist[l] + 1 && dfs(l2))) {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        dist[l] = kInf;
        return false;
    }

    int solve() {
        match_l.assign(nl, -1);
        match_r.assign(nr, -1);
        int size = 0;
        while (bfs()) {
            for (int l = 0; l < nl; ++l) {
                if (match_l[l] == -1 && dfs(l)) ++size;
            }
        }
        return size;
    }

    Matching matching() const {
        Matching m;
        for (int l = 0; l < nl; ++l) {
            if (match_l[l] != -1) m.emplace_back(l, match_l[l]);
        }
        return m;
    }
};

// Edmonds blossom algorithm for maximum-cardinality matching on a general
// graph: alternating-tree search with blossom contraction via base[].
struct Blossom {
    int n;
    std::vector<std::vector<int>> g;
    std::vector<int> match, parent, base;
    std::vector<char> used, in_blossom;

    explicit Blossom(const Graph& graph)
        : n(graph.n_nodes), g(adjacency_lists(graph)), match(n, -1) {}

    int lca(int a, int b) {
        std::vector<char> on_path(n, 0);
        int cur = a;
        for (;;) {
            cur = base[cur];
            on_path[cur] = 1;
            if (match[cur] == -1) break;
            cur = parent[match[cur]];
        }
        cur = b;
        for (;;) {
            cur = base[cur];
            if (on_path[cur]) return cur;
            cur = parent[match[cur]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            in_blossom[base[v]] = 1;
            in_blossom[base[match[v]]] = 1;
            parent[v] = child;
            child = match[v];
            v = parent[match[v]];
        }
    }

    // Grows an alternating tree from root; returns an exposed vertex ending
    // an augmenting path, or -1.
    int find_path(int root) {
        used.assign(n, 0);
        parent.assign(n, -1);
        base.resize(n);
        std::iota(base.begin(), base.end(), 0);
        used[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int to : g[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
                    // Odd cycle: contract the blossom down to the LCA.
                    const int cur_base = lca(v, to);
                    in_blossom.assign(n, 0);
                    mark_path(v, cur_base, to);
                    mark_path(to, cur_base, v);
                    for (int i = 0; i < n; ++i) {
                        if (in_blossom[base[i]]) {
                            base[i] = cur_base;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push(i);
                            }
                        }
                    }
                } else if (parent[to] == -1) {
                    parent[to] = v;
                    if (match[to] == -1) return to;
                    used[match[to]] = 1;
                    q.push(match[to]);
                }
            }
        }
        return -1;
    }

    void solve() {
        // Greedy initialization cuts the number of augmenting rounds.
        for (int v = 0; v < n; ++v) {
            if (match[v] != -1) continue;
            for (int to : g[v]) {
                if (match[to] == -1) {
                    match[v] = to;
                    match[to] = v;
                    break;
                }
            }
        }
        for (int v = 0; v < n; ++v) {
            if (match[v] != -1) continue;
            int u = find_path(v);
            while (u != -1) {
                const int pv = parent[u];
                const int ppv = match[pv];
                match[u] = pv;
                match[pv] = u;
                u = ppv;
            }
        }
    }
};

void check_cover(const BipartiteCover& cover) {
    if (cover.n_sources < 0 || cover.n_targets < 0) {
        throw std::invalid_argument("bipartite cover has negative side size");
    }
    for (const auto& [s, t] : cover.edges) {
        if (s < 0 || s >= cover.n_sources || t < 0 || t >= cover.n_targets) {
            throw std::invalid_argument("bipartite cover edge endpoint out of range");
        }
    }
}

} // namespace

bool is_valid_matching(const Matching& m) {
    std::set<int> tails, heads;
    for (const auto& [tail, head] : m) {
        if (!tails.insert(tail).second) return false;
        if (!heads.insert(head).second) return false;
    }
    return true;
}

bool is_vertex_disjoint(const Matching& m) {
    std::set<int> seen;
    for (const auto& [u, v] : m) {
        if (u == v) return false;
        if (!seen.insert(u).second) return false;
        if (!seen.insert(v).second) return false;
    }
    return true;
}

Matching max_matching_bipartite(const BipartiteCover& cover) {
    check_cover(cover);
    HopcroftKarp hk(cover.n_sources, cover.n_targets);
    for (const auto& [s, t] : cover.edges) hk.add_edge(s, t);
    hk.solve();
    return hk.matching();
}

Matching max_matching_general(const Graph& g) {
    Blossom solver(g);
    solver.solve();
    Matching m;
    for (int v = 0; v < g.n_nodes; ++v) {
        if (solver.match[v] > v) m.emplace_back(v, solver.match[v]);
    }
    return m;
}

int largest_matching_in_support(const WalkerState& state, double threshold) {
    if (!state.space) {
        throw std::invalid_argument("largest_matching_in_support: state has no arc space");
    }
    const ArcSpace& space = *state.space;
    if (state.amplitudes.size() != space.n_arcs()) {
        throw std::invalid_argument(
            "largest_matching_in_support: amplitude count does not match arc space");
    }
    const int n = space.graph.n_nodes;
    HopcroftKarp hk(n, n);
    for (int a = 0; a < space.n_arcs(); ++a) {
        if (std::abs(state.amplitudes[a]) > threshold) {
            hk.add_edge(space.arcs[a].first, space.arcs[a].second);
        }
    }
    return hk.solve();
}

CapacityReport entanglement_capacity(const Graph& g, LogBase base) {
    if (g.n_edges() == 0) {
        throw std::invalid_argument("entanglement_capacity: graph has no edges");
    }
    CapacityReport report;
    report.log_base = base;
    report.witness = max_matching_bipartite(bipartite_double_cover(g));
    report.max_matching_size = static_cast<int>(report.witness.size());
    report.capacity = log_base_scale(base) * std::log(static_cast<double>(report.max_matching_size));
    return report;
}

long long count_maximum_matchings(const BipartiteCover& cover) {
    check_cover(cover);
    if (cover.n_sources > 16 || cover.n_targets > 16) {
        throw std::invalid_argument(
            "count_maximum_matchings: cover too large for exhaustive count (guard: 16 per side)");
    }
    std::vector<std::vector<int>> adj(cover.n_sources);
    for (const auto& [s, t] : cover.edges) adj[s].push_back(t);

    // dp[mask] = (max matching size, number of maximum matchings) over the
    // sources not yet processed, given targets in mask are taken. Sources
    // are processed back to front; each either stays unmatched or takes one
    // free adjacent target, so distinct decision sequences are distinct
    // matchings.
    struct Best {
        int size;
        long long count;
    };
    const int n_masks = 1 << cover.n_targets;
    std::vector<Best> dp(n_masks, Best{0, 1});
    std::vector<Best> next(n_masks);
    for (int i = cover.n_sources - 1; i >= 0; --i) {
        for (int mask = 0; mask < n_masks; ++mask) {
            Best best = dp[mask]; // source i left unmatched
            for (int t : adj[i]) {
                if (mask & (1 << t)) continue;
                Best cand = dp[mask | (1 << t)];
                ++cand.size;
                if (cand.size > best.size) {
                    best = cand;
                } else if (cand.size == best.size) {
                    best.count += cand.count;
                }
            }
            next[mask] = best;
        }
        dp.swap(next);
    }
    return dp[0].count;
}

double solve_fixed_point(double kbar) {
    if (!(kbar > 0.0)) {
        throw std::invalid_argument("solve_fixed_point: kbar must be positive");
    }
    const auto f = [kbar](double y) {
        return y - std::exp(-kbar * std::exp(-kbar * y));
    };
    // Dense scan for the first sign change, then bisection. f(0) < 0 and
    // f(1) > 0, and the scan is fine enough to separate the multiple roots
    // that appear at larger kbar, so the first bracket holds the smallest.
    constexpr int kGrid = 10000;
    double lo = 0.0;
    double f_lo = f(lo);
    if (f_lo == 0.0) return lo;
    double hi = 0.0, f_hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= kGrid; ++i) {
        hi = static_cast<double>(i) / kGrid;
        f_hi = f(hi);
        if (f_hi == 0.0) return hi;
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            bracketed = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if (!bracketed) {
        throw std::runtime_error("solve_fixed_point: no root bracketed in [0, 1]");
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double karp_sipser_expected(int n, double kbar) {
    if (n < 0) {
        throw std::invalid_argument("karp_sipser_expected: n must be nonnegative");
    }
    const double y = solve_fixed_point(kbar);
    const double bracket = 2.0 - y - (1.0 + kbar * y) * std::exp(-kbar * y);
    return 0.5 * static_cast<double>(n) * bracket;
}

std::vector<double> scatter_default_params(const std::string& model, int n_nodes) {
    if (model == "ba") {
        std::vector<double> ms;
        for (int m = 1; m <= 8 && m < n_nodes; ++m) ms.push_back(static_cast<double>(m));
        return ms;
    }
    if (model != "er") {
        throw std::invalid_argument("scatter_default_params: model must be er or ba");
    }
    // ER grids sweep mean degree from sparse to well-matched.
    auto linspace = [](double lo, double hi, int count) {
        std::vector<double> v(count);
        for (int i = 0; i < count; ++i) {
            v[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
        }
        return v;
    };
    if (n_nodes == 25) return linspace(0.02, 0.40, 20);
    if (n_nodes == 100) return linspace(0.005, 0.05, 10);
    return linspace(0.5 / n_nodes, 8.0 / n_nodes, 12);
}

ScatterResult matching_scatter(const ScatterSpec& spec) {
    if (spec.model != "er" && spec.model != "ba") {
        throw std::invalid_argument("matching_scatter: model must be er or ba");
    }
    if (spec.realizations < 1) {
        throw std::invalid_argument("matching_scatter: realizations must be >= 1");
    }
    if (spec.sizes.empty()) {
        throw std::invalid_argument("matching_scatter: no sizes given");
    }

    ScatterResult result;
    result.spec = spec;
    std::vector<double> xs, ys;
    for (std::size_t size_idx = 0; size_idx < spec.sizes.size(); ++size_idx) {
        const int n = spec.sizes[size_idx];
        if (n < 2) {
            throw std::invalid_argument("matching_scatter: sizes must be >= 2");
        }
        const std::vector<double> params =
            spec.params.empty() ? scatter_default_params(spec.model, n) : spec.params;
        for (std::size_t param_idx = 0; param_idx < params.size(); ++param_idx) {
            const double param = params[param_idx];
            double sum_graph = 0.0, sum_cover = 0.0;
            for (int r = 0; r < spec.realizations; ++r) {
                const std::uint64_t seed =
                    derive_seed(spec.base_seed, size_idx * 10000 + param_idx, r);
                Graph g;
                if (spec.model == "er") {
                    g = generate_er(n, param, seed, false);
                } else {
                    const int m = static_cast<int>(param);
                    if (m != param || m < 1 || m >= n) {
                        throw std::invalid_argument("matching_scatter: ba m must be an integer in [1, n)");
                    }
                    g = generate_ba(n, m, seed);
                }
                const int mg = static_cast<int>(max_matching_general(g).size());
                const int mb = static_cast<int>(max_matching_bipartite(bipartite_double_cover(g)).size());
                result.records.push_back({n, param, r, mg, mb});
                sum_graph += mg;
                sum_cover += mb;
            }
            ScatterAverage avg;
            avg.n_nodes = n;
            avg.param = param;
            avg.mean_graph = sum_graph / spec.realizations;
            avg.mean_cover = sum_cover / spec.realizations;
            result.averages.push_back(avg);
            xs.push_back(avg.mean_graph);
            ys.push_back(avg.mean_cover);
        }
    }
    result.slope = linear_fit_slope(xs, ys);
    return result;
}

} // namespace qwalk
