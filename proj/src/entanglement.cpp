#include "qwalk/entanglement.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qwalk {

namespace {

void check_state(const WalkerState& state) {
    if (!state.space) {
        throw std::invalid_argument("walker state has no arc space");
    }
    if (state.amplitudes.size() != state.space->n_arcs()) {
        throw std::invalid_argument("walker state amplitude count does not match arc space");
    }
}

void check_consecutive_cycle(const Graph& g, const char* who) {
    if (g.n_nodes < 3 || g.edges != generate_cycle(g.n_nodes).edges) {
        throw std::invalid_argument(std::string(who) +
                                    ": graph must be the cycle with edges {i, i+1 mod N}");
    }
}

std::vector<std::vector<int>> empty_labels(const ArcSpace& space) {
    std::vector<std::vector<int>> labels(space.graph.n_nodes);
    for (int n = 0; n < space.graph.n_nodes; ++n) {
        labels[n].assign(space.degree(n), -1);
    }
    return labels;
}

} // namespace

AmplitudeMatrix amplitude_matrix(const WalkerState& state) {
    check_state(state);
    const ArcSpace& space = *state.space;
    const int n = space.graph.n_nodes;
    AmplitudeMatrix m = AmplitudeMatrix::Zero(n, n);
    for (int a = 0; a < space.n_arcs(); ++a) {
        m(space.arcs[a].first, space.arcs[a].second) = state.amplitudes[a];
    }
    return m;
}

SchmidtSpectrum schmidt_decompose(const AmplitudeMatrix& m, double rank_tolerance) {
    Eigen::BDCSVD<AmplitudeMatrix> svd(m);
    if (svd.info() != Eigen::Success) {
        throw std::runtime_error("schmidt_decompose: SVD did not converge");
    }
    SchmidtSpectrum spectrum;
    spectrum.values = svd.singularValues();
    if (spectrum.values.size() > 0) {
        const double cutoff = rank_tolerance * spectrum.values[0];
        for (Eigen::Index j = 0; j < spectrum.values.size(); ++j) {
            if (spectrum.values[j] > cutoff && spectrum.values[j] > 0.0) ++spectrum.rank;
        }
    }
    return spectrum;
}

double singular_value_entropy(const Eigen::VectorXd& singular_values, LogBase base) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < singular_values.size(); ++j) {
        const double p = singular_values[j] * singular_values[j];
        if (p > 0.0) s -= p * std::log(p);
    }
    return s * log_base_scale(base);
}

double source_target_entropy(const WalkerState& state, LogBase base) {
    const AmplitudeMatrix m = amplitude_matrix(state);
    Eigen::BDCSVD<AmplitudeMatrix> svd(m);
    if (svd.info() != Eigen::Success) {
        throw std::runtime_error("source_target_entropy: SVD did not converge");
    }
    return singular_value_entropy(svd.singularValues(), base);
}

WalkerState matching_state(std::shared_ptr<const ArcSpace> space, const Matching& m,
                           const std::vector<double>& phases) {
    if (!space) {
        throw std::invalid_argument("matching_state: null arc space");
    }
    if (m.empty()) {
        throw std::invalid_argument("matching_state: empty matching");
    }
    if (!is_valid_matching(m)) {
        throw std::invalid_argument("matching_state: arcs share a head or a tail");
    }
    if (!phases.empty() && phases.size() != m.size()) {
        throw std::invalid_argument("matching_state: phase count does not match matching size");
    }
    WalkerState state;
    state.space = std::move(space);
    state.amplitudes = Eigen::VectorXcd::Zero(state.space->n_arcs());
    const double mag = 1.0 / std::sqrt(static_cast<double>(m.size()));
    for (std::size_t k = 0; k < m.size(); ++k) {
        const int a = arc_of(*state.space, m[k].first, m[k].second);
        const double phi = phases.empty() ? 0.0 : phases[k];
        state.amplitudes[a] = std::polar(mag, phi);
    }
    return state;
}

int regular_degree(const Graph& g) {
    if (g.n_nodes == 0) {
        throw std::invalid_argument("regular_degree: empty graph");
    }
    const std::vector<int> deg = degrees(g);
    for (int d : deg) {
        if (d != deg[0]) {
            throw std::invalid_argument("regular_degree: graph is not regular");
        }
    }
    return deg[0];
}

bool is_valid_assignment(const ArcSpace& space, const CoinAssignment& assignment) {
    if (static_cast<int>(assignment.labels.size()) != space.graph.n_nodes) return false;
    for (int n = 0; n < space.graph.n_nodes; ++n) {
        const int d = space.degree(n);
        if (static_cast<int>(assignment.labels[n].size()) != d) return false;
        std::vector<char> seen(d, 0);
        for (int label : assignment.labels[n]) {
            if (label < 0 || label >= d || seen[label]) return false;
            seen[label] = 1;
        }
    }
    return true;
}

double coin_walker_entropy(const WalkerState& state, const CoinAssignment& assignment,
                           LogBase base) {
    check_state(state);
    const ArcSpace& space = *state.space;
    const int d = regular_degree(space.graph);
    if (d < 1) {
        throw std::invalid_argument("coin_walker_entropy: graph has no arcs");
    }
    if (!is_valid_assignment(space, assignment)) {
        throw std::invalid_argument("coin_walker_entropy: invalid coin assignment");
    }
    const int n = space.graph.n_nodes;
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(n, d);
    for (int node = 0; node < n; ++node) {
        const int off = space.out_begin(node);
        for (int k = 0; k < d; ++k) {
            phi(node, assignment.labels[node][k]) = state.amplitudes[off + k];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(phi);
    return singular_value_entropy(svd.singularValues(), base);
}

long long n_assignments(const ArcSpace& space) {
    const int d = regular_degree(space.graph);
    long long fact = 1;
    for (int k = 2; k <= d; ++k) fact *= k;
    long long total = 1;
    for (int n = 0; n < space.graph.n_nodes; ++n) {
        if (total > std::numeric_limits<long long>::max() / fact) {
            throw std::invalid_argument("n_assignments: assignment count overflows 64 bits");
        }
        total *= fact;
    }
    return total;
}

CoinAssignment assignment_from_index(const ArcSpace& space, long long index) {
    const int d = regular_degree(space.graph);
    if (index < 0 || index >= n_assignments(space)) {
        throw std::invalid_argument("assignment_from_index: index out of range");
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const long long fact = static_cast<long long>(perms.size());

    CoinAssignment assignment;
    assignment.labels.resize(space.graph.n_nodes);
    for (int n = 0; n < space.graph.n_nodes; ++n) {
        assignment.labels[n] = perms[index % fact];
        index /= fact;
    }
    return assignment;
}

SweepResult coin_assignment_sweep(const Graph& g, const std::vector<WalkerState>& states,
                                  LogBase base, bool keep_all) {
    const auto space = make_arc_space(g);
    const long long total = n_assignments(*space);
    if (total > kSweepBudget) {
        throw std::invalid_argument("coin_assignment_sweep: assignment count exceeds budget");
    }
    for (const WalkerState& state : states) {
        check_state(state);
        if (state.space->graph.n_nodes != g.n_nodes || state.space->graph.edges != g.edges) {
            throw std::invalid_argument("coin_assignment_sweep: state graph differs from sweep graph");
        }
    }

    SweepResult result;
    result.n_assignments = total;
    result.per_state.resize(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
        result.per_state[s].source_target = source_target_entropy(states[s], base);
        if (keep_all) result.per_state[s].entropies.reserve(total);
    }
    for (long long idx = 0; idx < total; ++idx) {
        const CoinAssignment assignment = assignment_from_index(*space, idx);
        for (std::size_t s = 0; s < states.size(); ++s) {
            const double e = coin_walker_entropy(states[s], assignment, base);
            SweepStateSummary& summary = result.per_state[s];
            if (idx == 0 || e < summary.min_entropy) summary.min_entropy = e;
            if (idx == 0 || e > summary.max_entropy) summary.max_entropy = e;
            summary.mean_entropy += e;
            if (keep_all) summary.entropies.push_back(e);
        }
    }
    for (SweepStateSummary& summary : result.per_state) {
        summary.mean_entropy /= static_cast<double>(total);
    }
    return result;
}

CoinAssignment direction_assignment(const Graph& g) {
    check_consecutive_cycle(g, "direction_assignment");
    const ArcSpace space = symmetric_digraph(g);
    CoinAssignment assignment;
    assignment.labels = empty_labels(space);
    const int n = g.n_nodes;
    for (int node = 0; node < n; ++node) {
        const int off = space.out_begin(node);
        for (int k = 0; k < 2; ++k) {
            const int head = space.arcs[off + k].second;
            assignment.labels[node][k] = head == (node + 1) % n ? 0 : 1;
        }
    }
    return assignment;
}

CoinAssignment head_pair_assignment(const Graph& g) {
    check_consecutive_cycle(g, "head_pair_assignment");
    const ArcSpace space = symmetric_digraph(g);
    CoinAssignment assignment;
    assignment.labels = empty_labels(space);
    const int n = g.n_nodes;
    for (int node = 0; node < n; ++node) {
        const int off = space.out_begin(node);
        const int clockwise_label = (node / 2) % 2;
        for (int k = 0; k < 2; ++k) {
            const int head = space.arcs[off + k].second;
            assignment.labels[node][k] =
                head == (node + 1) % n ? clockwise_label : 1 - clockwise_label;
        }
    }
    return assignment;
}

CoinAssignment edge_coloring_assignment(const Graph& g) {
    const int d = regular_degree(g);
    if (d < 1) {
        throw std::invalid_argument("edge_coloring_assignment: graph has no edges");
    }
    const int n_edges = g.n_edges();
    std::vector<int> color(n_edges, -1);
    std::vector<unsigned> used_at(g.n_nodes, 0); // bitmask of colors at each node

    // Backtracking proper edge coloring with exactly d colors.
    std::function<bool(int)> assign = [&](int e) -> bool {
        if (e == n_edges) return true;
        const auto& [u, v] = g.edges[e];
        for (int c = 0; c < d; ++c) {
            const unsigned bit = 1u << c;
            if ((used_at[u] | used_at[v]) & bit) continue;
            color[e] = c;
            used_at[u] |= bit;
            used_at[v] |= bit;
            if (assign(e + 1)) return true;
            color[e] = -1;
            used_at[u] &= ~bit;
            used_at[v] &= ~bit;
        }
        return false;
    };
    if (!assign(0)) {
        throw std::runtime_error(
            "edge_coloring_assignment: no proper edge coloring with d colors exists");
    }

    const ArcSpace space = symmetric_digraph(g);
    CoinAssignment assignment;
    assignment.labels = empty_labels(space);
    for (int node = 0; node < g.n_nodes; ++node) {
        const int off = space.out_begin(node);
        for (int k = 0; k < space.degree(node); ++k) {
            const int head = space.arcs[off + k].second;
            const Edge key{std::min(node, head), std::max(node, head)};
            const auto it = std::lower_bound(g.edges.begin(), g.edges.end(), key);
            assignment.labels[node][k] = color[it - g.edges.begin()];
        }
    }
    return assignment;
}

} // namespace qwalk
