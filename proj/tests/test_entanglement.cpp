// test_entanglement.cpp — Tests for source-target entropy, matching
// states, and coin-assignment sweeps.
//
// Covers: amplitude-matrix layout, Schmidt spectra against a density-matrix
// eigensolver oracle, the matching-size entropy bound as a property over
// random states, matching-state tightness and phase invariance, relabeling
// invariance, named cycle assignments (direction, head-pair, edge-coloring)
// on the two-arc converging state, and exhaustive assignment sweeps.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qwalk/arc_space.hpp"
#include "qwalk/entanglement.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/matching.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace qwalk;
using Complex = std::complex<double>;

namespace {

// Relabels nodes by the permutation perm (new id = perm[old id]).
Graph relabel(const Graph& g, const std::vector<int>& perm) {
    std::vector<Edge> edges;
    edges.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) edges.emplace_back(perm[u], perm[v]);
    return make_graph(g.n_nodes, std::move(edges));
}

// The two-arc converging state (|0->1> + |2->1>)/sqrt(2) on a cycle.
WalkerState converging_state(const std::shared_ptr<const ArcSpace>& space) {
    WalkerState s;
    s.space = space;
    s.amplitudes = Eigen::VectorXcd::Zero(space->n_arcs());
    s.amplitudes[arc_of(*space, 0, 1)] = 1.0 / std::sqrt(2.0);
    s.amplitudes[arc_of(*space, 2, 1)] = 1.0 / std::sqrt(2.0);
    return s;
}

} // namespace

// =========================================================================
// Amplitude matrix and Schmidt spectra
// =========================================================================

TEST_CASE("amplitude_matrix places psi_{n->m} at row n, column m") {
    const auto space = make_arc_space(generate_cycle(3));
    const AmplitudeMatrix m = amplitude_matrix(basis_state(space, 1, 2));
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 3);
    CHECK(m(1, 2) == Complex(1.0));
    CHECK(m.cwiseAbs().sum() == doctest::Approx(1.0)); // single nonzero entry
}

TEST_CASE("amplitude_matrix is supported on arcs only") {
    const Graph g = triangular_prism();
    const auto space = make_arc_space(g);
    const AmplitudeMatrix m = amplitude_matrix(haar_random_state(space, 3));
    for (int n = 0; n < g.n_nodes; ++n) {
        for (int k = 0; k < g.n_nodes; ++k) {
            if (n == k || !g.has_edge(n, k)) {
                CHECK(m(n, k) == Complex(0.0));
            } else {
                CHECK(std::abs(m(n, k)) > 0.0);
            }
        }
    }
}

TEST_CASE("schmidt_decompose of a rotation state is flat") {
    const auto space = make_arc_space(generate_cycle(3));
    const Matching rotation = {{0, 1}, {1, 2}, {2, 0}};
    const SchmidtSpectrum s =
        schmidt_decompose(amplitude_matrix(matching_state(space, rotation)));
    REQUIRE(s.values.size() == 3);
    CHECK(s.rank == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(s.values[i] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    }
}

TEST_CASE("schmidt values are nonincreasing and square-sum to one") {
    const auto space = make_arc_space(generate_er(12, 0.35, 4, true));
    for (int i = 0; i < 10; ++i) {
        const SchmidtSpectrum s = schmidt_decompose(
            amplitude_matrix(haar_random_state(space, derive_seed(9, i))));
        double sum_sq = 0.0;
        for (int k = 0; k < s.values.size(); ++k) {
            sum_sq += s.values[k] * s.values[k];
            if (k > 0) CHECK(s.values[k] <= s.values[k - 1] + 1e-15);
        }
        CHECK(sum_sq == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(s.rank >= 1);
    }
}

TEST_CASE("singular-value entropy agrees with the density-matrix route") {
    for (int i = 0; i < 20; ++i) {
        const Graph g = generate_er(6 + i % 8, 0.4, derive_seed(31, i), false);
        if (g.n_edges() == 0) continue;
        const auto space = make_arc_space(g);
        const WalkerState s = haar_random_state(space, derive_seed(32, i));
        CHECK(std::abs(source_target_entropy(s) - oracles::density_matrix_entropy(s)) < 1e-10);
    }
}

TEST_CASE("singular_value_entropy handles zeros and the base-two scale") {
    Eigen::VectorXd values(3);
    values << 1.0, 0.0, 0.0;
    CHECK(singular_value_entropy(values) == 0.0);
    values << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
    CHECK(singular_value_entropy(values) == doctest::Approx(std::log(2.0)));
    CHECK(singular_value_entropy(values, LogBase::two) == doctest::Approx(1.0));
}

// =========================================================================
// Source-target entropy on hand-built states
// =========================================================================

TEST_CASE("basis states and single-source fans are unentangled") {
    const auto space = make_arc_space(generate_cycle(3));
    CHECK(source_target_entropy(basis_state(space, 0, 1)) < 1e-12);
    WalkerState fan;
    fan.space = space;
    fan.amplitudes = Eigen::VectorXcd::Zero(space->n_arcs());
    fan.amplitudes[arc_of(*space, 0, 1)] = 1.0 / std::sqrt(2.0);
    fan.amplitudes[arc_of(*space, 0, 2)] = 1.0 / std::sqrt(2.0);
    CHECK(source_target_entropy(fan) < 1e-12); // rank 1: one source row
}

TEST_CASE("rotation states on cycles reach log N") {
    for (int n = 3; n <= 8; ++n) {
        const auto space = make_arc_space(generate_cycle(n));
        Matching rotation;
        for (int i = 0; i < n; ++i) rotation.emplace_back(i, (i + 1) % n);
        const WalkerState s = matching_state(space, rotation);
        CHECK(source_target_entropy(s) == doctest::Approx(std::log(double(n))).epsilon(1e-9));
    }
}

TEST_CASE("head-to-head pair states on even cycles also reach log N") {
    for (int n : {4, 6, 8}) {
        const auto space = make_arc_space(generate_cycle(n));
        Matching pairs;
        for (int i = 0; i < n; i += 2) {
            pairs.emplace_back(i, i + 1);
            pairs.emplace_back(i + 1, i);
        }
        CHECK(source_target_entropy(matching_state(space, pairs)) ==
              doctest::Approx(std::log(double(n))).epsilon(1e-9));
    }
}

// =========================================================================
// Matching states
// =========================================================================

TEST_CASE("matching_state entropy is exactly log of the matching size") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = generate_er(10, 0.4, derive_seed(41, trial), false);
        if (g.n_edges() == 0) continue;
        const auto space = make_arc_space(g);
        // Build a random valid matching greedily over shuffled arcs.
        std::vector<int> order(space->n_arcs());
        std::iota(order.begin(), order.end(), 0);
        for (int i = (int)order.size() - 1; i > 0; --i) {
            std::swap(order[i], order[rng.below(i + 1)]);
        }
        Matching m;
        std::vector<bool> tail_used(g.n_nodes, false), head_used(g.n_nodes, false);
        for (int a : order) {
            const auto& [t, h] = space->arcs[a];
            if (tail_used[t] || head_used[h]) continue;
            tail_used[t] = head_used[h] = true;
            m.emplace_back(t, h);
        }
        REQUIRE(!m.empty());
        std::vector<double> phases;
        for (std::size_t k = 0; k < m.size(); ++k) phases.push_back(2.0 * M_PI * rng.uniform01());
        const WalkerState s = matching_state(space, m, phases);
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
        CHECK(std::abs(source_target_entropy(s) - std::log(double(m.size()))) < 1e-10);
    }
}

TEST_CASE("matching_state phases never change the entropy") {
    const auto space = make_arc_space(generate_cycle(5));
    Matching rotation;
    for (int i = 0; i < 5; ++i) rotation.emplace_back(i, (i + 1) % 5);
    const double plain = source_target_entropy(matching_state(space, rotation));
    const double twisted = source_target_entropy(
        matching_state(space, rotation, {0.3, 1.1, 2.9, 4.2, 5.8}));
    CHECK(std::abs(plain - twisted) < 1e-12);
}

TEST_CASE("matching_state validates its arguments") {
    const auto space = make_arc_space(generate_cycle(4));
    CHECK_THROWS_AS(matching_state(space, {}), std::invalid_argument);
    CHECK_THROWS_AS(matching_state(space, {{0, 1}, {0, 3}}), std::invalid_argument); // shared tail
    CHECK_THROWS_AS(matching_state(space, {{0, 2}}), std::invalid_argument);         // not an arc
    CHECK_THROWS_AS(matching_state(space, {{0, 1}}, {0.0, 1.0}), std::invalid_argument);
}

// =========================================================================
// The matching bound as a property
// =========================================================================

TEST_CASE("entropy never exceeds log of the support matching size") {
    for (int gi = 0; gi < 6; ++gi) {
        const Graph g = generate_er(12 + 2 * gi, 0.3, derive_seed(51, gi), true);
        const auto space = make_arc_space(g);
        for (int si = 0; si < 10; ++si) {
            const WalkerState s = haar_random_state(space, derive_seed(52, gi, si));
            const double entropy = source_target_entropy(s);
            const int bound = largest_matching_in_support(s);
            CHECK(entropy <= std::log(double(bound)) + 1e-9);
        }
    }
}

TEST_CASE("the bound also holds along walk trajectories") {
    const auto space = make_arc_space(triangular_prism());
    const CoinOperator coin = grover_coin(*space);
    for (const WalkerState& s : trajectory(basis_state(space, 0, 1), coin, 30)) {
        CHECK(source_target_entropy(s) <=
              std::log(double(largest_matching_in_support(s))) + 1e-9);
    }
}

TEST_CASE("source-target entropy is invariant under node relabeling") {
    const Graph g = generate_er(9, 0.4, 60, true);
    const std::vector<int> perm = {4, 7, 0, 8, 2, 6, 1, 5, 3};
    const Graph h = relabel(g, perm);
    const auto space_g = make_arc_space(g);
    const auto space_h = make_arc_space(h);
    const WalkerState s = haar_random_state(space_g, 61);
    WalkerState t;
    t.space = space_h;
    t.amplitudes = Eigen::VectorXcd::Zero(space_h->n_arcs());
    for (int a = 0; a < space_g->n_arcs(); ++a) {
        const auto& [tail, head] = space_g->arcs[a];
        t.amplitudes[arc_of(*space_h, perm[tail], perm[head])] = s.amplitudes[a];
    }
    CHECK(std::abs(source_target_entropy(s) - source_target_entropy(t)) < 1e-12);
}

// =========================================================================
// Coin assignments
// =========================================================================

TEST_CASE("regular_degree accepts regular graphs and rejects the rest") {
    CHECK(regular_degree(triangular_prism()) == 3);
    CHECK(regular_degree(generate_cycle(6)) == 2);
    CHECK_THROWS_AS(regular_degree(make_graph(3, {{0, 1}, {1, 2}})), std::invalid_argument);
    CHECK(regular_degree(make_graph(2, {})) == 0); // uniformly 0-regular
    CHECK_THROWS_AS(regular_degree(make_graph(0, {})), std::invalid_argument);
}

TEST_CASE("named cycle assignments are valid per-node bijections") {
    for (int n : {4, 5, 6, 8, 10}) {
        const Graph g = generate_cycle(n);
        const ArcSpace space = symmetric_digraph(g);
        CHECK(is_valid_assignment(space, direction_assignment(g)));
        CHECK(is_valid_assignment(space, head_pair_assignment(g)));
    }
    const Graph c8 = generate_cycle(8);
    CHECK(is_valid_assignment(symmetric_digraph(c8), edge_coloring_assignment(c8)));
    CHECK(is_valid_assignment(symmetric_digraph(triangular_prism()),
                              edge_coloring_assignment(triangular_prism())));
}

TEST_CASE("edge_coloring_assignment fails on class-2 graphs") {
    // Odd cycles need 3 colors but have degree 2.
    CHECK_THROWS_AS(edge_coloring_assignment(generate_cycle(5)), std::runtime_error);
}

TEST_CASE("the converging two-arc state separates under one labeling but not others") {
    const Graph c8 = generate_cycle(8);
    const auto space = make_arc_space(c8);
    const WalkerState s = converging_state(space);
    const double log2 = std::log(2.0);

    // Direction labels: 0->1 is clockwise (label 0), 2->1 counter-clockwise
    // (label 1). Coin and position stay maximally entangled.
    CHECK(std::abs(coin_walker_entropy(s, direction_assignment(c8)) - log2) < 1e-10);

    // Head-pair labels give both converging arcs the same label: the state
    // factorizes and the coin marginal is pure.
    CHECK(coin_walker_entropy(s, head_pair_assignment(c8)) < 1e-10);

    // A proper edge coloring cannot do the same: the two arcs meet at node 1,
    // so their edges always carry different colors.
    CHECK(std::abs(coin_walker_entropy(s, edge_coloring_assignment(c8)) - log2) < 1e-10);
}

TEST_CASE("coin-walker entropy of a rotation state is zero under direction labels") {
    // All-clockwise superpositions carry the same label everywhere: the coin
    // factor is pure even though source-target entanglement is maximal.
    const Graph c8 = generate_cycle(8);
    const auto space = make_arc_space(c8);
    Matching rotation;
    for (int i = 0; i < 8; ++i) rotation.emplace_back(i, (i + 1) % 8);
    const WalkerState s = matching_state(space, rotation);
    CHECK(coin_walker_entropy(s, direction_assignment(c8)) < 1e-10);
    CHECK(source_target_entropy(s) == doctest::Approx(std::log(8.0)));
}

// =========================================================================
// Assignment enumeration and sweeps
// =========================================================================

TEST_CASE("n_assignments is (d!)^N") {
    CHECK(n_assignments(symmetric_digraph(make_graph(2, {{0, 1}}))) == 1);
    CHECK(n_assignments(symmetric_digraph(generate_cycle(4))) == 16);
    CHECK(n_assignments(symmetric_digraph(triangular_prism())) == 46656);
}

TEST_CASE("assignment_from_index enumerates distinct valid assignments") {
    const ArcSpace space = symmetric_digraph(generate_cycle(4));
    const long long total = n_assignments(space);
    std::vector<CoinAssignment> all;
    for (long long i = 0; i < total; ++i) {
        const CoinAssignment a = assignment_from_index(space, i);
        CHECK(is_valid_assignment(space, a));
        for (const auto& prev : all) CHECK(prev.labels != a.labels);
        all.push_back(a);
    }
    // Index 0 is the identity labeling on every node.
    for (const auto& node_labels : all[0].labels) {
        for (int k = 0; k < (int)node_labels.size(); ++k) CHECK(node_labels[k] == k);
    }
    CHECK_THROWS_AS(assignment_from_index(space, total), std::invalid_argument);
    CHECK_THROWS_AS(assignment_from_index(space, -1), std::invalid_argument);
}

TEST_CASE("coin_assignment_sweep summarizes per-state spreads") {
    const Graph g = generate_cycle(4);
    const auto space = make_arc_space(g);
    const std::vector<WalkerState> states = {converging_state(space),
                                             haar_random_state(space, 9)};
    const SweepResult result = coin_assignment_sweep(g, states, LogBase::natural, true);
    CHECK(result.n_assignments == 16);
    REQUIRE(result.per_state.size() == 2);
    for (const auto& summary : result.per_state) {
        REQUIRE((long long)summary.entropies.size() == 16);
        const auto [lo, hi] =
            std::minmax_element(summary.entropies.begin(), summary.entropies.end());
        CHECK(summary.min_entropy == doctest::Approx(*lo));
        CHECK(summary.max_entropy == doctest::Approx(*hi));
        const double mean =
            std::accumulate(summary.entropies.begin(), summary.entropies.end(), 0.0) / 16.0;
        CHECK(summary.mean_entropy == doctest::Approx(mean));
        // Coin-walker entropy is bounded by the coin dimension.
        CHECK(summary.max_entropy <= std::log(2.0) + 1e-9);
    }
    // The converging state's spread includes a separating assignment.
    CHECK(result.per_state[0].min_entropy < 1e-9);
    CHECK(result.per_state[0].max_entropy > std::log(2.0) - 1e-9);
}

TEST_CASE("coin_assignment_sweep on a single edge has exactly one assignment") {
    const Graph g = make_graph(2, {{0, 1}});
    const auto space = make_arc_space(g);
    const SweepResult result = coin_assignment_sweep(g, {basis_state(space, 0, 1)});
    CHECK(result.n_assignments == 1);
    REQUIRE(result.per_state.size() == 1);
    CHECK(result.per_state[0].min_entropy == doctest::Approx(result.per_state[0].max_entropy));
}

TEST_CASE("coin_assignment_sweep enforces the budget and the state graph") {
    // 3-regular on 10 nodes: 6^10 assignments is past the budget.
    const Graph petersen = make_graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                                           {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8},
                                           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
    const auto space = make_arc_space(petersen);
    CHECK_THROWS_AS(coin_assignment_sweep(petersen, {haar_random_state(space, 1)}),
                    std::invalid_argument);

    // States must live on the swept graph.
    const auto other = make_arc_space(generate_cycle(4));
    CHECK_THROWS_AS(coin_assignment_sweep(triangular_prism(), {haar_random_state(other, 1)}),
                    std::invalid_argument);
}
