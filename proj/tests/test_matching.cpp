// test_matching.cpp — Tests for maximum matchings, matching counts, the
// support bound, entanglement capacity, and the Karp-Sipser expectation.
//
// Covers: Hopcroft-Karp vs a subset-DP oracle, Edmonds blossom vs a
// branching oracle (odd cycles included), Konig duality on covers, exact
// maximum-matching counts, the support-restricted bound, cycle/star
// capacities, fixed-point solving with frozen high-precision values, and
// the paired graph/cover matching scatter.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qwalk/arc_space.hpp"
#include "qwalk/entanglement.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/matching.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/walk.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace qwalk;

namespace {

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);             // outer 5-cycle
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);     // inner pentagram
        edges.emplace_back(i, 5 + i);                   // spokes
    }
    return make_graph(10, std::move(edges));
}

Graph star_graph(int leaves) {
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return make_graph(leaves + 1, std::move(edges));
}

} // namespace

// =========================================================================
// Matching predicates
// =========================================================================

TEST_CASE("is_valid_matching requires distinct tails and distinct heads") {
    CHECK(is_valid_matching({}));
    CHECK(is_valid_matching({{0, 1}}));
    CHECK(is_valid_matching({{0, 1}, {1, 0}}));   // a 2-cycle of arcs is fine
    CHECK(is_valid_matching({{0, 1}, {1, 2}}));   // head-to-tail chains are fine
    CHECK_FALSE(is_valid_matching({{0, 1}, {0, 2}})); // shared tail
    CHECK_FALSE(is_valid_matching({{0, 2}, {1, 2}})); // shared head
}

TEST_CASE("is_vertex_disjoint is the stricter undirected condition") {
    CHECK(is_vertex_disjoint({{0, 1}, {2, 3}}));
    CHECK_FALSE(is_vertex_disjoint({{0, 1}, {1, 2}}));
    CHECK_FALSE(is_vertex_disjoint({{0, 1}, {1, 0}}));
}

// =========================================================================
// Hopcroft-Karp on covers
// =========================================================================

TEST_CASE("cover matchings on reference graphs") {
    CHECK((int)max_matching_bipartite(bipartite_double_cover(make_graph(2, {{0, 1}}))).size() == 2);
    for (int n = 3; n <= 12; ++n) {
        CHECK((int)max_matching_bipartite(bipartite_double_cover(generate_cycle(n))).size() == n);
    }
}

TEST_CASE("Hopcroft-Karp matches the subset-DP oracle on random covers") {
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = generate_er(8, 0.15 + 0.05 * (trial % 10), derive_seed(5, trial), false);
        const BipartiteCover cover = bipartite_double_cover(g);
        const Matching m = max_matching_bipartite(cover);
        CHECK(is_valid_matching(m));
        CHECK((int)m.size() ==
              oracles::brute_bipartite_matching(cover.n_sources, cover.n_targets, cover.edges));
    }
}

TEST_CASE("Hopcroft-Karp witnesses use only cover edges") {
    const Graph g = generate_er(10, 0.3, 12, false);
    const ArcSpace space = symmetric_digraph(g);
    for (const auto& [s, t] : max_matching_bipartite(bipartite_double_cover(g))) {
        CHECK(arc_of(space, s, t) >= 0); // throws if (s, t) is not an arc
    }
}

TEST_CASE("Konig duality holds on covers: matching size = min vertex cover") {
    for (const Graph& g : {make_graph(2, {{0, 1}}), generate_cycle(3), generate_cycle(4),
                           generate_cycle(5), star_graph(5), triangular_prism(),
                           generate_er(8, 0.35, 3, false)}) {
        const BipartiteCover cover = bipartite_double_cover(g);
        const int matched = (int)max_matching_bipartite(cover).size();
        CHECK(matched ==
              oracles::brute_min_vertex_cover(cover.n_sources, cover.n_targets, cover.edges));
    }
}

// =========================================================================
// Blossom on general graphs
// =========================================================================

TEST_CASE("general matchings on reference graphs") {
    CHECK((int)max_matching_general(generate_cycle(3)).size() == 1);
    CHECK((int)max_matching_general(generate_cycle(4)).size() == 2);
    CHECK((int)max_matching_general(generate_cycle(5)).size() == 2);
    CHECK((int)max_matching_general(generate_cycle(7)).size() == 3);
    CHECK((int)max_matching_general(petersen_graph()).size() == 5);
    CHECK((int)max_matching_general(star_graph(6)).size() == 1);
    CHECK(max_matching_general(make_graph(3, {})).empty());
}

TEST_CASE("blossom matches the branching oracle on random graphs") {
    for (int trial = 0; trial < 60; ++trial) {
        const Graph g = generate_er(9, 0.1 + 0.06 * (trial % 10), derive_seed(13, trial), false);
        const Matching m = max_matching_general(g);
        CHECK(is_vertex_disjoint(m));
        for (const auto& [u, v] : m) CHECK(g.has_edge(u, v));
        CHECK((int)m.size() == oracles::brute_general_matching(g));
    }
}

TEST_CASE("blossom handles odd components that defeat greedy augmentation") {
    // Two triangles bridged by an edge: perfect matching of size 3 exists
    // only if both triangles give up their bridge-adjacent vertices.
    const Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
    CHECK((int)max_matching_general(g).size() == 3);
    CHECK((int)max_matching_general(g).size() == oracles::brute_general_matching(g));
}

// =========================================================================
// Support bound
// =========================================================================

TEST_CASE("largest_matching_in_support on hand-built states") {
    const auto tri = make_arc_space(generate_cycle(3));
    CHECK(largest_matching_in_support(basis_state(tri, 0, 1)) == 1);

    // Two arcs sharing the source: support matching is still 1.
    WalkerState fan = basis_state(tri, 0, 1);
    fan.amplitudes.setZero();
    fan.amplitudes[arc_of(*tri, 0, 1)] = 1.0 / std::sqrt(2.0);
    fan.amplitudes[arc_of(*tri, 0, 2)] = 1.0 / std::sqrt(2.0);
    CHECK(largest_matching_in_support(fan) == 1);

    // The full rotation covers every source and target once.
    const Matching rotation = {{0, 1}, {1, 2}, {2, 0}};
    CHECK(largest_matching_in_support(matching_state(tri, rotation)) == 3);
}

TEST_CASE("largest_matching_in_support ignores amplitudes below the threshold") {
    const auto tri = make_arc_space(generate_cycle(3));
    WalkerState s = basis_state(tri, 0, 1);
    s.amplitudes[arc_of(*tri, 1, 2)] = 1e-13; // under kSupportThreshold
    CHECK(largest_matching_in_support(s) == 1);
    s.amplitudes[arc_of(*tri, 1, 2)] = 1e-6;
    CHECK(largest_matching_in_support(s) == 2);
}

// =========================================================================
// Capacity
// =========================================================================

TEST_CASE("entanglement_capacity of cycles is log N") {
    for (int n = 3; n <= 12; ++n) {
        const CapacityReport report = entanglement_capacity(generate_cycle(n));
        CHECK(report.max_matching_size == n);
        CHECK(report.capacity == doctest::Approx(std::log(double(n))).epsilon(1e-12));
        CHECK(is_valid_matching(report.witness));
        CHECK((int)report.witness.size() == n);
    }
}

TEST_CASE("entanglement_capacity on an edge, a star, and in base two") {
    CHECK(entanglement_capacity(make_graph(2, {{0, 1}})).capacity ==
          doctest::Approx(std::log(2.0)));
    // A star's cover matches hub->leaf and leaf->hub, never more.
    CHECK(entanglement_capacity(star_graph(7)).max_matching_size == 2);
    CHECK(entanglement_capacity(generate_cycle(4), LogBase::two).capacity ==
          doctest::Approx(2.0));
    CHECK_THROWS_AS(entanglement_capacity(make_graph(3, {})), std::invalid_argument);
}

// =========================================================================
// Counting maximum matchings
// =========================================================================

TEST_CASE("count_maximum_matchings on reference covers") {
    CHECK(count_maximum_matchings(bipartite_double_cover(make_graph(2, {{0, 1}}))) == 1);
    // The triangle's cover is a 6-cycle: two perfect matchings.
    CHECK(count_maximum_matchings(bipartite_double_cover(generate_cycle(3))) == 2);
    // C_4's cover is two disjoint 4-cycles, 2 x 2 choices.
    CHECK(count_maximum_matchings(bipartite_double_cover(generate_cycle(4))) == 4);
    // C_5's cover is a single 10-cycle: two perfect matchings (the rotation
    // and its reverse).
    CHECK(count_maximum_matchings(bipartite_double_cover(generate_cycle(5))) == 2);
}

TEST_CASE("count_maximum_matchings rejects oversized covers") {
    CHECK_THROWS_AS(count_maximum_matchings(bipartite_double_cover(generate_cycle(17))),
                    std::invalid_argument);
}

// =========================================================================
// Fixed point and expected matching size
// =========================================================================

TEST_CASE("solve_fixed_point residuals vanish and roots match frozen values") {
    // Reference roots computed independently at 30-digit precision.
    const struct { double kbar, y; } frozen[] = {
        {0.5, 0.70346742249839165205},
        {1.0, 0.56714329040978387300},
        {2.0, 0.42630275100686274567},
        {4.0, 0.02797077287182331898},
        {8.0, 0.00034289552161257031},
    };
    for (const auto& [kbar, y_ref] : frozen) {
        const double y = solve_fixed_point(kbar);
        CHECK(std::abs(y - y_ref) < 1e-10);
        const double residual = y - std::exp(-kbar * std::exp(-kbar * y));
        CHECK(std::abs(residual) < 1e-10);
    }
}

TEST_CASE("solve_fixed_point picks the smallest root when several exist") {
    // Above kbar ~ 4 the map has three fixed points; the smallest is the
    // one that continues the low-degree branch.
    CHECK(solve_fixed_point(4.0) < 0.03);
    CHECK(solve_fixed_point(8.0) < 0.001);
}

TEST_CASE("solve_fixed_point is nonincreasing in the mean degree") {
    double prev = 1.0;
    for (double kbar = 0.25; kbar <= 20.0; kbar += 0.25) {
        const double y = solve_fixed_point(kbar);
        CHECK(y <= prev + 1e-12);
        prev = y;
    }
    CHECK_THROWS_AS(solve_fixed_point(0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_fixed_point(-1.0), std::invalid_argument);
}

TEST_CASE("karp_sipser_expected limits and frozen value") {
    // Dense limit: almost every vertex is matched.
    CHECK(karp_sipser_expected(10000, 50.0) > 0.499 * 10000);
    // Sparse limit: expectation vanishes with the mean degree.
    CHECK(karp_sipser_expected(10000, 0.01) < 100.0);
    // Frozen reference at n = 10^4, kbar = 1.
    const double expected = karp_sipser_expected(10000, 1.0);
    CHECK(std::abs(expected - 2720.3095366179790299) / 2720.3095366179790299 < 1e-9);
    // The per-node ratio is size-independent.
    CHECK(karp_sipser_expected(500, 2.0) / 500.0 ==
          doctest::Approx(0.39196321347711803861).epsilon(1e-9));
    CHECK(karp_sipser_expected(500, 4.0) / 500.0 ==
          doctest::Approx(0.48892015590930151850).epsilon(1e-9));
}

// =========================================================================
// Matching scatter
// =========================================================================

TEST_CASE("matching_scatter pairs every graph with its doubled cover bound") {
    ScatterSpec spec;
    spec.model = "er";
    spec.sizes = {10, 14};
    spec.params = {0.15, 0.3};
    spec.realizations = 6;
    spec.base_seed = 77;
    const ScatterResult result = matching_scatter(spec);
    REQUIRE((int)result.records.size() == 2 * 2 * 6);
    for (const auto& rec : result.records) {
        CHECK(rec.matching_cover >= 2 * rec.matching_graph);
    }
    REQUIRE(result.averages.size() == 4);
    CHECK(std::isfinite(result.slope));
    CHECK(result.slope > 1.0);
}

TEST_CASE("matching_scatter supports the preferential-attachment model") {
    ScatterSpec spec;
    spec.model = "ba";
    spec.sizes = {12};
    spec.params = {1, 2, 3};
    spec.realizations = 4;
    const ScatterResult result = matching_scatter(spec);
    REQUIRE((int)result.records.size() == 3 * 4);
    for (const auto& rec : result.records) {
        CHECK(rec.matching_cover >= 2 * rec.matching_graph);
        CHECK(rec.matching_graph >= 1);
    }
}

TEST_CASE("matching_scatter default grids are nonempty and in range") {
    for (int n : {25, 100}) {
        const auto er = scatter_default_params("er", n);
        CHECK(!er.empty());
        for (double p : er) {
            CHECK(p > 0.0);
            CHECK(p <= 1.0);
        }
        const auto ba = scatter_default_params("ba", n);
        CHECK(!ba.empty());
        for (double m : ba) CHECK(m >= 1.0);
    }
}

TEST_CASE("matching_scatter rejects unknown models") {
    ScatterSpec spec;
    spec.model = "grid";
    CHECK_THROWS_AS(matching_scatter(spec), std::invalid_argument);
}
