// walk.hpp
// Discrete-time quantum walk in the arc basis. A state assigns one complex
// amplitude to every directed arc n->m; one step is a per-node coin mixing
// the outgoing amplitudes of each node, followed by the flip-flop shift
// that sends each arc's amplitude onto its reversal.

#pragma once

#include "qwalk/arc_space.hpp"
#include "qwalk/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace qwalk {

struct WalkerState {
    std::shared_ptr<const ArcSpace> space;
    Eigen::VectorXcd amplitudes; // indexed by arc

    double norm() const { return amplitudes.norm(); }
};

// Unit amplitude on the single arc tail->head.
WalkerState basis_state(std::shared_ptr<const ArcSpace> space, int tail, int head);

// Haar-uniform random unit vector over the arc basis.
WalkerState haar_random_state(std::shared_ptr<const ArcSpace> space, std::uint64_t seed);

// Block-diagonal coin: one d_n x d_n unitary per node, acting on the
// contiguous slice of outgoing arcs of that node.
struct CoinOperator {
    std::vector<Eigen::MatrixXcd> blocks; // indexed by node
};

// Grover diffusion coin, per node: (2/d) J - I on d outgoing arcs.
// Degree-1 nodes get the 1x1 identity (the walker bounces back).
CoinOperator grover_coin(const ArcSpace& space);

CoinOperator identity_coin(const ArcSpace& space);

WalkerState apply_coin(const WalkerState& state, const CoinOperator& coin);

// Flip-flop shift: amplitude on arc a moves to reverse(a).
WalkerState apply_shift(const WalkerState& state);

// One walk step: coin, then shift.
WalkerState step(const WalkerState& state, const CoinOperator& coin);

// Run t_max steps; observer (if given) is called at t = 0, 1, ..., t_max
// with the state at that time. Returns the final state.
using StepObserver = std::function<void(int t, const WalkerState&)>;

WalkerState evolve(const WalkerState& initial, const CoinOperator& coin, int t_max,
                   const StepObserver& observer = nullptr);

// All intermediate states, index t = 0..t_max inclusive.
std::vector<WalkerState> trajectory(const WalkerState& initial, const CoinOperator& coin,
                                    int t_max);

// Hadamard walk on a line segment (coin-walker form, moving shift), with the
// standard symmetric initial coin (|up> + i|down>)/sqrt(2) at the center
// site. Entropies are in nats.
struct HadamardLineResult {
    int n_sites = 0;
    int t_max = 0;
    std::vector<double> coin_position_entropy; // entanglement of coin with position, t = 0..t_max
    std::vector<double> source_target_entropy; // arc-basis source-target entropy, t = 0..t_max
    std::vector<double> norms;                 // state norm at each t (unitarity check)
};

// n_sites must be at least 2*t_max + 3 so the wavefront never touches the
// boundary; pass 0 to pick the smallest valid size.
HadamardLineResult hadamard_line(int t_max, int n_sites = 0);

} // namespace qwalk
