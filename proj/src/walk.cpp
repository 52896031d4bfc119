#include "qwalk/walk.hpp"

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

void check_coin(const ArcSpace& space, const CoinOperator& coin) {
    if (static_cast<int>(coin.blocks.size()) != space.graph.n_nodes) {
        throw std::invalid_argument("coin block count does not match node count");
    }
    for (int n = 0; n < space.graph.n_nodes; ++n) {
        const int d = space.degree(n);
        if (coin.blocks[n].rows() != d || coin.blocks[n].cols() != d) {
            throw std::invalid_argument("coin block dimension does not match node degree");
        }
    }
}

} // namespace

WalkerState basis_state(std::shared_ptr<const ArcSpace> space, int tail, int head) {
    if (!space) {
        throw std::invalid_argument("basis_state: null arc space");
    }
    const int a = arc_of(*space, tail, head);
    WalkerState state;
    state.space = std::move(space);
    state.amplitudes = Eigen::VectorXcd::Zero(state.space->n_arcs());
    state.amplitudes[a] = 1.0;
    return state;
}

WalkerState haar_random_state(std::shared_ptr<const ArcSpace> space, std::uint64_t seed) {
    if (!space) {
        throw std::invalid_argument("haar_random_state: null arc space");
    }
    if (space->n_arcs() == 0) {
        throw std::invalid_argument("haar_random_state: empty arc space");
    }
    SplitMix64 rng(seed);
    WalkerState state;
    state.space = std::move(space);
    state.amplitudes.resize(state.space->n_arcs());
    for (int a = 0; a < state.space->n_arcs(); ++a) {
        state.amplitudes[a] = rng.complex_gaussian();
    }
    state.amplitudes.normalize();
    return state;
}

CoinOperator grover_coin(const ArcSpace& space) {
    CoinOperator coin;
    coin.blocks.reserve(space.graph.n_nodes);
    for (int n = 0; n < space.graph.n_nodes; ++n) {
        const int d = space.degree(n);
        if (d <= 1) {
            coin.blocks.push_back(Eigen::MatrixXcd::Identity(d, d));
        } else {
            Eigen::MatrixXcd block =
                Eigen::MatrixXcd::Constant(d, d, 2.0 / static_cast<double>(d));
            block -= Eigen::MatrixXcd::Identity(d, d);
            coin.blocks.push_back(std::move(block));
        }
    }
    return coin;
}

CoinOperator identity_coin(const ArcSpace& space) {
    CoinOperator coin;
    coin.blocks.reserve(space.graph.n_nodes);
    for (int n = 0; n < space.graph.n_nodes; ++n) {
        const int d = space.degree(n);
        coin.blocks.push_back(Eigen::MatrixXcd::Identity(d, d));
    }
    return coin;
}

WalkerState apply_coin(const WalkerState& state, const CoinOperator& coin) {
    check_state(state);
    const ArcSpace& space = *state.space;
    check_coin(space, coin);
    WalkerState out;
    out.space = state.space;
    out.amplitudes.resize(state.amplitudes.size());
    for (int n = 0; n < space.graph.n_nodes; ++n) {
        const int d = space.degree(n);
        if (d == 0) continue;
        const int off = space.out_begin(n);
        out.amplitudes.segment(off, d).noalias() =
            coin.blocks[n] * state.amplitudes.segment(off, d);
    }
    return out;
}

WalkerState apply_shift(const WalkerState& state) {
    check_state(state);
    const ArcSpace& space = *state.space;
    WalkerState out;
    out.space = state.space;
    out.amplitudes.resize(state.amplitudes.size());
    for (int a = 0; a < space.n_arcs(); ++a) {
        out.amplitudes[space.reverse_of[a]] = state.amplitudes[a];
    }
    return out;
}

WalkerState step(const WalkerState& state, const CoinOperator& coin) {
    return apply_shift(apply_coin(state, coin));
}

WalkerState evolve(const WalkerState& initial, const CoinOperator& coin, int t_max,
                   const StepObserver& observer) {
    if (t_max < 0) {
        throw std::invalid_argument("evolve: t_max must be >= 0");
    }
    check_state(initial);
    check_coin(*initial.space, coin);
    WalkerState state = initial;
    if (observer) observer(0, state);
    for (int t = 1; t <= t_max; ++t) {
        state = step(state, coin);
        if (observer) observer(t, state);
    }
    return state;
}

std::vector<WalkerState> trajectory(const WalkerState& initial, const CoinOperator& coin,
                                    int t_max) {
    std::vector<WalkerState> states;
    states.reserve(t_max + 1);
    evolve(initial, coin, t_max,
           [&states](int, const WalkerState& s) { states.push_back(s); });
    return states;
}

} // namespace qwalk
