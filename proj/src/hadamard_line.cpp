// Hadamard walk on a line segment in the (site, coin) picture, with the
// moving shift: coin-up amplitude steps right, coin-down steps left. Under
// the identification |n,up> = |n -> n+1>, |n,down> = |n -> n-1> the same
// state lives in the arc basis of the path graph, which is where the
// source-target entropy is evaluated.

#include "qwalk/walk.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

double singular_value_entropy(const Eigen::VectorXd& sigma) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < sigma.size(); ++j) {
        const double p = sigma[j] * sigma[j];
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

} // namespace

HadamardLineResult hadamard_line(int t_max, int n_sites) {
    if (t_max < 0) {
        throw std::invalid_argument("hadamard_line: t_max must be >= 0");
    }
    if (n_sites == 0) n_sites = 2 * t_max + 3;
    if (n_sites < 2 * t_max + 3) {
        throw std::invalid_argument(
            "hadamard_line: segment too short, need n_sites >= 2*t_max + 3");
    }

    const int L = n_sites;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(L);   // coin up = moving right
    Eigen::VectorXcd down = Eigen::VectorXcd::Zero(L); // coin down = moving left

    const int center = L / 2;
    up[center] = inv_sqrt2;
    down[center] = std::complex<double>(0.0, inv_sqrt2);

    HadamardLineResult result;
    result.n_sites = L;
    result.t_max = t_max;
    result.coin_position_entropy.reserve(t_max + 1);
    result.source_target_entropy.reserve(t_max + 1);
    result.norms.reserve(t_max + 1);

    auto record = [&]() {
        // Coin-position split: L x 2 amplitude matrix, one column per coin label.
        Eigen::MatrixXcd phi(L, 2);
        phi.col(0) = up;
        phi.col(1) = down;
        Eigen::JacobiSVD<Eigen::MatrixXcd> coin_svd(phi);
        result.coin_position_entropy.push_back(
            singular_value_entropy(coin_svd.singularValues()));

        // Source-target split: arc amplitudes arranged as the L x L matrix
        // with psi_{n,n+1} = up(n), psi_{n,n-1} = down(n). The light-cone
        // guard keeps the boundary entries (which have no arc) at zero.
        Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(L, L);
        for (int n = 0; n + 1 < L; ++n) psi(n, n + 1) = up[n];
        for (int n = 1; n < L; ++n) psi(n, n - 1) = down[n];
        Eigen::BDCSVD<Eigen::MatrixXcd> arc_svd(psi);
        result.source_target_entropy.push_back(
            singular_value_entropy(arc_svd.singularValues()));

        result.norms.push_back(std::sqrt(up.squaredNorm() + down.squaredNorm()));
    };

    record();
    for (int t = 1; t <= t_max; ++t) {
        // Hadamard coin at every site, then shift by coin direction.
        Eigen::VectorXcd coined_up = (up + down) * inv_sqrt2;
        Eigen::VectorXcd coined_down = (up - down) * inv_sqrt2;
        Eigen::VectorXcd next_up = Eigen::VectorXcd::Zero(L);
        Eigen::VectorXcd next_down = Eigen::VectorXcd::Zero(L);
        next_up.segment(1, L - 1) = coined_up.segment(0, L - 1);
        next_down.segment(0, L - 1) = coined_down.segment(1, L - 1);
        up = std::move(next_up);
        down = std::move(next_down);
        record();
    }
    return result;
}

} // namespace qwalk
