#include "qwalk/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

std::pair<double, double> plateau_average(const std::vector<double>& series, int t0, int t1) {
    if (t0 < 0 || t1 < t0 || t1 >= static_cast<int>(series.size())) {
        throw std::invalid_argument("plateau_average: window out of range");
    }
    const int count = t1 - t0 + 1;
    double mean = 0.0;
    for (int t = t0; t <= t1; ++t) mean += series[t];
    mean /= count;
    double var = 0.0;
    for (int t = t0; t <= t1; ++t) {
        const double d = series[t] - mean;
        var += d * d;
    }
    return {mean, std::sqrt(var / count)};
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("pearson: need equal lengths >= 2");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::invalid_argument("pearson: degenerate variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

double linear_fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("linear_fit_slope: need equal lengths >= 2");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("linear_fit_slope: zero variance in x");
    }
    return sxy / sxx;
}

} // namespace qwalk
