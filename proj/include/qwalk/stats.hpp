// stats.hpp
// Small statistics helpers shared by the matching scatter and the ensemble
// experiments: plateau time-averages, Pearson correlation, least-squares
// slope.

#pragma once

#include <utility>
#include <vector>

namespace qwalk {

// Arithmetic mean and population standard deviation of series[t0..t1]
// inclusive. Requires 0 <= t0 <= t1 < series.size().
std::pair<double, double> plateau_average(const std::vector<double>& series, int t0, int t1);

// Pearson correlation coefficient; requires equal lengths >= 2 and nonzero
// variance on both sides.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Slope of the ordinary least-squares line y = a + b*x; requires >= 2
// points and nonzero variance in xs.
double linear_fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace qwalk
