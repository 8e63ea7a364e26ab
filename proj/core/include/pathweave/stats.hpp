#pragma once

#include <cstddef>
#include <vector>

namespace pathweave {

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value c(alpha) * sqrt((m+n)/(m n)) with
// c(alpha) = sqrt(-ln(alpha/2) / 2).
double ks_two_sample_critical(std::size_t m, std::size_t n, double alpha);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
  double halfwidth() const { return (hi - lo) / 2.0; }
};

// 95% by default (z = 1.959964).
WilsonInterval wilson_interval(double successes, double trials, double z = 1.959964);

// Pool-adjacent-violators fit of a nondecreasing sequence (weighted least
// squares). Used on delta-trend columns sorted by increasing delta.
std::vector<double> isotonic_nondecreasing(const std::vector<double>& y,
                                           const std::vector<double>& weight);

double mean(const std::vector<double>& v);
double stddev(const std::vector<double>& v);

}  // namespace pathweave
