// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles for the test suites. Everything here is deliberately
// written from the definitions, without reusing the library's solution paths:
// the fidelity-point scans evaluate the defining conditions over integer
// grids, the GP oracle solves the dense system by hand-rolled Gaussian
// elimination instead of a Cholesky factorization, and expected improvement
// is estimated by Monte Carlo.

#ifndef FASTBO_TESTS_ORACLES_HPP
#define FASTBO_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fastbo/learning_curve.hpp"
#include "fastbo/rng.hpp"

namespace oracle {

// Kolmogorov-Smirnov statistic of a sample against U(0,1).
inline double ks_statistic_uniform01(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = std::min(std::max(xs[i], 0.0), 1.0);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

// Critical value at alpha = 0.01 for large n.
inline double ks_critical_001(std::size_t n) {
  return 1.628 / std::sqrt(static_cast<double>(n));
}

// min{ r in [r_min, r_max] : C(r) - C(2r) < delta1 }, else r_max.
inline int efficient_point_scan(const fastbo::CurveModel& m, double delta1, int r_min,
                                int r_max) {
  for (int r = r_min; r <= r_max; ++r)
    if (m.predict(static_cast<double>(r)) - m.predict(2.0 * r) < delta1) return r;
  return r_max;
}

// min{ r in [floor_r, r_max] : for all integer r' in (r, r_sup],
// |C(r') - C(r)| < delta2 }, else r_max. Uses suffix extrema of the curve so
// the supremum needs no monotonicity assumption.
inline int saturation_point_scan(const fastbo::CurveModel& m, double delta2, int floor_r,
                                 int r_max, long r_sup = 1000000) {
  std::vector<double> values(static_cast<std::size_t>(r_sup) + 1);
  for (long r = 1; r <= r_sup; ++r)
    values[static_cast<std::size_t>(r)] = m.predict(static_cast<double>(r));
  std::vector<double> suffix_max(values.size()), suffix_min(values.size());
  suffix_max[values.size() - 1] = values.back();
  suffix_min[values.size() - 1] = values.back();
  for (std::size_t r = values.size() - 2; r >= 1; --r) {
    suffix_max[r] = std::max(values[r], suffix_max[r + 1]);
    suffix_min[r] = std::min(values[r], suffix_min[r + 1]);
  }
  for (int r = floor_r; r <= r_max; ++r) {
    if (static_cast<long>(r) + 1 > r_sup) return r; // nothing beyond to differ
    const double hi = suffix_max[static_cast<std::size_t>(r) + 1];
    const double lo = suffix_min[static_cast<std::size_t>(r) + 1];
    const double v = values[static_cast<std::size_t>(r)];
    if (std::max(hi - v, v - lo) < delta2) return r;
  }
  return r_max;
}

// Dense linear solve by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    if (a[col][col] == 0.0) throw std::runtime_error("singular system");
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

struct GpOracleHyp {
  std::vector<double> lengthscales;
  double signal_variance = 1.0;
  double noise_variance = 1e-6;
};

inline double matern52_direct(const GpOracleHyp& hyp, const std::vector<double>& x,
                              const std::vector<double>& z) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = (x[k] - z[k]) / hyp.lengthscales[k];
    d2 += t * t;
  }
  const double d = std::sqrt(d2);
  const double s = std::sqrt(5.0) * d;
  return hyp.signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

// GP posterior at x via two dense direct solves.
inline std::pair<double, double> gp_posterior_direct(
    const std::vector<std::vector<double>>& inputs, const std::vector<double>& targets,
    const GpOracleHyp& hyp, const std::vector<double>& x) {
  const std::size_t n = inputs.size();
  double mean = 0.0;
  for (double t : targets) mean += t;
  mean /= static_cast<double>(n);

  std::vector<std::vector<double>> kmat(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      kmat[i][j] = matern52_direct(hyp, inputs[i], inputs[j]);
      if (i == j) kmat[i][j] += hyp.noise_variance;
    }
  std::vector<double> kstar(n), centered(n);
  for (std::size_t i = 0; i < n; ++i) {
    kstar[i] = matern52_direct(hyp, inputs[i], x);
    centered[i] = targets[i] - mean;
  }
  const std::vector<double> alpha = solve_dense(kmat, centered);
  const std::vector<double> beta = solve_dense(kmat, kstar);
  double mu = mean, quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += kstar[i] * alpha[i];
    quad += kstar[i] * beta[i];
  }
  return {mu, std::max(hyp.signal_variance - quad, 0.0)};
}

// Monte-Carlo expected improvement for minimization.
inline double ei_monte_carlo(double mean, double sigma, double best, long samples,
                             std::uint64_t seed) {
  fastbo::Rng rng(seed);
  double acc = 0.0;
  for (long i = 0; i < samples; ++i)
    acc += std::max(best - (mean + sigma * rng.normal()), 0.0);
  return acc / static_cast<double>(samples);
}

// Exact E[min of k uniform picks with replacement] over a finite value set.
inline double expected_min_of_picks(std::vector<double> values, int k) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double expectation = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double p_geq_j = std::pow((n - static_cast<double>(j)) / n, k);
    const double p_geq_j1 = std::pow((n - static_cast<double>(j) - 1.0) / n, k);
    expectation += values[j] * (p_geq_j - p_geq_j1);
  }
  return expectation;
}

}  // namespace oracle

#endif  // FASTBO_TESTS_ORACLES_HPP
