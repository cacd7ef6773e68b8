// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// Gaussian-process surrogate over encoded configurations with a Matern-5/2
// ARD kernel, a constant mean fixed at the target average, and expected
// improvement as the acquisition score. Targets are the observed losses at
// each configuration's efficient point, so the surrogate sees exactly one
// fidelity per configuration and stays a plain single-output GP.

#ifndef FASTBO_SURROGATE_HPP
#define FASTBO_SURROGATE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fastbo/errors.hpp"
#include "fastbo/numeric.hpp"
#include "fastbo/rng.hpp"
#include "fastbo/search_space.hpp"

namespace fastbo {

// Encoded inputs plus loss-oriented targets.
struct TrainingSet {
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;

  void check() const {
    if (inputs.size() != targets.size())
      throw ValidationError("training set: inputs and targets differ in length");
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i].size() != inputs[0].size())
        throw ValidationError("training set: input dimension mismatch at row " +
                              std::to_string(i));
      if (!std::isfinite(targets[i]))
        throw ValidationError("training set: non-finite target at row " + std::to_string(i));
    }
  }
};

struct GpHyperparameters {
  std::vector<double> lengthscales; // one per encoded dimension
  double signal_variance = 1.0;
  double noise_variance = 1e-6;
};

// Search bounds for the marginal-likelihood optimization.
struct GpBounds {
  double lengthscale_lo = 1e-3, lengthscale_hi = 1e3;
  double signal_lo = 1e-6, signal_hi = 1e3;
  double noise_lo = 1e-8, noise_hi = 1.0;
};

namespace detail {

inline double matern52(double d) {
  const double s = 2.2360679774997896 * d; // sqrt(5) * d
  return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

inline double kernel_value(const GpHyperparameters& hyp, const double* x, const double* z,
                           std::size_t dim) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double t = (x[k] - z[k]) / hyp.lengthscales[k];
    d2 += t * t;
  }
  return hyp.signal_variance * matern52(std::sqrt(d2));
}

}  // namespace detail

class Surrogate {
 public:
  // Fits the GP at fixed hyperparameters: constant mean = target average,
  // Cholesky factor of K + noise*I cached with jitter escalation
  // (1e-10, x10 per retry, up to 1e-2).
  static Surrogate fit(TrainingSet data, GpHyperparameters hyp) {
    data.check();
    const std::size_t n = data.inputs.size();
    if (n < 2) throw InsufficientData("surrogate needs >= 2 training points");
    if (hyp.lengthscales.size() != data.inputs[0].size())
      throw ValidationError("hyperparameters: lengthscale count != input dimension");
    for (double l : hyp.lengthscales)
      if (!(l > 0)) throw ValidationError("hyperparameters must be strictly positive");
    if (!(hyp.signal_variance > 0) || !(hyp.noise_variance > 0))
      throw ValidationError("hyperparameters must be strictly positive");

    Surrogate s;
    s.data_ = std::move(data);
    s.hyp_ = std::move(hyp);
    s.dim_ = s.data_.inputs[0].size();
    double sum = 0.0;
    for (double t : s.data_.targets) sum += t;
    s.mean_ = sum / static_cast<double>(n);

    Eigen::MatrixXd kmat(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = detail::kernel_value(s.hyp_, s.data_.inputs[i].data(),
                                              s.data_.inputs[j].data(), s.dim_);
        kmat(i, j) = v;
        kmat(j, i) = v;
      }

    double jitter = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt;
    for (;;) {
      Eigen::MatrixXd reg = kmat;
      reg.diagonal().array() += s.hyp_.noise_variance + jitter;
      llt.compute(reg);
      if (llt.info() == Eigen::Success) break;
      jitter = jitter == 0.0 ? 1e-10 : jitter * 10.0;
      if (jitter > 1e-2)
        throw NumericalFailure("kernel matrix not positive definite at max jitter 1e-2");
    }
    s.chol_ = llt.matrixL();

    Eigen::VectorXd centered(n);
    for (std::size_t i = 0; i < n; ++i) centered(i) = s.data_.targets[i] - s.mean_;
    s.alpha_ = s.chol_.triangularView<Eigen::Lower>().solve(centered);
    s.chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(s.alpha_);

    double log_det = 0.0;
    for (std::size_t i = 0; i < n; ++i) log_det += std::log(s.chol_(i, i));
    s.lml_ = -0.5 * centered.dot(s.alpha_) - log_det -
             0.5 * static_cast<double>(n) * std::log(2.0 * 3.14159265358979323846);
    return s;
  }

  // Standard GP posterior at a single encoded point; variance clamped at 0.
  std::pair<double, double> posterior(const std::vector<double>& x) const {
    if (x.size() != dim_)
      throw ValidationError("posterior: query dimension " + std::to_string(x.size()) +
                            " != encoded dimension " + std::to_string(dim_));
    const std::size_t n = data_.inputs.size();
    Eigen::VectorXd kstar(n);
    for (std::size_t i = 0; i < n; ++i)
      kstar(i) = detail::kernel_value(hyp_, x.data(), data_.inputs[i].data(), dim_);
    const double mean = mean_ + kstar.dot(alpha_);
    Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(kstar);
    const double var = hyp_.signal_variance - v.squaredNorm();
    return {mean, std::max(var, 0.0)};
  }

  double log_marginal_likelihood() const { return lml_; }
  double mean_constant() const { return mean_; }
  const GpHyperparameters& hyperparameters() const { return hyp_; }
  const TrainingSet& training_set() const { return data_; }
  std::size_t input_dim() const { return dim_; }

  double best_target() const {
    return *std::min_element(data_.targets.begin(), data_.targets.end());
  }

 private:
  TrainingSet data_;
  GpHyperparameters hyp_;
  std::size_t dim_ = 0;
  double mean_ = 0.0;
  double lml_ = 0.0;
  Eigen::MatrixXd chol_;  // lower Cholesky factor of K + noise*I
  Eigen::VectorXd alpha_; // (K + noise*I)^-1 (y - mean)
};

namespace detail {

// LML as a function of log-hyperparameters; -inf where the factorization
// fails so the optimizer just walks away from pathological corners.
inline double lml_at(const TrainingSet& data, const std::vector<double>& log_theta) {
  GpHyperparameters hyp;
  const std::size_t d = log_theta.size() - 2;
  hyp.lengthscales.resize(d);
  for (std::size_t k = 0; k < d; ++k) hyp.lengthscales[k] = std::exp(log_theta[k]);
  hyp.signal_variance = std::exp(log_theta[d]);
  hyp.noise_variance = std::exp(log_theta[d + 1]);
  try {
    return Surrogate::fit(data, hyp).log_marginal_likelihood();
  } catch (const NumericalFailure&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace detail

// Fits kernel hyperparameters by maximizing the log marginal likelihood:
// 8 random restarts plus one moment-based start, each refined by
// coordinate-wise search in log space (coarse probe of the bounded range,
// then golden-section between the best probe's neighbours). Derivative-free
// and deterministic: restarts come from a fixed internal seed, so equal data
// always produce an identical surrogate.
inline Surrogate fit_surrogate(const TrainingSet& data, const GpBounds& bounds = {},
                               std::uint64_t restart_seed = 0xFA57B0) {
  data.check();
  const std::size_t n = data.inputs.size();
  if (n < 2) throw InsufficientData("fit_surrogate needs >= 2 training points");
  const std::size_t d = data.inputs[0].size();

  std::vector<double> lo(d + 2), hi(d + 2);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = std::log(bounds.lengthscale_lo);
    hi[k] = std::log(bounds.lengthscale_hi);
  }
  lo[d] = std::log(bounds.signal_lo);
  hi[d] = std::log(bounds.signal_hi);
  lo[d + 1] = std::log(bounds.noise_lo);
  hi[d + 1] = std::log(bounds.noise_hi);

  const auto clamp_to = [](double v, double a, double b) { return std::min(std::max(v, a), b); };

  // Moment-based start: lengthscale ~ spread per dimension, signal ~ target
  // variance, small noise.
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> s(d + 2);
    double tmean = 0, tvar = 0;
    for (double t : data.targets) tmean += t;
    tmean /= static_cast<double>(n);
    for (double t : data.targets) tvar += (t - tmean) * (t - tmean);
    tvar /= static_cast<double>(n);
    for (std::size_t k = 0; k < d; ++k) {
      double xmin = data.inputs[0][k], xmax = data.inputs[0][k];
      for (const auto& row : data.inputs) {
        xmin = std::min(xmin, row[k]);
        xmax = std::max(xmax, row[k]);
      }
      const double spread = std::max(xmax - xmin, 1e-3);
      s[k] = clamp_to(std::log(0.5 * spread), lo[k], hi[k]);
    }
    s[d] = clamp_to(std::log(std::max(tvar, 1e-6)), lo[d], hi[d]);
    s[d + 1] = clamp_to(std::log(std::max(tvar * 1e-4, 1e-8)), lo[d + 1], hi[d + 1]);
    starts.push_back(std::move(s));
  }
  Rng rng(restart_seed);
  for (int rstart = 0; rstart < 8; ++rstart) {
    std::vector<double> s(d + 2);
    for (std::size_t k = 0; k < d + 2; ++k) s[k] = rng.uniform(lo[k], hi[k]);
    starts.push_back(std::move(s));
  }

  std::vector<double> best_theta;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (auto& theta : starts) {
    double cur = detail::lml_at(data, theta);
    for (int sweep = 0; sweep < 6; ++sweep) {
      const double sweep_start = cur;
      for (std::size_t k = 0; k < d + 2; ++k) {
        // Coarse probe across the whole admissible range for this coordinate.
        constexpr int kProbes = 9;
        double probe_best = theta[k];
        double probe_val = cur;
        const double step = (hi[k] - lo[k]) / (kProbes - 1);
        for (int p = 0; p < kProbes; ++p) {
          const double cand = lo[k] + step * p;
          theta[k] = cand;
          const double v = detail::lml_at(data, theta);
          if (v > probe_val) {
            probe_val = v;
            probe_best = cand;
          }
        }
        const double glo = std::max(lo[k], probe_best - step);
        const double ghi = std::min(hi[k], probe_best + step);
        const double refined = detail::golden_section(
            [&](double t) {
              theta[k] = t;
              return -detail::lml_at(data, theta);
            },
            glo, ghi, 40, 1e-5);
        theta[k] = refined;
        const double v = detail::lml_at(data, theta);
        if (v >= probe_val) {
          cur = v;
        } else {
          theta[k] = probe_best;
          cur = probe_val;
        }
      }
      if (cur - sweep_start <= 1e-9 * std::max(std::abs(sweep_start), 1.0)) break;
    }
    if (cur > best_lml) {
      best_lml = cur;
      best_theta = theta;
    }
  }
  if (!std::isfinite(best_lml))
    throw NumericalFailure("marginal-likelihood optimization failed on all starts");

  GpHyperparameters hyp;
  hyp.lengthscales.resize(d);
  for (std::size_t k = 0; k < d; ++k) hyp.lengthscales[k] = std::exp(best_theta[k]);
  hyp.signal_variance = std::exp(best_theta[d]);
  hyp.noise_variance = std::exp(best_theta[d + 1]);
  return Surrogate::fit(data, hyp);
}

// Expected improvement for minimization. With sigma = 0 this degenerates to
// max(best - mean, 0).
inline double expected_improvement(double mean, double variance, double best) {
  if (variance < 0) throw ValidationError("expected_improvement: negative variance");
  const double sigma = std::sqrt(variance);
  const double gap = best - mean;
  if (sigma == 0.0) return std::max(gap, 0.0);
  const double z = gap / sigma;
  const double pdf = std::exp(-0.5 * z * z) / 2.5066282746310005; // sqrt(2*pi)
  const double cdf = 0.5 * std::erfc(-z / 1.4142135623730951);
  const double ei = gap * cdf + sigma * pdf;
  return std::max(ei, 0.0);
}

// Draws n_candidates configurations from `sampler`, scores each by expected
// improvement against the best training target, and returns the maximizer.
// Ties break toward the lowest candidate index.
template <typename Sampler>
Configuration suggest_from(const Surrogate& s, const SearchSpace& space, Sampler&& sampler,
                           Rng& rng, int n_candidates) {
  if (n_candidates < 1) throw ValidationError("suggest: n_candidates must be positive");
  const double best = s.best_target();
  Configuration chosen;
  double chosen_ei = -1.0;
  for (int i = 0; i < n_candidates; ++i) {
    Configuration cand = sampler(rng);
    const auto [mu, var] = s.posterior(space.encode(cand));
    const double ei = expected_improvement(mu, var, best);
    if (ei > chosen_ei) {
      chosen_ei = ei;
      chosen = std::move(cand);
    }
  }
  return chosen;
}

inline Configuration suggest(const Surrogate& s, const SearchSpace& space, Rng& rng,
                             int n_candidates = 512) {
  return suggest_from(
      s, space, [&space](Rng& r) { return space.sample(r); }, rng, n_candidates);
}

}  // namespace fastbo

#endif  // FASTBO_SURROGATE_HPP
