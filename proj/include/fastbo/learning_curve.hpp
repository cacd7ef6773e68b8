// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// Parametric learning-curve models over per-fidelity observations, and the
// two fidelity landmarks derived from a fitted curve:
//
//   efficient point  e = min{ r : C(r) - C(2r) < delta1 }
//     -- doubling the resources past e improves the loss by less than delta1,
//        so e is the cheapest fidelity whose observation is worth feeding to
//        a surrogate model.
//   saturation point s = min{ r : sup_{r' > r} |C(r') - C(r)| < delta2 }
//     -- past s the curve is flat to within delta2, so s approximates the
//        final fidelity.
//
// All metrics are losses (lower is better); accuracy-style metrics are
// negated at benchmark ingestion. The fitted families are constrained to be
// monotone non-increasing, which makes the supremum above equal to the
// distance from the curve's asymptote.

#ifndef FASTBO_LEARNING_CURVE_HPP
#define FASTBO_LEARNING_CURVE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fastbo/errors.hpp"
#include "fastbo/numeric.hpp"

namespace fastbo {

// One performance measurement of a configuration at a resource level.
struct Observation {
  int resource = 1;   // fidelity level r, in resource units (e.g. epochs)
  double value = 0.0; // loss-oriented metric
};

enum class CurveFamily { kPow3, kLog2, kExp3 };

inline const char* family_name(CurveFamily f) {
  switch (f) {
    case CurveFamily::kPow3: return "pow3";
    case CurveFamily::kLog2: return "log2";
    case CurveFamily::kExp3: return "exp3";
  }
  return "?";
}

// Fitted curve. Closed forms, with a >= 0 and b > 0 so every family is
// monotone non-increasing on [1, inf):
//   pow3: c + a * r^-b
//   log2: max(c - a * log(r+1), 0)   (b unused)
//   exp3: c + a * exp(-b * r)
struct CurveModel {
  CurveFamily family = CurveFamily::kPow3;
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double residual = 0.0; // RMS fit error on the training observations
  int r_fit_max = 1;     // largest resource used in fitting

  double predict(double r) const {
    switch (family) {
      case CurveFamily::kPow3: return c + a * std::pow(r, -b);
      case CurveFamily::kLog2: return std::max(c - a * std::log(r + 1.0), 0.0);
      case CurveFamily::kExp3: return c + a * std::exp(-b * r);
    }
    return c;
  }

  // Limit of predict(r) as r -> inf; exists for all three families.
  double asymptote() const {
    switch (family) {
      case CurveFamily::kPow3: return c;
      case CurveFamily::kLog2: return a > 0.0 ? 0.0 : std::max(c, 0.0);
      case CurveFamily::kExp3: return c;
    }
    return c;
  }

  // C(r) - C(2r), in forms where the offset c cancels algebraically instead
  // of numerically. Subtracting predict values loses the low bits of the
  // gain, which is exactly what the threshold comparisons are about.
  double doubling_gain(double r) const {
    switch (family) {
      case CurveFamily::kPow3:
        return a * std::pow(r, -b) * (1.0 - std::pow(2.0, -b));
      case CurveFamily::kLog2: {
        const double near = c - a * std::log(r + 1.0);
        const double far = c - a * std::log(2.0 * r + 1.0);
        if (near <= 0.0) return 0.0;
        if (far <= 0.0) return near;
        return a * std::log((2.0 * r + 1.0) / (r + 1.0));
      }
      case CurveFamily::kExp3: {
        const double decay = std::exp(-b * r);
        return a * decay * (1.0 - decay);
      }
    }
    return 0.0;
  }

  // C(r) - asymptote, likewise cancellation-free.
  double asymptote_gap(double r) const {
    switch (family) {
      case CurveFamily::kPow3: return a * std::pow(r, -b);
      case CurveFamily::kLog2: return predict(r) - asymptote();
      case CurveFamily::kExp3: return a * std::exp(-b * r);
    }
    return 0.0;
  }
};

namespace detail {

// Least squares for y ~ c + a * phi with the sign of a constrained, solved by
// the 2x2 normal equations. Returns {a, c, sse}.
struct SeparableFit {
  double a = 0.0;
  double c = 0.0;
  double sse = 0.0;
};

inline SeparableFit fit_linear_in_basis(const std::vector<double>& phi,
                                        const std::vector<double>& y,
                                        bool non_negative_a) {
  const std::size_t n = phi.size();
  double sp = 0, spp = 0, sy = 0, spy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sp += phi[i];
    spp += phi[i] * phi[i];
    sy += y[i];
    spy += phi[i] * y[i];
  }
  const double det = static_cast<double>(n) * spp - sp * sp;
  SeparableFit f;
  if (det > 1e-14 * (static_cast<double>(n) * spp + sp * sp + 1e-300)) {
    f.a = (static_cast<double>(n) * spy - sp * sy) / det;
    f.c = (sy - f.a * sp) / static_cast<double>(n);
  }
  if ((non_negative_a && f.a < 0.0) || det <= 0.0 || !std::isfinite(f.a) ||
      !std::isfinite(f.c)) {
    f.a = 0.0;
    f.c = sy / static_cast<double>(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double e = f.c + f.a * phi[i] - y[i];
    f.sse += e * e;
  }
  return f;
}

}  // namespace detail

// Fits all three families by separable nonlinear least squares (a grid over
// the nonlinear parameter, a closed-form solve for the linear ones, then a
// golden-section polish) and returns the family with the smallest RMS
// residual. Requires >= 4 observations at >= 3 distinct resource levels.
// All-identical values yield the constant pow3 model with a = 0 -- that case
// is well defined, not an error.
inline CurveModel fit_curve(const std::vector<Observation>& observations) {
  std::vector<Observation> obs = observations;
  std::sort(obs.begin(), obs.end(),
            [](const Observation& l, const Observation& r) { return l.resource < r.resource; });
  for (const auto& o : obs) {
    if (o.resource < 1) throw ValidationError("observation resource must be >= 1");
    if (!std::isfinite(o.value)) throw ValidationError("observation value must be finite");
  }
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < obs.size(); ++i)
    if (i == 0 || obs[i].resource != obs[i - 1].resource) ++distinct;
  if (obs.size() < 4 || distinct < 3)
    throw InsufficientData("fit_curve needs >= 4 observations at >= 3 distinct resources, got " +
                           std::to_string(obs.size()) + " at " + std::to_string(distinct));

  const std::size_t n = obs.size();
  const int r_fit_max = obs.back().resource;
  std::vector<double> r(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<double>(obs[i].resource);
    y[i] = obs[i].value;
  }

  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  if (*ymin == *ymax) {
    CurveModel m;
    m.family = CurveFamily::kPow3;
    m.a = 0.0;
    m.b = 1.0;
    m.c = *ymin;
    m.residual = 0.0;
    m.r_fit_max = r_fit_max;
    return m;
  }

  const auto rms = [n](double sse) { return std::sqrt(sse / static_cast<double>(n)); };

  // pow3 and exp3: 32 log-spaced b values in [0.01, 10], then a golden-section
  // polish of b between the grid neighbours of the best cell.
  const auto fit_grid_family = [&](CurveFamily fam) {
    constexpr int kGrid = 32;
    const double b_lo = 0.01, b_hi = 10.0;
    std::vector<double> phi(n);
    const auto sse_at = [&](double b) {
      for (std::size_t i = 0; i < n; ++i)
        phi[i] = fam == CurveFamily::kPow3 ? std::pow(r[i], -b) : std::exp(-b * r[i]);
      return detail::fit_linear_in_basis(phi, y, /*non_negative_a=*/true).sse;
    };
    int best_i = 0;
    double best_sse = std::numeric_limits<double>::infinity();
    std::array<double, kGrid> grid{};
    for (int i = 0; i < kGrid; ++i) {
      grid[i] = b_lo * std::pow(b_hi / b_lo, static_cast<double>(i) / (kGrid - 1));
      const double s = sse_at(grid[i]);
      if (s < best_sse) {
        best_sse = s;
        best_i = i;
      }
    }
    const double lo = grid[std::max(0, best_i - 1)];
    const double hi = grid[std::min(kGrid - 1, best_i + 1)];
    const double b = detail::golden_section(sse_at, lo, hi, 200, 1e-12);
    for (std::size_t i = 0; i < n; ++i)
      phi[i] = fam == CurveFamily::kPow3 ? std::pow(r[i], -b) : std::exp(-b * r[i]);
    const auto lin = detail::fit_linear_in_basis(phi, y, true);
    CurveModel m;
    m.family = fam;
    m.a = lin.a;
    m.b = b;
    m.c = lin.c;
    m.residual = rms(lin.sse);
    m.r_fit_max = r_fit_max;
    return m;
  };

  // log2 has no nonlinear parameter; the linear solve is exact away from the
  // truncation, and a short coordinate polish handles fits that graze it.
  const auto fit_log2 = [&]() {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = -std::log(r[i] + 1.0);
    const auto lin = detail::fit_linear_in_basis(u, y, true);
    CurveModel m;
    m.family = CurveFamily::kLog2;
    m.a = lin.a;
    m.b = 0.0;
    m.c = lin.c;
    const auto sse_of = [&](double a, double c) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double e = std::max(c - a * std::log(r[i] + 1.0), 0.0) - y[i];
        s += e * e;
      }
      return s;
    };
    double sse = sse_of(m.a, m.c);
    bool truncated = false;
    for (std::size_t i = 0; i < n && !truncated; ++i)
      truncated = m.c - m.a * std::log(r[i] + 1.0) < 0.0;
    if (truncated) {
      double prev = sse;
      for (int sweep = 0; sweep < 200; ++sweep) {
        m.a = detail::golden_section([&](double a) { return sse_of(a, m.c); }, 0.0,
                                     2.0 * m.a + 1.0, 64, 1e-12);
        m.c = detail::golden_section([&](double c) { return sse_of(m.a, c); }, *ymin - 1.0,
                                     *ymax + 1.0, 64, 1e-12);
        sse = sse_of(m.a, m.c);
        if (std::abs(prev - sse) <= 1e-10 * std::max(prev, 1e-30)) break;
        prev = sse;
      }
    }
    m.residual = rms(sse);
    m.r_fit_max = r_fit_max;
    return m;
  };

  const CurveModel candidates[3] = {fit_grid_family(CurveFamily::kPow3), fit_log2(),
                                    fit_grid_family(CurveFamily::kExp3)};
  const CurveModel* best = &candidates[0];
  for (const auto& m : candidates)
    if (m.residual < best->residual) best = &m;
  return *best;
}

inline double predict(const CurveModel& model, double r) { return model.predict(r); }

// Definition-driven landmarks. Both scan the integer grid; the sets in the
// definitions are not interval-shaped for every family (the exp3 doubling
// gain is not monotone in r), so the scan *is* the specification. When no r
// in range satisfies the condition the result clamps to r_max.
struct FidelityPoints {
  int efficient = 1;
  int saturation = 1;
};

inline int efficient_point(const CurveModel& model, double delta1, int r_min, int r_max) {
  for (int r = r_min; r <= r_max; ++r) {
    if (model.doubling_gain(r) < delta1) return r;
  }
  return r_max;
}

inline int saturation_point(const CurveModel& model, double delta2, int floor_r, int r_max) {
  for (int r = floor_r; r <= r_max; ++r) {
    // Monotone non-increasing curve: sup_{r'>r} |C(r') - C(r)| = C(r) - limit.
    if (model.asymptote_gap(r) < delta2) return r;
  }
  return r_max;
}

}  // namespace fastbo

#endif  // FASTBO_LEARNING_CURVE_HPP
