// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_TESTS_GENERATORS_HPP
#define FASTBO_TESTS_GENERATORS_HPP

#include <vector>

#include "fastbo/learning_curve.hpp"
#include "fastbo/rng.hpp"

namespace testgen {

// Random monotone curve model across all three families. The pow3 b range
// starts at 1.2 so that the curve's value at r' = 1e6 sits within 1e-7 of its
// asymptote: the scan oracle truncates its supremum grid there, and the
// crossing point must not shift by an integer step relative to the
// closed-form implementation.
inline fastbo::CurveModel random_monotone_model(fastbo::Rng& rng) {
  fastbo::CurveModel m;
  switch (rng.uniform_int(0, 2)) {
    case 0:
      m.family = fastbo::CurveFamily::kPow3;
      m.a = rng.uniform(0.05, 2.0);
      m.b = rng.uniform(1.2, 4.0);
      m.c = rng.uniform(0.0, 1.0);
      break;
    case 1:
      m.family = fastbo::CurveFamily::kLog2;
      m.a = rng.uniform(0.01, 0.3);
      m.b = 0.0;
      m.c = rng.uniform(0.5, 1.5);
      break;
    default:
      m.family = fastbo::CurveFamily::kExp3;
      m.a = rng.uniform(0.05, 2.0);
      m.b = rng.uniform(0.05, 2.0);
      m.c = rng.uniform(0.0, 1.0);
      break;
  }
  return m;
}

// In-family ground-truth model whose noiseless samples at r = 1..n_points are
// identifiable: log2 instances stay above the truncation floor over the
// sampled range.
inline fastbo::CurveModel random_recovery_model(fastbo::CurveFamily family,
                                                fastbo::Rng& rng) {
  fastbo::CurveModel m;
  m.family = family;
  switch (family) {
    case fastbo::CurveFamily::kPow3:
      m.a = rng.uniform(0.1, 2.0);
      m.b = rng.uniform(0.1, 3.0);
      m.c = rng.uniform(0.01, 1.0);
      break;
    case fastbo::CurveFamily::kLog2:
      m.c = rng.uniform(0.5, 1.5);
      m.a = rng.uniform(0.02, 0.9 * m.c / 2.3979); // ln(11)
      m.b = 0.0;
      break;
    case fastbo::CurveFamily::kExp3:
      m.a = rng.uniform(0.1, 2.0);
      m.b = rng.uniform(0.05, 1.5);
      m.c = rng.uniform(0.01, 1.0);
      break;
  }
  return m;
}

inline std::vector<fastbo::Observation> noiseless_samples(const fastbo::CurveModel& m,
                                                          int n_points) {
  std::vector<fastbo::Observation> obs;
  for (int r = 1; r <= n_points; ++r)
    obs.push_back({r, m.predict(static_cast<double>(r))});
  return obs;
}

}  // namespace testgen

#endif  // FASTBO_TESTS_GENERATORS_HPP
