// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_OBJECTIVE_HPP
#define FASTBO_OBJECTIVE_HPP

#include "fastbo/rng.hpp"
#include "fastbo/search_space.hpp"

namespace fastbo {

// Resource-consuming evaluator. `value_at` returns the loss-oriented metric
// after `resource` cumulative units and must be consistent within one run
// (same inputs, same output). Costs are charged per step by the caller, which
// tracks how far each trial has already been evaluated; pausing and resuming
// therefore never double-charges.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual double value_at(const Configuration& config, int resource) const = 0;

  // Incremental cost of advancing from resource-1 to resource.
  virtual double step_cost(const Configuration& /*config*/, int /*resource*/) const {
    return 1.0;
  }

  // Proposal sampling. Finite (tabular) objectives override this to sample
  // their own rows; function objectives fall through to the space.
  virtual Configuration sample_configuration(const SearchSpace& space, Rng& rng) const {
    return space.sample(rng);
  }
};

}  // namespace fastbo

#endif  // FASTBO_OBJECTIVE_HPP
