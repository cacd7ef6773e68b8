// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference optimizers under the same objective/budget/History contracts as
// the adaptive scheduler: random search, full-fidelity BO, synchronous
// successive halving, and Hyperband.

#ifndef FASTBO_BASELINES_HPP
#define FASTBO_BASELINES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fastbo/errors.hpp"
#include "fastbo/history.hpp"
#include "fastbo/objective.hpp"
#include "fastbo/scheduler.hpp"
#include "fastbo/search_space.hpp"
#include "fastbo/surrogate.hpp"

namespace fastbo {

struct ShaConfig {
  int eta = 3;
  int r_min = 1;
  int r_max = 81;

  void check() const {
    if (eta < 2) throw ValidationError("sha: eta must be >= 2");
    if (r_min < 1) throw ValidationError("sha: r_min must be >= 1");
    if (r_max < r_min * eta)
      throw ValidationError("sha: r_max must be >= r_min * eta (at least two rungs)");
  }
};

// Samples uniformly and evaluates every configuration to full fidelity.
inline RunResult random_search(const SearchSpace& space, const Objective& objective,
                               int r_max, double budget, std::uint64_t seed) {
  if (r_max < 1) throw ValidationError("r_max must be >= 1");
  if (budget < static_cast<double>(r_max))
    throw BudgetTooSmall("budget " + std::to_string(budget) + " < r_max " +
                         std::to_string(r_max) + "; no full evaluation fits");
  HistoryRecorder recorder;
  Rng rng(seed);
  std::vector<Trial> trials;
  while (recorder.elapsed() < budget) {
    Trial t;
    t.id = static_cast<int>(trials.size());
    t.config = objective.sample_configuration(space, rng);
    bool full = true;
    for (int r = 1; r <= r_max; ++r) {
      if (!detail::evaluate_trial_step(recorder, objective, t, r, budget)) {
        full = false;
        break;
      }
    }
    if (t.stage != TrialStage::kTerminatedEarly)
      t.stage = full ? TrialStage::kCompleted : TrialStage::kPaused;
    trials.push_back(std::move(t));
  }
  return {recorder.finish(), std::move(trials)};
}

// Standard single-fidelity BO: every label is taken at r_max. Identical to
// the adaptive run with fidelity points forced to (r_max, r_max), warm-up
// termination and post-processing disabled -- the test suite holds the two
// implementations against each other.
inline RunResult bo_full(const SearchSpace& space, const Objective& objective, int r_max,
                         double budget, std::uint64_t seed, int n_init = 5,
                         int n_candidates = 512) {
  if (r_max < 1) throw ValidationError("r_max must be >= 1");
  if (n_init < 1) throw ValidationError("n_init must be >= 1");
  if (n_candidates < 1) throw ValidationError("n_candidates must be >= 1");
  if (budget < static_cast<double>(r_max))
    throw BudgetTooSmall("budget " + std::to_string(budget) + " < r_max " +
                         std::to_string(r_max) + "; no full evaluation fits");
  HistoryRecorder recorder;
  Rng rng(seed);
  std::vector<Trial> trials;
  std::vector<std::pair<Configuration, double>> labeled;
  while (recorder.elapsed() < budget) {
    Trial t;
    t.id = static_cast<int>(trials.size());
    if (trials.size() < static_cast<std::size_t>(n_init) || labeled.size() < 2) {
      t.config = objective.sample_configuration(space, rng);
    } else {
      TrainingSet data;
      for (const auto& [config, label] : labeled) {
        data.inputs.push_back(space.encode(config));
        data.targets.push_back(label);
      }
      const Surrogate s = fit_surrogate(data);
      t.config = suggest_from(
          s, space,
          [&](Rng& r) { return objective.sample_configuration(space, r); }, rng,
          n_candidates);
    }
    bool full = true;
    for (int r = 1; r <= r_max; ++r) {
      if (!detail::evaluate_trial_step(recorder, objective, t, r, budget)) {
        full = false;
        break;
      }
    }
    if (t.stage != TrialStage::kTerminatedEarly) {
      if (full) {
        t.label = t.observations.back().value;
        labeled.emplace_back(t.config, *t.label);
        t.stage = TrialStage::kCompleted;
      } else {
        t.stage = TrialStage::kPaused;
      }
    }
    trials.push_back(std::move(t));
  }
  return {recorder.finish(), std::move(trials)};
}

namespace detail {

// One synchronous SHA bracket on a shared recorder. Rung l holds
// max(1, floor(n / eta^l)) survivors at resource r_init * eta^l; promotion
// keeps the lowest observed losses, ties broken by lower trial id. A single
// starting configuration has nothing to halve and goes straight to r_max.
inline void sha_bracket(const SearchSpace& space, const Objective& objective, int eta,
                        int r_init, int r_max, int n, Rng& rng, HistoryRecorder& recorder,
                        std::vector<Trial>& trials, double cap) {
  std::vector<int> members;
  for (int i = 0; i < n; ++i) {
    Trial t;
    t.id = static_cast<int>(trials.size());
    t.config = objective.sample_configuration(space, rng);
    t.stage = TrialStage::kWarmUp;
    members.push_back(t.id);
    trials.push_back(std::move(t));
  }

  const auto advance_to = [&](Trial& t, int resource) {
    for (int r = t.max_resource() + 1; r <= resource; ++r)
      if (!evaluate_trial_step(recorder, objective, t, r, cap)) return false;
    return true;
  };

  if (n == 1) {
    Trial& t = trials[static_cast<std::size_t>(members[0])];
    if (advance_to(t, r_max)) t.stage = TrialStage::kCompleted;
    return;
  }

  long resource = r_init;
  long eta_pow = 1;
  for (int rung = 0; resource <= r_max; ++rung, resource *= eta, eta_pow *= eta) {
    const int size = static_cast<int>(std::max(1L, static_cast<long>(n) / eta_pow));
    if (rung > 0) {
      // Promote the best `size` finishers of the previous rung.
      std::vector<int> finishers;
      for (int id : members)
        if (trials[static_cast<std::size_t>(id)].max_resource() >=
            static_cast<int>(resource / eta))
          finishers.push_back(id);
      std::sort(finishers.begin(), finishers.end(), [&](int a, int b) {
        const double va = trials[static_cast<std::size_t>(a)].observations.back().value;
        const double vb = trials[static_cast<std::size_t>(b)].observations.back().value;
        return va != vb ? va < vb : a < b;
      });
      if (finishers.size() > static_cast<std::size_t>(size)) finishers.resize(size);
      for (int id : members)
        if (std::find(finishers.begin(), finishers.end(), id) == finishers.end() &&
            trials[static_cast<std::size_t>(id)].stage == TrialStage::kWarmUp)
          trials[static_cast<std::size_t>(id)].stage = TrialStage::kPaused;
      members = std::move(finishers);
    }
    const bool last_rung = resource * eta > r_max;
    for (int id : members) {
      if (recorder.elapsed() >= cap) return;
      Trial& t = trials[static_cast<std::size_t>(id)];
      if (advance_to(t, static_cast<int>(resource)) && last_rung)
        t.stage = TrialStage::kCompleted;
    }
  }
}

}  // namespace detail

// Synchronous successive halving over n freshly sampled configurations.
inline RunResult successive_halving(const SearchSpace& space, const Objective& objective,
                                    const ShaConfig& sha, int n, std::uint64_t seed) {
  sha.check();
  if (n < 1) throw ValidationError("sha: n must be >= 1");
  HistoryRecorder recorder;
  Rng rng(seed);
  std::vector<Trial> trials;
  detail::sha_bracket(space, objective, sha.eta, sha.r_min, sha.r_max, n, rng, recorder,
                      trials, std::numeric_limits<double>::infinity());
  return {recorder.finish(), std::move(trials)};
}

// Number of configurations opening Hyperband bracket s:
// ceil((s_max + 1) / (s + 1) * eta^s), computed in exact integer arithmetic.
inline int hyperband_bracket_size(int s_max, int s, int eta) {
  long pow_eta = 1;
  for (int i = 0; i < s; ++i) pow_eta *= eta;
  const long numer = static_cast<long>(s_max + 1) * pow_eta;
  return static_cast<int>((numer + s) / (s + 1));
}

// Initial resource of Hyperband bracket s: r_max * eta^-s, floored to >= r_min.
inline int hyperband_bracket_resource(int r_max, int r_min, int s, int eta) {
  long pow_eta = 1;
  for (int i = 0; i < s; ++i) pow_eta *= eta;
  return static_cast<int>(
      std::max(static_cast<long>(r_min), static_cast<long>(r_max) / pow_eta));
}

// Standard bracket schedule: s in {s_max, ..., 0} with
// s_max = floor(log_eta(r_max / r_min)); brackets repeat cyclically until the
// budget is exhausted. Unlike plain SHA, a single rung level is legal here:
// r_max = r_min gives s_max = 0 and the schedule degenerates to full-fidelity
// random search.
inline RunResult hyperband(const SearchSpace& space, const Objective& objective,
                           const ShaConfig& sha, double budget, std::uint64_t seed) {
  if (sha.eta < 2) throw ValidationError("sha: eta must be >= 2");
  if (sha.r_min < 1 || sha.r_max < sha.r_min)
    throw ValidationError("sha: need 1 <= r_min <= r_max");
  if (!(budget > 0.0)) throw ValidationError("hyperband: budget must be > 0");
  int s_max = 0;
  for (long r = sha.r_min; r * sha.eta <= sha.r_max; r *= sha.eta) ++s_max;
  HistoryRecorder recorder;
  Rng rng(seed);
  std::vector<Trial> trials;
  while (recorder.elapsed() < budget) {
    for (int s = s_max; s >= 0 && recorder.elapsed() < budget; --s) {
      const int n = hyperband_bracket_size(s_max, s, sha.eta);
      const int r_init = hyperband_bracket_resource(sha.r_max, sha.r_min, s, sha.eta);
      detail::sha_bracket(space, objective, sha.eta, r_init, sha.r_max, n, rng, recorder,
                          trials, budget);
    }
  }
  return {recorder.finish(), std::move(trials)};
}

}  // namespace fastbo

#endif  // FASTBO_BASELINES_HPP
