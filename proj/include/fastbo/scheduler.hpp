// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// The FastBO loop. Each proposed configuration:
//   (a) is proposed at random (first n_init) or by GP-EI acquisition,
//   (b) warms up from r_min to r_w, terminating early on k consecutive
//       worsening steps,
//   (c) gets a learning curve fitted to its warm-up observations,
//   (d) gets its efficient point e and saturation point s extracted,
//   (e) is evaluated up to e; the observed loss at e labels the surrogate,
//   (f) updates the surrogate for the next proposal.
// Once (1 - post_fraction) * budget is consumed, the post-processing stage
// resumes the top_m paused trials (by label) to their saturation points.
//
// Execution is sequential against a simulated resource clock, so runs are
// bit-reproducible for a given seed. Early-terminated trials never label the
// surrogate: their last fidelity is not an efficient point.

#ifndef FASTBO_SCHEDULER_HPP
#define FASTBO_SCHEDULER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fastbo/errors.hpp"
#include "fastbo/history.hpp"
#include "fastbo/learning_curve.hpp"
#include "fastbo/objective.hpp"
#include "fastbo/rng.hpp"
#include "fastbo/search_space.hpp"
#include "fastbo/surrogate.hpp"

namespace fastbo {

struct OptimizerConfig {
  double delta1 = 1e-3;            // efficient-point threshold
  double delta2 = 1e-4;            // saturation-point threshold
  double warmup_fraction = 0.1;    // r_w = max(5, ceil(fraction * r_max))
  int deterioration_patience = 3;  // consecutive worsening steps before termination
  int n_init = 5;                  // random proposals before the surrogate takes over
  double post_fraction = 0.1;      // trailing budget share reserved for post-processing
  int top_m = 3;                   // paused trials resumed in post-processing
  int n_candidates = 512;          // acquisition candidate pool
  std::uint64_t seed = 0;

  void check() const {
    if (!(delta1 > 0.0)) throw ValidationError("delta1 must be > 0");
    if (!(delta2 > 0.0)) throw ValidationError("delta2 must be > 0");
    if (delta2 > delta1) throw ValidationError("delta2 must be <= delta1");
    if (!(warmup_fraction > 0.0) || warmup_fraction > 1.0)
      throw ValidationError("warmup_fraction must be in (0, 1]");
    if (deterioration_patience < 1)
      throw ValidationError("deterioration_patience must be >= 1");
    if (n_init < 1) throw ValidationError("n_init must be >= 1");
    if (!(post_fraction > 0.0) || !(post_fraction < 1.0))
      throw ValidationError("post_fraction must be in (0, 1)");
    if (top_m < 1) throw ValidationError("top_m must be >= 1");
    if (n_candidates < 1) throw ValidationError("n_candidates must be >= 1");
  }

  int warmup_resource(int r_min, int r_max) const {
    int r_w = std::max(5, static_cast<int>(std::ceil(warmup_fraction * r_max)));
    return std::clamp(r_w, r_min, r_max);
  }
};

enum class TrialStage {
  kWarmUp,
  kCurveFitted,
  kEfficientEval,
  kPaused,
  kResumed,
  kTerminatedEarly,
  kCompleted,
};

inline const char* stage_name(TrialStage s) {
  switch (s) {
    case TrialStage::kWarmUp: return "WarmUp";
    case TrialStage::kCurveFitted: return "CurveFitted";
    case TrialStage::kEfficientEval: return "EfficientEval";
    case TrialStage::kPaused: return "Paused";
    case TrialStage::kResumed: return "Resumed";
    case TrialStage::kTerminatedEarly: return "TerminatedEarly";
    case TrialStage::kCompleted: return "Completed";
  }
  return "?";
}

// Lifecycle record of one configuration.
struct Trial {
  int id = 0;
  Configuration config;
  TrialStage stage = TrialStage::kWarmUp;
  std::vector<Observation> observations; // strictly increasing in resource
  std::optional<CurveModel> curve;
  std::optional<FidelityPoints> points;
  std::optional<double> label; // observed loss at the efficient point
  std::string error;           // objective failure, when the trial aborted

  int max_resource() const {
    return observations.empty() ? 0 : observations.back().resource;
  }
};

struct RunResult {
  History history;
  std::vector<Trial> trials;
};

// True iff the last k consecutive deltas are all strict worsenings of the
// loss. Fewer than k+1 observations cannot have k consecutive deltas.
inline bool warmup_should_terminate(const std::vector<Observation>& observations, int k) {
  if (observations.empty())
    throw ValidationError("warmup_should_terminate: observations must be non-empty");
  if (static_cast<int>(observations.size()) < k + 1) return false;
  for (std::size_t i = observations.size() - static_cast<std::size_t>(k);
       i < observations.size(); ++i) {
    if (!(observations[i].value - observations[i - 1].value > 0.0)) return false;
  }
  return true;
}

// Proposes the next configuration from the labeled trials so far. The labels
// handed over are efficient-point losses, which the suggester treats as if
// they were final performances -- that is the whole single-to-multi-fidelity
// bridge.
class ConfigSuggester {
 public:
  virtual ~ConfigSuggester() = default;
  virtual Configuration propose(const std::vector<std::pair<Configuration, double>>& observed,
                                std::size_t trial_index, const SearchSpace& space,
                                const Objective& objective, Rng& rng) = 0;
};

class RandomSuggester : public ConfigSuggester {
 public:
  Configuration propose(const std::vector<std::pair<Configuration, double>>&, std::size_t,
                        const SearchSpace& space, const Objective& objective,
                        Rng& rng) override {
    return objective.sample_configuration(space, rng);
  }
};

// GP-EI proposal, mirroring the native run's step (a).
class GpEiSuggester : public ConfigSuggester {
 public:
  GpEiSuggester(int n_init, int n_candidates) : n_init_(n_init), n_candidates_(n_candidates) {}

  Configuration propose(const std::vector<std::pair<Configuration, double>>& observed,
                        std::size_t trial_index, const SearchSpace& space,
                        const Objective& objective, Rng& rng) override {
    if (trial_index < static_cast<std::size_t>(n_init_) || observed.size() < 2)
      return objective.sample_configuration(space, rng);
    TrainingSet data;
    for (const auto& [config, label] : observed) {
      data.inputs.push_back(space.encode(config));
      data.targets.push_back(label);
    }
    const Surrogate s = fit_surrogate(data);
    return suggest_from(
        s, space,
        [&](Rng& r) { return objective.sample_configuration(space, r); }, rng,
        n_candidates_);
  }

 private:
  int n_init_;
  int n_candidates_;
};

// Test hooks: forcing the fidelity points to (r_max, r_max) with warm-up
// termination and post-processing disabled turns the loop into plain
// full-fidelity BO, which the baselines suite checks against its own
// implementation.
struct RunHooks {
  std::optional<FidelityPoints> forced_points;
  bool disable_warmup_termination = false;
  bool disable_post = false;
};

namespace detail {

// Runs one resource step of a trial if the phase budget allows it. A false
// return with stage kTerminatedEarly means the objective threw; the error is
// recorded on the trial and aborts only that trial.
inline bool evaluate_trial_step(HistoryRecorder& recorder, const Objective& objective,
                                Trial& t, int r, double cap) {
  if (recorder.elapsed() >= cap) return false;
  double value, cost;
  try {
    cost = objective.step_cost(t.config, r);
    value = objective.value_at(t.config, r);
  } catch (const std::exception& e) {
    t.error = e.what();
    t.stage = TrialStage::kTerminatedEarly;
    return false;
  }
  recorder.record(t.id, r, value, cost);
  t.observations.push_back({r, value});
  return true;
}

template <typename ProposalFn>
RunResult run_loop(const OptimizerConfig& cfg, const Objective& objective,
                   const SearchSpace& space, int r_min, int r_max, double budget,
                   ProposalFn&& propose, const RunHooks& hooks) {
  cfg.check();
  if (r_min < 1 || r_min > r_max) throw ValidationError("need 1 <= r_min <= r_max");
  if (!(budget > 0.0)) throw ValidationError("budget must be > 0");
  const int r_w = cfg.warmup_resource(r_min, r_max);
  if (budget < static_cast<double>(r_w))
    throw BudgetTooSmall("budget " + std::to_string(budget) + " < warm-up resource " +
                         std::to_string(r_w) + "; no trial can finish warm-up");
  if (!hooks.forced_points && r_w - r_min + 1 < 4)
    throw ValidationError("warm-up window [" + std::to_string(r_min) + ", " +
                          std::to_string(r_w) + "] too small to fit a learning curve");

  const double main_cap = hooks.disable_post ? budget : (1.0 - cfg.post_fraction) * budget;
  HistoryRecorder recorder;
  Rng rng(cfg.seed);
  std::vector<Trial> trials;
  std::vector<std::pair<Configuration, double>> labeled;

  const auto evaluate_step = [&](Trial& t, int r, double cap) {
    return evaluate_trial_step(recorder, objective, t, r, cap);
  };

  while (recorder.elapsed() < main_cap) {
    Trial t;
    t.id = static_cast<int>(trials.size());
    t.stage = TrialStage::kWarmUp;
    t.config = propose(labeled, trials.size(), rng);

    const auto run_main_phase = [&]() {
      for (int r = r_min; r <= r_w; ++r) {
        if (!evaluate_step(t, r, main_cap)) return;
        if (!hooks.disable_warmup_termination &&
            warmup_should_terminate(t.observations, cfg.deterioration_patience)) {
          t.stage = TrialStage::kTerminatedEarly;
          return;
        }
      }
      if (hooks.forced_points) {
        t.points = *hooks.forced_points;
      } else {
        t.curve = fit_curve(t.observations);
        const int e = efficient_point(*t.curve, cfg.delta1, r_w, r_max);
        const int s = saturation_point(*t.curve, cfg.delta2, e, r_max);
        t.points = FidelityPoints{e, s};
      }
      t.stage = TrialStage::kCurveFitted;
      for (int r = r_w + 1; r <= t.points->efficient; ++r)
        if (!evaluate_step(t, r, main_cap)) return;
      t.stage = TrialStage::kEfficientEval;
      t.label = t.observations.back().value;
      t.stage = TrialStage::kPaused;
      labeled.emplace_back(t.config, *t.label);
    };
    run_main_phase();
    trials.push_back(std::move(t));
  }

  if (!hooks.disable_post) {
    std::vector<Trial*> paused;
    for (auto& t : trials)
      if (t.stage == TrialStage::kPaused) paused.push_back(&t);
    std::sort(paused.begin(), paused.end(), [](const Trial* a, const Trial* b) {
      return *a->label != *b->label ? *a->label < *b->label : a->id < b->id;
    });
    const std::size_t resume_n = std::min<std::size_t>(paused.size(),
                                                       static_cast<std::size_t>(cfg.top_m));
    for (std::size_t i = 0; i < resume_n; ++i) {
      Trial& t = *paused[i];
      if (recorder.elapsed() >= budget) break;
      t.stage = TrialStage::kResumed;
      bool reached_saturation = true;
      for (int r = t.points->efficient + 1; r <= t.points->saturation; ++r) {
        if (!evaluate_step(t, r, budget)) {
          reached_saturation = false;
          break;
        }
      }
      if (reached_saturation && t.stage == TrialStage::kResumed)
        t.stage = TrialStage::kCompleted;
    }
  }

  return {recorder.finish(), std::move(trials)};
}

}  // namespace detail

// Native FastBO: random proposals for the first n_init trials, GP-EI
// afterwards (falling back to random while fewer than two labels exist).
inline RunResult run(const OptimizerConfig& cfg, const Objective& objective,
                     const SearchSpace& space, int r_min, int r_max, double budget,
                     const RunHooks& hooks = {}) {
  const auto propose = [&](const std::vector<std::pair<Configuration, double>>& labeled,
                           std::size_t trial_index, Rng& rng) -> Configuration {
    if (trial_index < static_cast<std::size_t>(cfg.n_init) || labeled.size() < 2)
      return objective.sample_configuration(space, rng);
    TrainingSet data;
    for (const auto& [config, label] : labeled) {
      data.inputs.push_back(space.encode(config));
      data.targets.push_back(label);
    }
    const Surrogate s = fit_surrogate(data);
    return suggest_from(
        s, space,
        [&](Rng& r) { return objective.sample_configuration(space, r); }, rng,
        cfg.n_candidates);
  };
  return detail::run_loop(cfg, objective, space, r_min, r_max, budget, propose, hooks);
}

// Multi-fidelity wrapper around any single-fidelity proposer: the pipeline of
// run(), with step (a) replaced by the suggester. With a GpEiSuggester this
// reproduces run() exactly, seed for seed.
class AdaptifiedOptimizer {
 public:
  AdaptifiedOptimizer(std::shared_ptr<ConfigSuggester> suggester, OptimizerConfig cfg)
      : suggester_(std::move(suggester)), cfg_(cfg) {
    cfg_.check();
  }

  RunResult run(const Objective& objective, const SearchSpace& space, int r_min, int r_max,
                double budget, const RunHooks& hooks = {}) const {
    const auto propose = [&](const std::vector<std::pair<Configuration, double>>& labeled,
                             std::size_t trial_index, Rng& rng) {
      return suggester_->propose(labeled, trial_index, space, objective, rng);
    };
    return detail::run_loop(cfg_, objective, space, r_min, r_max, budget, propose, hooks);
  }

  const OptimizerConfig& config() const { return cfg_; }

 private:
  std::shared_ptr<ConfigSuggester> suggester_;
  OptimizerConfig cfg_;
};

inline AdaptifiedOptimizer adaptify(std::shared_ptr<ConfigSuggester> suggester,
                                    OptimizerConfig cfg) {
  return AdaptifiedOptimizer(std::move(suggester), cfg);
}

}  // namespace fastbo

#endif  // FASTBO_SCHEDULER_HPP
