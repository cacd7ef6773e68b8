// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_HISTORY_HPP
#define FASTBO_HISTORY_HPP

#include <limits>
#include <vector>

namespace fastbo {

// One evaluated resource step. `time` is the simulated clock after the step's
// cost was charged, so the event list doubles as the budget ledger.
struct Event {
  double time = 0.0;
  int trial_id = 0;
  int resource = 0;
  double value = 0.0;

  bool operator==(const Event&) const = default;
};

// Anytime record of a run: every evaluated step, plus the incumbent trace
// (best loss seen so far, recorded at each improvement and once at the end).
struct History {
  struct IncumbentPoint {
    double time = 0.0;
    double best_value = 0.0;
    bool operator==(const IncumbentPoint&) const = default;
  };

  std::vector<Event> events;
  std::vector<IncumbentPoint> incumbent_trace;

  bool operator==(const History&) const = default;

  double final_time() const { return events.empty() ? 0.0 : events.back().time; }

  double final_incumbent() const {
    return incumbent_trace.empty() ? std::numeric_limits<double>::infinity()
                                   : incumbent_trace.back().best_value;
  }
};

// Clock-and-incumbent bookkeeping shared by every optimizer in this project.
class HistoryRecorder {
 public:
  // Charges `cost`, appends the event, and updates the incumbent trace.
  void record(int trial_id, int resource, double value, double cost) {
    elapsed_ += cost;
    history_.events.push_back({elapsed_, trial_id, resource, value});
    if (value < best_) {
      best_ = value;
      history_.incumbent_trace.push_back({elapsed_, best_});
    }
  }

  // Appends the closing incumbent point at the final simulated time.
  History finish() {
    History out = history_;
    if (!out.incumbent_trace.empty() && out.incumbent_trace.back().time < elapsed_)
      out.incumbent_trace.push_back({elapsed_, best_});
    return out;
  }

  double elapsed() const { return elapsed_; }
  double best() const { return best_; }
  const History& history() const { return history_; }

 private:
  History history_;
  double elapsed_ = 0.0;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace fastbo

#endif  // FASTBO_HISTORY_HPP
