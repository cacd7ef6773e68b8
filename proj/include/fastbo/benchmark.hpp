// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// Tabular learning-curve benchmarks: a text format for file-backed tables, a
// synthetic generator with known optima, the table-backed objective driving
// the simulated clock, and regret computation.
//
// File format (line oriented, strict, no trailing garbage):
//   r_max=<int> orientation=<lower_better|higher_better>
//   config <key> <name>=<value> [<name>=<value> ...]
//   <step> <metric> <cost>          -- exactly r_max lines, step = 1..r_max
//   ... further config blocks ...
//
// Metrics are stored loss-oriented: higher_better files are negated on load
// and un-negated on write, so reports can show the original orientation.

#ifndef FASTBO_BENCHMARK_HPP
#define FASTBO_BENCHMARK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fastbo/errors.hpp"
#include "fastbo/history.hpp"
#include "fastbo/learning_curve.hpp"
#include "fastbo/objective.hpp"
#include "fastbo/rng.hpp"
#include "fastbo/search_space.hpp"
#include "fastbo/textio.hpp"

namespace fastbo {

enum class Orientation { kLowerBetter, kHigherBetter };

// Full learning curve of one configuration, loss-oriented, with an explicit
// per-step cost so heterogeneous epoch times can be modelled.
struct BenchmarkCurve {
  std::vector<double> losses;
  std::vector<double> costs;

  bool operator==(const BenchmarkCurve&) const = default;
};

inline std::string canonical_config_key(const Configuration& config) {
  std::string key;
  for (const auto& [name, value] : config.values) {
    if (!key.empty()) key += '|';
    key += name;
    key += '=';
    if (std::holds_alternative<double>(value))
      key += format_double(std::get<double>(value));
    else
      key += std::get<std::string>(value);
  }
  return key;
}

class BenchmarkTable {
 public:
  BenchmarkTable() = default;

  BenchmarkTable(SearchSpace space, std::vector<std::string> keys,
                 std::vector<Configuration> configs, std::vector<BenchmarkCurve> curves,
                 Orientation orientation, int r_max)
      : space_(std::move(space)),
        keys_(std::move(keys)),
        configs_(std::move(configs)),
        curves_(std::move(curves)),
        orientation_(orientation),
        r_max_(r_max) {
    validate();
    for (std::size_t i = 0; i < configs_.size(); ++i)
      row_by_config_[canonical_config_key(configs_[i])] = static_cast<int>(i);
  }

  const SearchSpace& space() const { return space_; }
  const std::vector<std::string>& keys() const { return keys_; }
  const std::vector<Configuration>& configs() const { return configs_; }
  const std::vector<BenchmarkCurve>& curves() const { return curves_; }
  Orientation orientation() const { return orientation_; }
  int r_max() const { return r_max_; }
  int size() const { return static_cast<int>(configs_.size()); }

  int row_of(const Configuration& config) const {
    auto it = row_by_config_.find(canonical_config_key(config));
    if (it == row_by_config_.end())
      throw ValidationError("configuration not in benchmark table: " +
                            canonical_config_key(config));
    return it->second;
  }

  double loss(int row, int resource) const { return curves_[row].losses[resource - 1]; }
  double cost(int row, int resource) const { return curves_[row].costs[resource - 1]; }

  // Smallest final-fidelity loss over all configurations; the regret baseline
  // for file-backed tables.
  double min_final_loss() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : curves_) best = std::min(best, c.losses.back());
    return best;
  }

  bool operator==(const BenchmarkTable& other) const {
    return keys_ == other.keys_ && configs_ == other.configs_ && curves_ == other.curves_ &&
           orientation_ == other.orientation_ && r_max_ == other.r_max_;
  }

 private:
  void validate() const {
    if (r_max_ < 1) throw ValidationError("r_max must be >= 1");
    if (configs_.empty()) throw ValidationError("benchmark table has no configurations");
    if (keys_.size() != configs_.size() || curves_.size() != configs_.size())
      throw ValidationError("benchmark table: row count mismatch");
    for (std::size_t i = 0; i < curves_.size(); ++i) {
      if (curves_[i].losses.size() != static_cast<std::size_t>(r_max_) ||
          curves_[i].costs.size() != static_cast<std::size_t>(r_max_))
        throw ValidationError("curve length != r_max for config '" + keys_[i] + "'");
      for (double v : curves_[i].losses)
        if (!std::isfinite(v))
          throw ValidationError("non-finite metric for config '" + keys_[i] + "'");
      for (double c : curves_[i].costs)
        if (!(c > 0.0)) throw ValidationError("cost must be > 0 for config '" + keys_[i] + "'");
    }
    for (const auto& cfg : configs_) space_.validate(cfg);
  }

  SearchSpace space_;
  std::vector<std::string> keys_;
  std::vector<Configuration> configs_;
  std::vector<BenchmarkCurve> curves_;
  Orientation orientation_ = Orientation::kLowerBetter;
  int r_max_ = 1;
  std::unordered_map<std::string, int> row_by_config_;
};

namespace detail {

// Infers a search space from the hyperparameter columns of a table: numeric
// columns with at least two distinct values become continuous (or integer)
// domains spanning the observed range, everything else becomes a categorical
// over the sorted distinct labels. The optimizers sample table rows directly,
// so the space's job is encoding for the surrogate, not sampling coverage.
inline SearchSpace infer_space(const std::vector<std::string>& names,
                               const std::vector<std::vector<std::string>>& raw_rows) {
  std::vector<HyperparameterDomain> domains;
  for (std::size_t col = 0; col < names.size(); ++col) {
    std::vector<std::string> distinct;
    bool all_numeric = true;
    bool all_integral = true;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : raw_rows) {
      const std::string& s = row[col];
      if (std::find(distinct.begin(), distinct.end(), s) == distinct.end()) distinct.push_back(s);
      if (auto v = parse_double(s); v && std::isfinite(*v)) {
        lo = std::min(lo, *v);
        hi = std::max(hi, *v);
        if (*v != std::floor(*v)) all_integral = false;
      } else {
        all_numeric = false;
      }
    }
    if (all_numeric && distinct.size() >= 2) {
      domains.push_back(all_integral
                            ? HyperparameterDomain::integer(names[col], static_cast<long>(lo),
                                                            static_cast<long>(hi))
                            : HyperparameterDomain::continuous(names[col], lo, hi));
    } else {
      std::sort(distinct.begin(), distinct.end());
      domains.push_back(HyperparameterDomain::categorical(names[col], std::move(distinct)));
    }
  }
  return SearchSpace(std::move(domains));
}

}  // namespace detail

inline BenchmarkTable parse_table(const std::string& content) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= content.size()) {
      const std::size_t nl = content.find('\n', start);
      if (nl == std::string::npos) {
        if (start < content.size()) lines.push_back(content.substr(start));
        break;
      }
      lines.push_back(content.substr(start, nl - start));
      start = nl + 1;
    }
  }
  std::size_t ln = 0;
  const auto next_line = [&]() -> const std::string* {
    return ln < lines.size() ? &lines[ln++] : nullptr;
  };

  const std::string* header = next_line();
  if (!header) throw ParseError("empty benchmark file", 1);
  const auto htok = split_ws(*header);
  if (htok.size() != 2 || htok[0].rfind("r_max=", 0) != 0 ||
      htok[1].rfind("orientation=", 0) != 0)
    throw ParseError("expected 'r_max=<int> orientation=<...>'", 1);
  const auto r_max_v = parse_long(std::string_view(htok[0]).substr(6));
  if (!r_max_v || *r_max_v < 1) throw ParseError("bad r_max field", 1);
  const int r_max = static_cast<int>(*r_max_v);
  const std::string ostr = htok[1].substr(12);
  Orientation orientation;
  if (ostr == "lower_better")
    orientation = Orientation::kLowerBetter;
  else if (ostr == "higher_better")
    orientation = Orientation::kHigherBetter;
  else
    throw ParseError("bad orientation field '" + ostr + "'", 1);

  std::vector<std::string> keys;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> raw_rows;
  std::vector<BenchmarkCurve> curves;

  const std::string* line;
  while ((line = next_line()) != nullptr) {
    const std::size_t config_ln = ln;
    auto tok = split_ws(*line);
    if (tok.empty() || tok[0] != "config")
      throw ParseError("expected 'config <key> <name>=<value> ...'", config_ln);
    if (tok.size() < 3) throw ParseError("config line needs a key and at least one value",
                                         config_ln);
    const std::string& key = tok[1];
    if (std::find(keys.begin(), keys.end(), key) != keys.end())
      throw ValidationError("duplicate config key '" + key + "'");
    std::vector<std::string> row_names, row_values;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      const std::size_t eq = tok[i].find('=');
      if (eq == std::string::npos || eq == 0 || eq == tok[i].size() - 1)
        throw ParseError("bad <name>=<value> token '" + tok[i] + "'", config_ln);
      row_names.push_back(tok[i].substr(0, eq));
      row_values.push_back(tok[i].substr(eq + 1));
    }
    if (keys.empty()) {
      names = row_names;
    } else if (row_names != names) {
      throw ValidationError("config '" + key + "' has inconsistent hyperparameter names");
    }
    keys.push_back(key);
    raw_rows.push_back(std::move(row_values));

    BenchmarkCurve curve;
    for (int step = 1; step <= r_max; ++step) {
      const std::string* dl = next_line();
      auto dt = dl ? split_ws(*dl) : std::vector<std::string>{};
      if (!dl || dt.size() != 3 || !parse_long(dt[0]) || *parse_long(dt[0]) != step) {
        if (dl && !dt.empty() && dt[0] == "config")
          throw ValidationError("curve length " + std::to_string(step - 1) + " != r_max " +
                                std::to_string(r_max) + " for config '" + key + "'");
        throw ParseError("expected '<step> <metric> <cost>' with step " + std::to_string(step),
                         dl ? ln : ln + 1);
      }
      const auto metric = parse_double(dt[1]);
      const auto cost = parse_double(dt[2]);
      if (!metric || !std::isfinite(*metric)) throw ParseError("bad metric field", ln);
      if (!cost) throw ParseError("bad cost field", ln);
      curve.losses.push_back(orientation == Orientation::kHigherBetter ? -*metric : *metric);
      curve.costs.push_back(*cost);
    }
    curves.push_back(std::move(curve));
  }
  if (keys.empty()) throw ParseError("benchmark file has no config blocks", 2);

  SearchSpace space = detail::infer_space(names, raw_rows);
  std::vector<Configuration> configs;
  configs.reserve(raw_rows.size());
  for (const auto& row : raw_rows) {
    Configuration c;
    for (std::size_t col = 0; col < names.size(); ++col) {
      const auto& d = space.domains()[col];
      if (d.is_numeric())
        c.values[names[col]] = *parse_double(row[col]);
      else
        c.values[names[col]] = row[col];
    }
    configs.push_back(std::move(c));
  }
  return BenchmarkTable(std::move(space), std::move(keys), std::move(configs),
                        std::move(curves), orientation, r_max);
}

inline BenchmarkTable load_table(const std::filesystem::path& path) {
  return parse_table(read_file(path));
}

inline std::string serialize_table(const BenchmarkTable& table) {
  std::string out = "r_max=" + std::to_string(table.r_max()) + " orientation=" +
                    (table.orientation() == Orientation::kHigherBetter ? "higher_better"
                                                                       : "lower_better") +
                    "\n";
  for (int row = 0; row < table.size(); ++row) {
    out += "config " + table.keys()[row];
    for (const auto& [name, value] : table.configs()[row].values) {
      out += ' ';
      out += name;
      out += '=';
      out += std::holds_alternative<double>(value) ? format_double(std::get<double>(value))
                                                   : std::get<std::string>(value);
    }
    out += '\n';
    for (int step = 1; step <= table.r_max(); ++step) {
      const double loss = table.loss(row, step);
      const double metric =
          table.orientation() == Orientation::kHigherBetter ? -loss : loss;
      out += std::to_string(step) + ' ' + format_double(metric) + ' ' +
             format_double(table.cost(row, step)) + '\n';
    }
  }
  return out;
}

inline void write_table(const BenchmarkTable& table, const std::filesystem::path& path) {
  atomic_write_file(path, serialize_table(table));
}

// ---------------------------------------------------------------------------
// Synthetic benchmarks

struct SyntheticSpec {
  int n_configs = 50;
  CurveFamily family = CurveFamily::kPow3;
  std::pair<double, double> a_range{0.2, 1.0};
  std::pair<double, double> b_range{1.5, 3.0};
  std::pair<double, double> c_range{0.1, 0.2};
  double noise_sd = 0.0;
  int r_max = 100;
  std::uint64_t seed = 0;

  void check() const {
    if (n_configs < 1) throw ValidationError("synthetic: n_configs must be >= 1");
    if (r_max < 1) throw ValidationError("synthetic: r_max must be >= 1");
    const auto ordered = [](const std::pair<double, double>& p) { return p.first <= p.second; };
    if (!ordered(a_range) || !ordered(b_range) || !ordered(c_range))
      throw ValidationError("synthetic: parameter range lo > hi");
    if (a_range.first < 0.0) throw ValidationError("synthetic: a must be >= 0");
    if (b_range.first <= 0.0) throw ValidationError("synthetic: b must be > 0");
    if (noise_sd < 0.0) throw ValidationError("synthetic: noise_sd must be >= 0");
    const double c_width = c_range.second - c_range.first;
    if (noise_sd > 0.0 && !(noise_sd < 0.5 * c_width))
      throw ValidationError("synthetic: noise_sd must be < half the c range");
  }
};

// Generated table plus the noiseless ground truth, which the table file
// format deliberately does not carry.
struct SyntheticBenchmark {
  BenchmarkTable table;
  std::vector<double> asymptotes;
  int optimum_row = 0;
  double optimum_value = 0.0;
};

inline SyntheticBenchmark generate_synthetic(const SyntheticSpec& spec) {
  spec.check();
  Rng rng(spec.seed);
  SearchSpace space =
      spec.n_configs == 1
          ? SearchSpace({HyperparameterDomain::categorical("index", {"0"})})
          : SearchSpace({HyperparameterDomain::integer("index", 0, spec.n_configs - 1)});

  std::vector<std::string> keys;
  std::vector<Configuration> configs;
  std::vector<BenchmarkCurve> curves;
  std::vector<double> asymptotes;
  for (int k = 0; k < spec.n_configs; ++k) {
    CurveModel m;
    m.family = spec.family;
    m.a = rng.uniform(spec.a_range.first, spec.a_range.second);
    m.b = rng.uniform(spec.b_range.first, spec.b_range.second);
    m.c = rng.uniform(spec.c_range.first, spec.c_range.second);
    BenchmarkCurve curve;
    for (int r = 1; r <= spec.r_max; ++r) {
      double v = m.predict(r);
      if (spec.noise_sd > 0.0) v += spec.noise_sd * rng.normal();
      curve.losses.push_back(v);
      curve.costs.push_back(1.0);
    }
    keys.push_back(std::to_string(k));
    Configuration c;
    if (spec.n_configs == 1)
      c.values["index"] = std::string("0");
    else
      c.values["index"] = static_cast<double>(k);
    configs.push_back(std::move(c));
    curves.push_back(std::move(curve));
    asymptotes.push_back(m.asymptote());
  }

  SyntheticBenchmark out{BenchmarkTable(std::move(space), std::move(keys), std::move(configs),
                                        std::move(curves), Orientation::kLowerBetter,
                                        spec.r_max),
                         std::move(asymptotes), 0, 0.0};
  out.optimum_row = static_cast<int>(std::min_element(out.asymptotes.begin(),
                                                      out.asymptotes.end()) -
                                     out.asymptotes.begin());
  out.optimum_value = out.asymptotes[out.optimum_row];
  return out;
}

// ---------------------------------------------------------------------------
// Table-backed objective

class TableObjective : public Objective {
 public:
  explicit TableObjective(const BenchmarkTable& table) : table_(&table) {}

  double value_at(const Configuration& config, int resource) const override {
    check_resource(resource);
    return table_->loss(table_->row_of(config), resource);
  }

  double step_cost(const Configuration& config, int resource) const override {
    check_resource(resource);
    return table_->cost(table_->row_of(config), resource);
  }

  Configuration sample_configuration(const SearchSpace&, Rng& rng) const override {
    return table_->configs()[rng.uniform_index(static_cast<std::uint64_t>(table_->size()))];
  }

  const BenchmarkTable& table() const { return *table_; }

 private:
  void check_resource(int resource) const {
    if (resource < 1 || resource > table_->r_max())
      throw ValidationError("resource " + std::to_string(resource) + " outside [1, " +
                            std::to_string(table_->r_max()) + "]");
  }

  const BenchmarkTable* table_;
};

// ---------------------------------------------------------------------------
// Regret

struct RegretPoint {
  double time = 0.0;
  double regret = 0.0;

  bool operator==(const RegretPoint&) const = default;
};

inline std::vector<RegretPoint> regret_trace(const History& history, double optimum) {
  std::vector<RegretPoint> out;
  out.reserve(history.incumbent_trace.size());
  for (const auto& p : history.incumbent_trace)
    out.push_back({p.time, std::max(p.best_value - optimum, 0.0)});
  return out;
}

// File-backed tables know nothing beyond their final fidelity, so regret is
// measured against the best final-fidelity loss. Synthetic runs that kept the
// ground truth can pass the noiseless optimum to the overload above instead.
inline std::vector<RegretPoint> regret_trace(const History& history,
                                             const BenchmarkTable& table) {
  return regret_trace(history, table.min_final_loss());
}

}  // namespace fastbo

#endif  // FASTBO_BENCHMARK_HPP
