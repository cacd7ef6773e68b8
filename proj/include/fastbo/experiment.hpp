// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment front end: a flat key-value config format with per-method
// sections, single-method runs and multi-method comparisons over seed lists,
// and plot-ready trace/summary outputs. All files are written atomically and
// every run is reproducible from the manifest alone.
//
// Config format: `key = value` lines, `[section]` headers, `#` comments.
//
//   method = fastbo              # or: methods = rs, bo, fastbo
//   benchmark = path/to.bench    # or a [synthetic] section
//   budget = 300
//   seeds = 0,1,2
//   regret_threshold = 0.01
//
//   [fastbo]
//   delta1 = 0.005
//   ...
//
//   [space]                      # optional: overrides the inferred encoding
//   lr = continuous 1e-4 1e-1 log
//   units = integer 16 256
//   act = categorical relu tanh

#ifndef FASTBO_EXPERIMENT_HPP
#define FASTBO_EXPERIMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fastbo/baselines.hpp"
#include "fastbo/benchmark.hpp"
#include "fastbo/errors.hpp"
#include "fastbo/scheduler.hpp"
#include "fastbo/textio.hpp"
#include "fastbo/version.hpp"

namespace fastbo::experiment {

// ---------------------------------------------------------------------------
// Flat key-value config text

struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : entries)
      if (k == key) return &v;
    return nullptr;
  }
};

struct ParsedConfig {
  std::vector<ConfigSection> sections; // sections[0] is the unnamed top level

  ConfigSection& top() { return sections.front(); }
  const ConfigSection* find_section(const std::string& name) const {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
  ConfigSection& get_or_add(const std::string& name) {
    for (auto& s : sections)
      if (s.name == name) return s;
    sections.push_back({name, {}});
    return sections.back();
  }
  void set(const std::string& section, const std::string& key, const std::string& value) {
    auto& s = get_or_add(section);
    for (auto& [k, v] : s.entries)
      if (k == key) {
        v = value;
        return;
      }
    s.entries.emplace_back(key, value);
  }
};

inline std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline ParsedConfig parse_config_text(const std::string& content) {
  ParsedConfig cfg;
  cfg.sections.push_back({"", {}});
  std::size_t current = 0;
  std::size_t start = 0, line_no = 0;
  while (start <= content.size()) {
    const std::size_t nl = content.find('\n', start);
    const std::string raw = nl == std::string::npos ? content.substr(start)
                                                    : content.substr(start, nl - start);
    ++line_no;
    const std::string line = strip(raw);
    if (!line.empty() && line[0] != '#') {
      if (line.front() == '[') {
        if (line.back() != ']' || line.size() < 3)
          throw ParseError("bad section header '" + line + "'", line_no);
        const std::string name = strip(line.substr(1, line.size() - 2));
        if (name.empty()) throw ParseError("empty section name", line_no);
        cfg.sections.push_back({name, {}});
        current = cfg.sections.size() - 1;
      } else {
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
          throw ParseError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);
        for (const auto& [k, v] : cfg.sections[current].entries)
          if (k == key)
            throw ParseError("duplicate key '" + key + "' in section [" +
                                 cfg.sections[current].name + "]",
                             line_no);
        cfg.sections[current].entries.emplace_back(key, value);
      }
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Search-space declarations: `<name> = <kind> <args...>`

inline SearchSpace parse_space_section(const ConfigSection& section) {
  std::vector<HyperparameterDomain> domains;
  for (const auto& [name, value] : section.entries) {
    const auto tok = split_ws(value);
    if (tok.empty()) throw ValidationError("space domain '" + name + "': empty declaration");
    const std::string& kind = tok[0];
    if (kind == "continuous" || kind == "integer") {
      if (tok.size() != 3 && !(tok.size() == 4 && (tok[3] == "log" || tok[3] == "linear")))
        throw ValidationError("space domain '" + name +
                              "': expected '<kind> <lo> <hi> [log|linear]'");
      const auto lo = parse_double(tok[1]);
      const auto hi = parse_double(tok[2]);
      if (!lo || !hi) throw ValidationError("space domain '" + name + "': bad bounds");
      const Scale scale =
          tok.size() == 4 && tok[3] == "log" ? Scale::kLogarithmic : Scale::kLinear;
      if (kind == "continuous") {
        domains.push_back(HyperparameterDomain::continuous(name, *lo, *hi, scale));
      } else {
        if (*lo != std::floor(*lo) || *hi != std::floor(*hi))
          throw ValidationError("space domain '" + name + "': integer bounds must be integral");
        domains.push_back(HyperparameterDomain::integer(name, static_cast<long>(*lo),
                                                        static_cast<long>(*hi), scale));
      }
    } else if (kind == "categorical") {
      if (tok.size() < 2)
        throw ValidationError("space domain '" + name + "': categorical needs choices");
      domains.push_back(
          HyperparameterDomain::categorical(name, {tok.begin() + 1, tok.end()}));
    } else {
      throw ValidationError("space domain '" + name + "': unknown kind '" + kind + "'");
    }
  }
  return SearchSpace(std::move(domains));
}

inline std::string serialize_space(const SearchSpace& space) {
  std::string out;
  for (const auto& d : space.domains()) {
    out += d.name;
    out += " = ";
    switch (d.kind) {
      case DomainKind::kContinuous:
      case DomainKind::kInteger:
        out += d.kind == DomainKind::kContinuous ? "continuous " : "integer ";
        out += format_double(d.lo) + ' ' + format_double(d.hi);
        out += d.scale == Scale::kLogarithmic ? " log" : " linear";
        break;
      case DomainKind::kCategorical:
        out += "categorical";
        for (const auto& c : d.choices) {
          out += ' ';
          out += c;
        }
        break;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resolved experiment configuration

struct ExperimentConfig {
  std::vector<std::string> methods;
  std::string benchmark_path;
  std::optional<SyntheticSpec> synthetic;
  double budget = 0.0;
  std::vector<std::uint64_t> seeds;
  double regret_threshold = 0.01;
  int r_min = 1;
  std::optional<SearchSpace> declared_space;

  OptimizerConfig fastbo;
  int bo_n_init = 5;
  int bo_n_candidates = 512;
  int sha_eta = 3;
  int sha_n = 9;
  std::map<std::string, double> method_budget; // per-method override

  double budget_for(const std::string& method) const {
    auto it = method_budget.find(method);
    return it == method_budget.end() ? budget : it->second;
  }
};

namespace detail {

inline double require_double(const std::string& key, const std::string& value) {
  const auto v = parse_double(value);
  if (!v) throw ValidationError("key '" + key + "': bad number '" + value + "'");
  return *v;
}

inline long require_long(const std::string& key, const std::string& value) {
  const auto v = parse_long(value);
  if (!v) throw ValidationError("key '" + key + "': bad integer '" + value + "'");
  return *v;
}

inline std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    const std::string item = strip(value.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    start = comma + 1;
  }
  return out;
}

inline std::pair<double, double> require_range(const std::string& key,
                                               const std::string& value) {
  const auto items = split_list(value);
  if (items.size() != 2)
    throw ValidationError("key '" + key + "': expected '<lo>, <hi>'");
  return {require_double(key, items[0]), require_double(key, items[1])};
}

}  // namespace detail

inline const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> m = {"fastbo", "rs", "bo", "sha", "hyperband"};
  return m;
}

inline ExperimentConfig resolve(const ParsedConfig& parsed) {
  using detail::require_double;
  using detail::require_long;
  ExperimentConfig out;

  for (const auto& [key, value] : parsed.sections.front().entries) {
    if (key == "method" || key == "methods") {
      out.methods = detail::split_list(value);
    } else if (key == "benchmark") {
      out.benchmark_path = value;
    } else if (key == "budget") {
      out.budget = require_double(key, value);
    } else if (key == "seeds") {
      for (const auto& s : detail::split_list(value)) {
        const auto v = parse_long(s);
        if (!v || *v < 0) throw ValidationError("key 'seeds': bad seed '" + s + "'");
        out.seeds.push_back(static_cast<std::uint64_t>(*v));
      }
    } else if (key == "regret_threshold") {
      out.regret_threshold = require_double(key, value);
    } else if (key == "r_min") {
      out.r_min = static_cast<int>(require_long(key, value));
    } else {
      throw ValidationError("unknown top-level key '" + key + "'");
    }
  }

  for (const auto& section : parsed.sections) {
    // Manifest bookkeeping sections are legal input, so a manifest written by
    // cmd_run can be fed back as a config and reproduces the run.
    if (section.name.empty() || section.name == "manifest" || section.name == "outputs" ||
        section.name == "failures")
      continue;
    if (section.name == "fastbo") {
      for (const auto& [key, value] : section.entries) {
        if (key == "delta1") out.fastbo.delta1 = require_double(key, value);
        else if (key == "delta2") out.fastbo.delta2 = require_double(key, value);
        else if (key == "warmup_fraction") out.fastbo.warmup_fraction = require_double(key, value);
        else if (key == "deterioration_patience")
          out.fastbo.deterioration_patience = static_cast<int>(require_long(key, value));
        else if (key == "n_init") out.fastbo.n_init = static_cast<int>(require_long(key, value));
        else if (key == "post_fraction") out.fastbo.post_fraction = require_double(key, value);
        else if (key == "top_m") out.fastbo.top_m = static_cast<int>(require_long(key, value));
        else if (key == "n_candidates")
          out.fastbo.n_candidates = static_cast<int>(require_long(key, value));
        else if (key == "budget") out.method_budget["fastbo"] = require_double(key, value);
        else throw ValidationError("unknown key '" + key + "' in [fastbo]");
      }
    } else if (section.name == "bo") {
      for (const auto& [key, value] : section.entries) {
        if (key == "n_init") out.bo_n_init = static_cast<int>(require_long(key, value));
        else if (key == "n_candidates")
          out.bo_n_candidates = static_cast<int>(require_long(key, value));
        else if (key == "budget") out.method_budget["bo"] = require_double(key, value);
        else throw ValidationError("unknown key '" + key + "' in [bo]");
      }
    } else if (section.name == "sha") {
      for (const auto& [key, value] : section.entries) {
        if (key == "eta") out.sha_eta = static_cast<int>(require_long(key, value));
        else if (key == "n") out.sha_n = static_cast<int>(require_long(key, value));
        else if (key == "budget") {
          out.method_budget["sha"] = require_double(key, value);
          out.method_budget["hyperband"] = out.method_budget["sha"];
        } else {
          throw ValidationError("unknown key '" + key + "' in [sha]");
        }
      }
    } else if (section.name == "synthetic") {
      SyntheticSpec spec;
      for (const auto& [key, value] : section.entries) {
        if (key == "n_configs") spec.n_configs = static_cast<int>(require_long(key, value));
        else if (key == "family") {
          if (value == "pow3") spec.family = CurveFamily::kPow3;
          else if (value == "log2") spec.family = CurveFamily::kLog2;
          else if (value == "exp3") spec.family = CurveFamily::kExp3;
          else throw ValidationError("synthetic family must be pow3, log2, or exp3");
        } else if (key == "a_range") spec.a_range = detail::require_range(key, value);
        else if (key == "b_range") spec.b_range = detail::require_range(key, value);
        else if (key == "c_range") spec.c_range = detail::require_range(key, value);
        else if (key == "noise_sd") spec.noise_sd = require_double(key, value);
        else if (key == "r_max") spec.r_max = static_cast<int>(require_long(key, value));
        else if (key == "seed") spec.seed = static_cast<std::uint64_t>(require_long(key, value));
        else throw ValidationError("unknown key '" + key + "' in [synthetic]");
      }
      spec.check();
      out.synthetic = spec;
    } else if (section.name == "space") {
      out.declared_space = parse_space_section(section);
    } else {
      throw ValidationError("unknown section [" + section.name + "]");
    }
  }

  return out;
}

inline void validate_for_run(const ExperimentConfig& cfg, bool compare) {
  if (cfg.methods.empty()) throw ValidationError("no method specified");
  if (compare && cfg.methods.size() < 2)
    throw ValidationError("compare needs at least 2 methods");
  if (!compare && cfg.methods.size() != 1)
    throw ValidationError("run takes exactly 1 method; use compare for several");
  std::set<std::string> seen;
  for (const auto& m : cfg.methods) {
    if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
      throw ValidationError("unknown method '" + m + "'");
    if (!seen.insert(m).second) throw ValidationError("duplicate method '" + m + "'");
  }
  if (cfg.seeds.empty()) throw ValidationError("seeds must be non-empty");
  std::set<std::uint64_t> dedup(cfg.seeds.begin(), cfg.seeds.end());
  if (dedup.size() != cfg.seeds.size()) throw ValidationError("duplicate seeds");
  if (!(cfg.budget > 0.0)) throw ValidationError("budget must be > 0");
  if (cfg.benchmark_path.empty() == !cfg.synthetic.has_value())
    throw ValidationError("exactly one of 'benchmark' or [synthetic] is required");
  cfg.fastbo.check();
}

// ---------------------------------------------------------------------------
// Benchmark loading and per-method execution

struct LoadedBenchmark {
  BenchmarkTable table;
  double regret_baseline = 0.0; // noiseless optimum for synthetic, min final loss for files
};

inline LoadedBenchmark load_benchmark(const ExperimentConfig& cfg) {
  if (cfg.synthetic) {
    SyntheticBenchmark synth = generate_synthetic(*cfg.synthetic);
    return {std::move(synth.table), synth.optimum_value};
  }
  BenchmarkTable table = load_table(cfg.benchmark_path);
  const double baseline = table.min_final_loss();
  return {std::move(table), baseline};
}

inline RunResult execute_method(const std::string& method, const ExperimentConfig& cfg,
                                const BenchmarkTable& table, std::uint64_t seed) {
  const TableObjective objective(table);
  const SearchSpace& space = cfg.declared_space ? *cfg.declared_space : table.space();
  if (cfg.declared_space)
    for (const auto& config : table.configs()) space.validate(config);
  const double budget = cfg.budget_for(method);
  if (method == "fastbo") {
    OptimizerConfig oc = cfg.fastbo;
    oc.seed = seed;
    return run(oc, objective, space, cfg.r_min, table.r_max(), budget);
  }
  if (method == "rs") return random_search(space, objective, table.r_max(), budget, seed);
  if (method == "bo")
    return bo_full(space, objective, table.r_max(), budget, seed, cfg.bo_n_init,
                   cfg.bo_n_candidates);
  if (method == "sha" || method == "hyperband") {
    ShaConfig sc;
    sc.eta = cfg.sha_eta;
    sc.r_min = cfg.r_min;
    sc.r_max = table.r_max();
    if (method == "sha") return successive_halving(space, objective, sc, cfg.sha_n, seed);
    return hyperband(space, objective, sc, budget, seed);
  }
  throw ValidationError("unknown method '" + method + "'");
}

// ---------------------------------------------------------------------------
// Outputs

inline std::string trace_filename(const std::string& method, std::uint64_t seed) {
  return method + "_seed" + std::to_string(seed) + ".trace";
}

// Trace columns: simulated_time, incumbent, regret. The incumbent is printed
// in the benchmark's original orientation; regret stays in loss space.
inline std::string serialize_trace(const History& history, double baseline,
                                   Orientation orientation) {
  std::string out = "simulated_time\tincumbent\tregret\n";
  for (const auto& p : history.incumbent_trace) {
    const double incumbent =
        orientation == Orientation::kHigherBetter ? -p.best_value : p.best_value;
    out += format_double(p.time) + '\t' + format_double(incumbent) + '\t' +
           format_double(std::max(p.best_value - baseline, 0.0)) + '\n';
  }
  return out;
}

struct SeedOutcome {
  std::string method;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double final_regret = std::numeric_limits<double>::quiet_NaN();
  double time_to_threshold = std::numeric_limits<double>::infinity();
  History history;
};

inline SeedOutcome run_one(const std::string& method, const ExperimentConfig& cfg,
                           const LoadedBenchmark& bench, std::uint64_t seed) {
  SeedOutcome out;
  out.method = method;
  out.seed = seed;
  try {
    RunResult result = execute_method(method, cfg, bench.table, seed);
    out.history = std::move(result.history);
    out.ok = true;
    const auto regrets = regret_trace(out.history, bench.regret_baseline);
    if (!regrets.empty()) out.final_regret = regrets.back().regret;
    for (const auto& p : regrets) {
      if (p.regret <= cfg.regret_threshold) {
        out.time_to_threshold = p.time;
        break;
      }
    }
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = std::string("method ") + method + " seed " + std::to_string(seed) + ": " +
                e.what();
  }
  return out;
}

inline double percentile(std::vector<double> values, double p) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double idx = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(idx));
  if (lo == hi) return values[lo];
  // Linear interpolation; saturates to infinity when a tail value is infinite.
  if (std::isinf(values[hi]) && std::isinf(values[lo])) return values[lo];
  return values[lo] + (idx - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

inline double median(const std::vector<double>& values) { return percentile(values, 0.5); }

struct MethodSummary {
  std::string method;
  int runs = 0;
  int failures = 0;
  double median_final_regret = std::numeric_limits<double>::quiet_NaN();
  double iqr_final_regret = std::numeric_limits<double>::quiet_NaN();
  double median_time_to_threshold = std::numeric_limits<double>::infinity();
};

inline MethodSummary summarize_method(const std::string& method,
                                      const std::vector<SeedOutcome>& outcomes) {
  MethodSummary s;
  s.method = method;
  std::vector<double> finals, times;
  for (const auto& o : outcomes) {
    if (o.method != method) continue;
    ++s.runs;
    if (!o.ok) {
      ++s.failures;
      continue;
    }
    finals.push_back(o.final_regret);
    times.push_back(o.time_to_threshold);
  }
  if (!finals.empty()) {
    s.median_final_regret = median(finals);
    s.iqr_final_regret = percentile(finals, 0.75) - percentile(finals, 0.25);
    s.median_time_to_threshold = median(times);
  }
  return s;
}

inline std::string format_stat(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

}  // namespace fastbo::experiment

#endif  // FASTBO_EXPERIMENT_HPP
