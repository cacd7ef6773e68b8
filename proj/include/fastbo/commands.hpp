// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// The four CLI commands as library functions, so tests can call them in
// process. Exit codes: 0 success, 1 configuration/parse/validation error,
// 2 runtime error (with partial outputs written and failures recorded in the
// manifest) -- never anything else.

#ifndef FASTBO_COMMANDS_HPP
#define FASTBO_COMMANDS_HPP

#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "fastbo/experiment.hpp"

namespace fastbo::experiment {

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Flag overrides map one-for-one onto config keys: "budget" hits the top
// level, "fastbo.delta1" hits [fastbo].
inline void apply_overrides(ParsedConfig& parsed, const Overrides& overrides) {
  for (const auto& [path, value] : overrides) {
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos)
      parsed.set("", path, value);
    else
      parsed.set(path.substr(0, dot), path.substr(dot + 1), value);
  }
}

namespace detail {

inline std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(seeds[i]);
  }
  return out;
}

inline std::string join_methods(const std::vector<std::string>& methods) {
  std::string out;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (i) out += ", ";
    out += methods[i];
  }
  return out;
}

// Fully resolved config: defaults materialized, so the manifest alone
// reproduces every trace.
inline std::string serialize_resolved(const ExperimentConfig& cfg) {
  std::string out;
  out += (cfg.methods.size() == 1 ? "method = " : "methods = ") + join_methods(cfg.methods) +
         "\n";
  if (!cfg.benchmark_path.empty())
    out += "benchmark = " +
           std::filesystem::absolute(cfg.benchmark_path).lexically_normal().string() + "\n";
  out += "budget = " + format_double(cfg.budget) + "\n";
  out += "seeds = " + join_seeds(cfg.seeds) + "\n";
  out += "regret_threshold = " + format_double(cfg.regret_threshold) + "\n";
  out += "r_min = " + std::to_string(cfg.r_min) + "\n";

  out += "\n[fastbo]\n";
  out += "delta1 = " + format_double(cfg.fastbo.delta1) + "\n";
  out += "delta2 = " + format_double(cfg.fastbo.delta2) + "\n";
  out += "warmup_fraction = " + format_double(cfg.fastbo.warmup_fraction) + "\n";
  out += "deterioration_patience = " + std::to_string(cfg.fastbo.deterioration_patience) + "\n";
  out += "n_init = " + std::to_string(cfg.fastbo.n_init) + "\n";
  out += "post_fraction = " + format_double(cfg.fastbo.post_fraction) + "\n";
  out += "top_m = " + std::to_string(cfg.fastbo.top_m) + "\n";
  out += "n_candidates = " + std::to_string(cfg.fastbo.n_candidates) + "\n";
  if (auto it = cfg.method_budget.find("fastbo"); it != cfg.method_budget.end())
    out += "budget = " + format_double(it->second) + "\n";

  out += "\n[bo]\n";
  out += "n_init = " + std::to_string(cfg.bo_n_init) + "\n";
  out += "n_candidates = " + std::to_string(cfg.bo_n_candidates) + "\n";
  if (auto it = cfg.method_budget.find("bo"); it != cfg.method_budget.end())
    out += "budget = " + format_double(it->second) + "\n";

  out += "\n[sha]\n";
  out += "eta = " + std::to_string(cfg.sha_eta) + "\n";
  out += "n = " + std::to_string(cfg.sha_n) + "\n";
  if (auto it = cfg.method_budget.find("sha"); it != cfg.method_budget.end())
    out += "budget = " + format_double(it->second) + "\n";

  if (cfg.synthetic) {
    const SyntheticSpec& s = *cfg.synthetic;
    out += "\n[synthetic]\n";
    out += "n_configs = " + std::to_string(s.n_configs) + "\n";
    out += std::string("family = ") + family_name(s.family) + "\n";
    out += "a_range = " + format_double(s.a_range.first) + ", " +
           format_double(s.a_range.second) + "\n";
    out += "b_range = " + format_double(s.b_range.first) + ", " +
           format_double(s.b_range.second) + "\n";
    out += "c_range = " + format_double(s.c_range.first) + ", " +
           format_double(s.c_range.second) + "\n";
    out += "noise_sd = " + format_double(s.noise_sd) + "\n";
    out += "r_max = " + std::to_string(s.r_max) + "\n";
    out += "seed = " + std::to_string(s.seed) + "\n";
  }

  if (cfg.declared_space) {
    out += "\n[space]\n";
    out += serialize_space(*cfg.declared_space);
  }
  return out;
}

struct OutputRecord {
  std::string filename;
  std::string hash;
};

inline std::string serialize_manifest(const ExperimentConfig& cfg,
                                      const std::vector<OutputRecord>& outputs,
                                      const std::vector<SeedOutcome>& failures) {
  std::string out = serialize_resolved(cfg);
  out += "\n[manifest]\n";
  out += std::string("tool_version = ") + version() + "\n";
  if (!cfg.benchmark_path.empty())
    out += "benchmark_hash = " + fnv1a_hex(read_file(cfg.benchmark_path)) + "\n";
  if (!outputs.empty()) {
    out += "\n[outputs]\n";
    for (const auto& rec : outputs) out += rec.filename + " = " + rec.hash + "\n";
  }
  if (!failures.empty()) {
    out += "\n[failures]\n";
    for (const auto& f : failures)
      out += f.method + "_seed" + std::to_string(f.seed) + " = " + f.error + "\n";
  }
  return out;
}

struct PreparedExperiment {
  ExperimentConfig cfg;
  LoadedBenchmark bench;
};

inline PreparedExperiment prepare(const std::filesystem::path& config_path,
                                  const Overrides& overrides, bool compare) {
  ParsedConfig parsed = parse_config_text(read_file(config_path));
  apply_overrides(parsed, overrides);
  ExperimentConfig cfg = resolve(parsed);
  validate_for_run(cfg, compare);
  if (!cfg.benchmark_path.empty() && !std::filesystem::exists(cfg.benchmark_path))
    throw ValidationError("benchmark file not found: " + cfg.benchmark_path);
  LoadedBenchmark bench = load_benchmark(cfg);
  return {std::move(cfg), std::move(bench)};
}

}  // namespace detail

// Runs the configured method for every seed; one trace file per seed plus a
// manifest.
inline int cmd_run(const std::filesystem::path& config_path,
                   const std::filesystem::path& outdir, const Overrides& overrides = {},
                   std::ostream& err = std::cerr) {
  detail::PreparedExperiment prep;
  try {
    prep = detail::prepare(config_path, overrides, /*compare=*/false);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    std::filesystem::create_directories(outdir);
    std::vector<detail::OutputRecord> outputs;
    std::vector<SeedOutcome> failures;
    for (const std::uint64_t seed : prep.cfg.seeds) {
      SeedOutcome o = run_one(prep.cfg.methods[0], prep.cfg, prep.bench, seed);
      if (!o.ok) {
        failures.push_back(std::move(o));
        continue;
      }
      const std::string content = serialize_trace(o.history, prep.bench.regret_baseline,
                                                  prep.bench.table.orientation());
      const std::string name = trace_filename(o.method, o.seed);
      atomic_write_file(outdir / name, content);
      outputs.push_back({name, fnv1a_hex(content)});
    }
    atomic_write_file(outdir / "manifest.txt",
                      detail::serialize_manifest(prep.cfg, outputs, failures));
    if (!failures.empty()) {
      err << "error: " << failures.front().error << "\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// Runs every (method x seed) combination and writes, besides the per-run
// traces, a long-format results file and a summary table (median and IQR of
// final regret, median time to the regret threshold).
inline int cmd_compare(const std::filesystem::path& config_path,
                       const std::filesystem::path& outdir, const Overrides& overrides = {},
                       std::ostream& err = std::cerr) {
  detail::PreparedExperiment prep;
  try {
    prep = detail::prepare(config_path, overrides, /*compare=*/true);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    std::filesystem::create_directories(outdir);
    std::vector<detail::OutputRecord> outputs;
    std::vector<SeedOutcome> failures;
    std::vector<SeedOutcome> outcomes;
    std::string results = "method\tseed\ttime\tregret\n";
    for (const auto& method : prep.cfg.methods) {
      for (const std::uint64_t seed : prep.cfg.seeds) {
        SeedOutcome o = run_one(method, prep.cfg, prep.bench, seed);
        if (o.ok) {
          const std::string content = serialize_trace(o.history, prep.bench.regret_baseline,
                                                      prep.bench.table.orientation());
          const std::string name = trace_filename(method, seed);
          atomic_write_file(outdir / name, content);
          outputs.push_back({name, fnv1a_hex(content)});
          for (const auto& p : regret_trace(o.history, prep.bench.regret_baseline))
            results += method + '\t' + std::to_string(seed) + '\t' + format_double(p.time) +
                       '\t' + format_double(p.regret) + '\n';
        } else {
          failures.push_back(o);
        }
        outcomes.push_back(std::move(o));
      }
    }
    atomic_write_file(outdir / "results.tsv", results);
    outputs.push_back({"results.tsv", fnv1a_hex(results)});

    std::string summary =
        "method\truns\tfailures\tmedian_final_regret\tiqr_final_regret\tmedian_time_to_"
        "threshold\n";
    for (const auto& method : prep.cfg.methods) {
      const MethodSummary s = summarize_method(method, outcomes);
      summary += method + '\t' + std::to_string(s.runs) + '\t' + std::to_string(s.failures) +
                 '\t' + format_stat(s.median_final_regret) + '\t' +
                 format_stat(s.iqr_final_regret) + '\t' +
                 format_stat(s.median_time_to_threshold) + '\n';
    }
    atomic_write_file(outdir / "summary.tsv", summary);
    outputs.push_back({"summary.tsv", fnv1a_hex(summary)});

    atomic_write_file(outdir / "manifest.txt",
                      detail::serialize_manifest(prep.cfg, outputs, failures));
    if (!failures.empty()) {
      err << "error: " << failures.front().error << "\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// Generates a synthetic benchmark table from the [synthetic] section of a
// spec file and writes it as a benchmark file.
inline int cmd_gen_synthetic(const std::filesystem::path& spec_path,
                             const std::filesystem::path& out_file,
                             const Overrides& overrides = {}, std::ostream& err = std::cerr,
                             std::ostream& out = std::cout) {
  try {
    ParsedConfig parsed = parse_config_text(read_file(spec_path));
    apply_overrides(parsed, overrides);
    const ExperimentConfig cfg = resolve(parsed);
    if (!cfg.synthetic) throw ValidationError("spec file needs a [synthetic] section");
    const SyntheticBenchmark synth = generate_synthetic(*cfg.synthetic);
    if (out_file.has_parent_path()) std::filesystem::create_directories(out_file.parent_path());
    write_table(synth.table, out_file);
    out << "wrote " << out_file.string() << ": " << synth.table.size() << " configs, r_max="
        << synth.table.r_max() << ", optimum row " << synth.optimum_row << " (asymptote "
        << format_double(synth.optimum_value) << ")\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

// Parses and validates a benchmark file.
inline int cmd_validate(const std::filesystem::path& benchmark_path,
                        std::ostream& err = std::cerr, std::ostream& out = std::cout) {
  try {
    const BenchmarkTable table = load_table(benchmark_path);
    out << "ok: " << table.size() << " configs, r_max=" << table.r_max() << ", orientation="
        << (table.orientation() == Orientation::kHigherBetter ? "higher_better"
                                                              : "lower_better")
        << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fastbo::experiment

#endif  // FASTBO_COMMANDS_HPP
