// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands:
//   run <config> -o <dir>          one method, one trace file per seed
//   compare <config> -o <dir>      several methods, traces + results + summary
//   gen-synthetic <spec> -o <file> write a synthetic benchmark table
//   validate <benchmark-file>      parse and check a benchmark file

#include <CLI11.hpp>
#include <string>
#include <utility>
#include <vector>

#include "fastbo/commands.hpp"
#include "fastbo/version.hpp"

namespace {

// Named flags override config keys one-for-one; --set reaches any
// section.key. Later flags win.
struct OverrideFlags {
  std::vector<std::string> sets;
  std::string method, methods, benchmark, budget, seeds, regret_threshold, r_min;

  fastbo::experiment::Overrides collect() const {
    fastbo::experiment::Overrides out;
    const auto add = [&out](const char* key, const std::string& value) {
      if (!value.empty()) out.emplace_back(key, value);
    };
    add("method", method);
    add("methods", methods);
    add("benchmark", benchmark);
    add("budget", budget);
    add("seeds", seeds);
    add("regret_threshold", regret_threshold);
    add("r_min", r_min);
    for (const auto& kv : sets) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
      out.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return out;
  }
};

void add_override_flags(CLI::App* cmd, OverrideFlags& flags) {
  cmd->add_option("--set", flags.sets,
                  "override a config key (key=value or section.key=value), repeatable");
  cmd->add_option("--method", flags.method, "override the method");
  cmd->add_option("--methods", flags.methods, "override the method list");
  cmd->add_option("--benchmark", flags.benchmark, "override the benchmark path");
  cmd->add_option("--budget", flags.budget, "override the budget");
  cmd->add_option("--seeds", flags.seeds, "override the seed list");
  cmd->add_option("--regret-threshold", flags.regret_threshold,
                  "override the regret threshold");
  cmd->add_option("--r-min", flags.r_min, "override the minimum resource");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-fidelity hyperparameter optimization experiments"};
  app.set_version_flag("--version", FASTBO_VERSION_STRING);
  app.require_subcommand(1);

  std::string run_config, run_out;
  OverrideFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "run one method for every seed");
  run_cmd->add_option("config", run_config, "experiment config file")->required();
  run_cmd->add_option("-o,--out", run_out, "output directory")->required();
  add_override_flags(run_cmd, run_flags);

  std::string cmp_config, cmp_out;
  OverrideFlags cmp_flags;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "run several methods for every seed");
  cmp_cmd->add_option("config", cmp_config, "experiment config file")->required();
  cmp_cmd->add_option("-o,--out", cmp_out, "output directory")->required();
  add_override_flags(cmp_cmd, cmp_flags);

  std::string gen_spec, gen_out;
  OverrideFlags gen_flags;
  CLI::App* gen_cmd = app.add_subcommand("gen-synthetic", "generate a synthetic benchmark");
  gen_cmd->add_option("spec", gen_spec, "spec file with a [synthetic] section")->required();
  gen_cmd->add_option("-o,--out", gen_out, "output benchmark file")->required();
  add_override_flags(gen_cmd, gen_flags);

  std::string val_file;
  CLI::App* val_cmd = app.add_subcommand("validate", "validate a benchmark file");
  val_cmd->add_option("file", val_file, "benchmark file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run_cmd->parsed())
      return fastbo::experiment::cmd_run(run_config, run_out, run_flags.collect());
    if (cmp_cmd->parsed())
      return fastbo::experiment::cmd_compare(cmp_config, cmp_out, cmp_flags.collect());
    if (gen_cmd->parsed())
      return fastbo::experiment::cmd_gen_synthetic(gen_spec, gen_out, gen_flags.collect());
    if (val_cmd->parsed()) return fastbo::experiment::cmd_validate(val_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
