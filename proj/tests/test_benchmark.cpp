// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <string>

#include "fastbo/benchmark.hpp"
#include "fastbo/history.hpp"

using namespace fastbo;

namespace {

const char* kTwoConfigFile =
    "r_max=3 orientation=lower_better\n"
    "config a lr=0.1 act=relu\n"
    "1 0.5 1\n"
    "2 0.4 1\n"
    "3 0.35 1.5\n"
    "config b lr=0.01 act=tanh\n"
    "1 0.6 1\n"
    "2 0.45 1\n"
    "3 0.3 1\n";

SyntheticSpec small_spec() {
  SyntheticSpec spec;
  spec.n_configs = 12;
  spec.family = CurveFamily::kPow3;
  spec.a_range = {0.2, 1.0};
  spec.b_range = {1.5, 3.0};
  spec.c_range = {0.1, 0.3};
  spec.noise_sd = 0.0;
  spec.r_max = 25;
  spec.seed = 99;
  return spec;
}

}  // namespace

TEST_CASE("well-formed file parses with inferred space", "[benchmark]") {
  const BenchmarkTable t = parse_table(kTwoConfigFile);
  REQUIRE(t.size() == 2);
  REQUIRE(t.r_max() == 3);
  REQUIRE(t.keys() == std::vector<std::string>{"a", "b"});
  REQUIRE(t.loss(0, 1) == 0.5);
  REQUIRE(t.loss(1, 3) == 0.3);
  REQUIRE(t.cost(0, 3) == 1.5);
  REQUIRE(t.space().domains().size() == 2);
  REQUIRE(t.space().domains()[0].name == "lr");  // file column order
  REQUIRE(t.space().domains()[0].kind == DomainKind::kContinuous);
  REQUIRE(t.space().domains()[1].name == "act");
  REQUIRE(t.space().domains()[1].kind == DomainKind::kCategorical);
  REQUIRE(t.min_final_loss() == 0.3);
}

TEST_CASE("short curves are a validation error naming curve length", "[benchmark]") {
  const std::string bad =
      "r_max=3 orientation=lower_better\n"
      "config a x=1\n"
      "1 0.5 1\n"
      "2 0.4 1\n"
      "config b x=2\n"
      "1 0.6 1\n"
      "2 0.45 1\n"
      "3 0.3 1\n";
  try {
    parse_table(bad);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(std::string(e.what()).find("curve length") != std::string::npos);
  }
}

TEST_CASE("parse errors carry line locations", "[benchmark]") {
  REQUIRE_THROWS_AS(parse_table(""), ParseError);
  REQUIRE_THROWS_AS(parse_table("r_max=x orientation=lower_better\n"), ParseError);
  REQUIRE_THROWS_AS(parse_table("r_max=2 orientation=sideways\n"), ParseError);
  // trailing garbage after the last curve
  const std::string trailing = std::string(kTwoConfigFile) + "stray line\n";
  REQUIRE_THROWS_AS(parse_table(trailing), ParseError);
  // duplicate keys
  const std::string dup =
      "r_max=1 orientation=lower_better\n"
      "config a x=1\n"
      "1 0.5 1\n"
      "config a x=2\n"
      "1 0.6 1\n";
  REQUIRE_THROWS_AS(parse_table(dup), ValidationError);
  // non-positive cost
  const std::string badcost =
      "r_max=1 orientation=lower_better\n"
      "config a x=1\n"
      "1 0.5 0\n";
  REQUIRE_THROWS_AS(parse_table(badcost), ValidationError);
}

TEST_CASE("higher_better metrics are negated into losses and back", "[benchmark]") {
  const std::string acc =
      "r_max=2 orientation=higher_better\n"
      "config k x=1\n"
      "1 0.8 1\n"
      "2 0.83 1\n";
  const BenchmarkTable t = parse_table(acc);
  REQUIRE(t.loss(0, 2) == -0.83); // stored as loss
  const std::string out = serialize_table(t);
  REQUIRE(out.find("2 0.83 1\n") != std::string::npos); // reports un-negate
  REQUIRE(parse_table(out) == t);
}

TEST_CASE("table round trip through the file format is exact", "[benchmark]") {
  const SyntheticBenchmark synth = generate_synthetic(small_spec());
  const std::string text = serialize_table(synth.table);
  const BenchmarkTable back = parse_table(text);
  REQUIRE(back == synth.table);
  REQUIRE(serialize_table(back) == text); // canonical writer is a fixpoint
}

TEST_CASE("synthetic generation is deterministic and matches its closed form",
          "[benchmark]") {
  const SyntheticBenchmark a = generate_synthetic(small_spec());
  const SyntheticBenchmark b = generate_synthetic(small_spec());
  REQUIRE(a.table == b.table);
  REQUIRE(a.asymptotes == b.asymptotes);
  REQUIRE(a.optimum_row == b.optimum_row);

  SyntheticSpec single = small_spec();
  single.n_configs = 1;
  single.seed = 5;
  const SyntheticBenchmark s = generate_synthetic(single);
  // noiseless: the lone curve must be exactly the family closed form
  Rng rng(5);
  CurveModel m;
  m.family = CurveFamily::kPow3;
  m.a = rng.uniform(single.a_range.first, single.a_range.second);
  m.b = rng.uniform(single.b_range.first, single.b_range.second);
  m.c = rng.uniform(single.c_range.first, single.c_range.second);
  for (int r = 1; r <= single.r_max; ++r)
    REQUIRE(s.table.loss(0, r) == m.predict(static_cast<double>(r)));
  REQUIRE(s.asymptotes[0] == m.c);
}

TEST_CASE("ground-truth optimum is the argmin of asymptotes", "[benchmark]") {
  const SyntheticBenchmark synth = generate_synthetic(small_spec());
  for (double a : synth.asymptotes) REQUIRE(a >= synth.optimum_value);
  REQUIRE(synth.asymptotes[synth.optimum_row] == synth.optimum_value);
}

TEST_CASE("table objective evaluates, charges, and samples rows", "[benchmark]") {
  const BenchmarkTable t = parse_table(kTwoConfigFile);
  const TableObjective objective(t);
  const Configuration& a = t.configs()[0];
  REQUIRE(objective.value_at(a, 2) == 0.4);
  REQUIRE(objective.step_cost(a, 3) == 1.5);
  REQUIRE_THROWS_AS(objective.value_at(a, 4), ValidationError);
  REQUIRE_THROWS_AS(objective.value_at(a, 0), ValidationError);

  Configuration alien;
  alien.values["lr"] = 0.5;
  alien.values["act"] = std::string("relu");
  REQUIRE_THROWS_AS(objective.value_at(alien, 1), ValidationError);

  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Configuration c = objective.sample_configuration(t.space(), rng);
    REQUIRE_NOTHROW(t.row_of(c));
  }
}

TEST_CASE("regret traces are non-increasing, non-negative, and end at zero for an "
          "exhaustive sweep",
          "[benchmark]") {
  const SyntheticBenchmark synth = generate_synthetic(small_spec());
  const TableObjective objective(synth.table);
  HistoryRecorder rec;
  for (int row = 0; row < synth.table.size(); ++row)
    for (int r = 1; r <= synth.table.r_max(); ++r)
      rec.record(row, r, objective.value_at(synth.table.configs()[row], r),
                 objective.step_cost(synth.table.configs()[row], r));
  const History h = rec.finish();

  const auto trace = regret_trace(h, synth.table);
  REQUIRE_FALSE(trace.empty());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    REQUIRE(trace[i].regret >= 0.0);
    if (i) REQUIRE(trace[i].regret <= trace[i - 1].regret);
  }
  REQUIRE(trace.back().regret == 0.0);
  REQUIRE(trace.back().time == h.final_time());

  // against the noiseless asymptote optimum the sweep ends at the residual gap
  const auto vs_asymptote = regret_trace(h, synth.optimum_value);
  REQUIRE(vs_asymptote.back().regret >= 0.0);
}

TEST_CASE("single-config benchmark reaches zero regret at full fidelity", "[benchmark]") {
  SyntheticSpec spec = small_spec();
  spec.n_configs = 1;
  const SyntheticBenchmark synth = generate_synthetic(spec);
  const TableObjective objective(synth.table);
  HistoryRecorder rec;
  for (int r = 1; r <= synth.table.r_max(); ++r)
    rec.record(0, r, objective.value_at(synth.table.configs()[0], r), 1.0);
  const auto trace = regret_trace(rec.finish(), synth.table);
  REQUIRE(trace.back().regret == 0.0);
}

TEST_CASE("fitted fidelity points track the generating parameters", "[benchmark]") {
  SyntheticSpec spec = small_spec();
  spec.n_configs = 50;
  spec.r_max = 100;
  spec.seed = 7;
  const SyntheticBenchmark synth = generate_synthetic(spec);

  const double delta1 = 0.02, delta2 = 0.005;
  const int r_w = 10, r_max = spec.r_max;
  int matches = 0;
  Rng rng(7);
  for (int row = 0; row < spec.n_configs; ++row) {
    CurveModel truth;
    truth.family = spec.family;
    truth.a = rng.uniform(spec.a_range.first, spec.a_range.second);
    truth.b = rng.uniform(spec.b_range.first, spec.b_range.second);
    truth.c = rng.uniform(spec.c_range.first, spec.c_range.second);

    std::vector<Observation> warmup;
    for (int r = 1; r <= r_w; ++r) warmup.push_back({r, synth.table.loss(row, r)});
    const CurveModel fit = fit_curve(warmup);

    const int e_true = efficient_point(truth, delta1, r_w, r_max);
    const int s_true = saturation_point(truth, delta2, e_true, r_max);
    const int e_fit = efficient_point(fit, delta1, r_w, r_max);
    const int s_fit = saturation_point(fit, delta2, e_fit, r_max);
    if (e_true == e_fit && s_true == s_fit) ++matches;
  }
  REQUIRE(matches >= 48); // >= 95% of 50
}
