// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "fastbo/search_space.hpp"
#include "support/oracles.hpp"

using namespace fastbo;

namespace {

SearchSpace mixed_space() {
  return SearchSpace({
      HyperparameterDomain::continuous("lr", 1e-4, 1e-1, Scale::kLogarithmic),
      HyperparameterDomain::continuous("momentum", 0.0, 1.0),
      HyperparameterDomain::integer("units", 16, 256, Scale::kLogarithmic),
      HyperparameterDomain::categorical("act", {"relu", "tanh", "gelu"}),
  });
}

}  // namespace

TEST_CASE("domain invariants are enforced at construction", "[search_space]") {
  REQUIRE_THROWS_AS(HyperparameterDomain::continuous("x", 1.0, 1.0), ValidationError);
  REQUIRE_THROWS_AS(HyperparameterDomain::continuous("x", 2.0, 1.0), ValidationError);
  REQUIRE_THROWS_AS(HyperparameterDomain::continuous("x", 0.0, 1.0, Scale::kLogarithmic),
                    ValidationError);
  REQUIRE_THROWS_AS(HyperparameterDomain::categorical("x", {}), ValidationError);
  REQUIRE_THROWS_AS(HyperparameterDomain::categorical("x", {"a", "a"}), ValidationError);
  REQUIRE_THROWS_AS(SearchSpace({HyperparameterDomain::continuous("x", 0, 1),
                                 HyperparameterDomain::continuous("x", 0, 1)}),
                    ValidationError);
}

TEST_CASE("encoded_dim equals the one-hot/numeric expansion", "[search_space]") {
  const SearchSpace space = mixed_space();
  REQUIRE(space.encoded_dim() == 1 + 1 + 1 + 3);
  Rng rng(7);
  for (int i = 0; i < 50; ++i)
    REQUIRE(space.encode(space.sample(rng)).size() == space.encoded_dim());
}

TEST_CASE("single-choice categorical always samples the only configuration",
          "[search_space]") {
  const SearchSpace space({HyperparameterDomain::categorical("only", {"a"})});
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Configuration c = space.sample(rng);
    REQUIRE(c.label("only") == "a");
  }
}

TEST_CASE("uniform sampling passes a KS test at alpha=0.01", "[search_space]") {
  const SearchSpace space({HyperparameterDomain::continuous("x", 0.0, 1.0)});
  Rng rng(12345);
  std::vector<double> draws;
  for (int i = 0; i < 10000; ++i) draws.push_back(space.sample(rng).number("x"));
  REQUIRE(oracle::ks_statistic_uniform01(draws) < oracle::ks_critical_001(draws.size()));
}

TEST_CASE("log-scale sampling is uniform in log space", "[search_space]") {
  const SearchSpace space(
      {HyperparameterDomain::continuous("lr", 1e-4, 1e-1, Scale::kLogarithmic)});
  Rng rng(999);
  std::vector<double> unit;
  for (int i = 0; i < 10000; ++i) {
    const double v = space.sample(rng).number("lr");
    REQUIRE(v >= 1e-4);
    REQUIRE(v <= 1e-1);
    unit.push_back((std::log10(v) + 4.0) / 3.0); // log10 uniform on [-4, -1]
  }
  REQUIRE(oracle::ks_statistic_uniform01(unit) < oracle::ks_critical_001(unit.size()));
}

TEST_CASE("categorical encoding is one-hot", "[search_space]") {
  const SearchSpace space({HyperparameterDomain::categorical("k", {"a", "b", "c"})});
  Configuration c;
  c.values["k"] = std::string("b");
  REQUIRE(space.encode(c) == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("log-scale encoding maps endpoints and midpoints affinely", "[search_space]") {
  const SearchSpace space(
      {HyperparameterDomain::continuous("lr", 1e-4, 1e-1, Scale::kLogarithmic)});
  Configuration c;
  c.values["lr"] = 1e-4;
  REQUIRE(space.encode(c)[0] == 0.0);
  c.values["lr"] = std::pow(10.0, -2.5);
  REQUIRE(std::abs(space.encode(c)[0] - 0.5) < 1e-12);
  c.values["lr"] = 1e-1;
  REQUIRE(std::abs(space.encode(c)[0] - 1.0) < 1e-12);
}

TEST_CASE("encode rejects out-of-domain values naming the domain", "[search_space]") {
  const SearchSpace space = mixed_space();
  Rng rng(1);
  Configuration c = space.sample(rng);
  c.values["lr"] = 0.5; // above hi = 1e-1
  try {
    space.encode(c);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(std::string(e.what()).find("lr") != std::string::npos);
  }
  Configuration bad_label = space.sample(rng);
  bad_label.values["act"] = std::string("swish");
  REQUIRE_THROWS_AS(space.encode(bad_label), ValidationError);
}

TEST_CASE("decode inverts encode", "[search_space]") {
  const SearchSpace space = mixed_space();
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const Configuration c = space.sample(rng);
    const Configuration back = space.decode(space.encode(c));
    REQUIRE(back.label("act") == c.label("act"));
    REQUIRE(back.number("units") == c.number("units")); // integer: exact after rounding
    REQUIRE(std::abs(back.number("momentum") - c.number("momentum")) <=
            1e-12 * std::max(1.0, std::abs(c.number("momentum"))));
    REQUIRE(std::abs(back.number("lr") - c.number("lr")) <= 1e-12 * std::abs(c.number("lr")));
  }
}

TEST_CASE("sampling is reproducible for equal seeds", "[search_space]") {
  const SearchSpace space = mixed_space();
  Rng a(2024), b(2024);
  for (int i = 0; i < 100; ++i) REQUIRE(space.sample(a) == space.sample(b));
}

TEST_CASE("integer sampling stays on integers and covers bounds", "[search_space]") {
  const SearchSpace space({HyperparameterDomain::integer("n", 1, 4)});
  Rng rng(5);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 2000; ++i) {
    const double v = space.sample(rng).number("n");
    REQUIRE(v == std::floor(v));
    REQUIRE(v >= 1.0);
    REQUIRE(v <= 4.0);
    saw_lo = saw_lo || v == 1.0;
    saw_hi = saw_hi || v == 4.0;
  }
  REQUIRE(saw_lo);
  REQUIRE(saw_hi);
}
