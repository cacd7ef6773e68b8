// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_SEARCH_SPACE_HPP
#define FASTBO_SEARCH_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fastbo/errors.hpp"
#include "fastbo/rng.hpp"

namespace fastbo {

enum class DomainKind { kContinuous, kInteger, kCategorical };
enum class Scale { kLinear, kLogarithmic };

// One hyperparameter (or architecture choice). Numeric kinds use [lo, hi]
// bounds with an optional log scale; categorical kinds use an ordered,
// duplicate-free choice list.
struct HyperparameterDomain {
  std::string name;
  DomainKind kind = DomainKind::kContinuous;
  double lo = 0.0;
  double hi = 1.0;
  Scale scale = Scale::kLinear;
  std::vector<std::string> choices;

  static HyperparameterDomain continuous(std::string name, double lo, double hi,
                                         Scale scale = Scale::kLinear) {
    HyperparameterDomain d;
    d.name = std::move(name);
    d.kind = DomainKind::kContinuous;
    d.lo = lo;
    d.hi = hi;
    d.scale = scale;
    d.check();
    return d;
  }

  static HyperparameterDomain integer(std::string name, long lo, long hi,
                                      Scale scale = Scale::kLinear) {
    HyperparameterDomain d;
    d.name = std::move(name);
    d.kind = DomainKind::kInteger;
    d.lo = static_cast<double>(lo);
    d.hi = static_cast<double>(hi);
    d.scale = scale;
    d.check();
    return d;
  }

  static HyperparameterDomain categorical(std::string name, std::vector<std::string> choices) {
    HyperparameterDomain d;
    d.name = std::move(name);
    d.kind = DomainKind::kCategorical;
    d.choices = std::move(choices);
    d.check();
    return d;
  }

  bool is_numeric() const { return kind != DomainKind::kCategorical; }

  std::size_t encoded_width() const { return is_numeric() ? 1 : choices.size(); }

  bool operator==(const HyperparameterDomain&) const = default;

  void check() const {
    if (name.empty()) throw ValidationError("domain has empty name");
    if (is_numeric()) {
      if (!(lo < hi)) throw ValidationError("domain '" + name + "': lo must be < hi");
      if (scale == Scale::kLogarithmic && !(lo > 0.0))
        throw ValidationError("domain '" + name + "': log scale requires lo > 0");
    } else {
      if (choices.empty()) throw ValidationError("domain '" + name + "': no choices");
      std::set<std::string> seen(choices.begin(), choices.end());
      if (seen.size() != choices.size())
        throw ValidationError("domain '" + name + "': duplicate choices");
    }
  }
};

// A configuration value: number for numeric domains, label for categorical.
using Value = std::variant<double, std::string>;

// A point in the search space, keyed by domain name.
struct Configuration {
  std::map<std::string, Value> values;

  double number(const std::string& name) const { return std::get<double>(values.at(name)); }
  const std::string& label(const std::string& name) const {
    return std::get<std::string>(values.at(name));
  }
  bool operator==(const Configuration& other) const { return values == other.values; }
};

class SearchSpace {
 public:
  SearchSpace() = default;

  explicit SearchSpace(std::vector<HyperparameterDomain> domains)
      : domains_(std::move(domains)) {
    std::set<std::string> names;
    encoded_dim_ = 0;
    for (const auto& d : domains_) {
      d.check();
      if (!names.insert(d.name).second)
        throw ValidationError("duplicate domain name '" + d.name + "'");
      encoded_dim_ += d.encoded_width();
    }
  }

  const std::vector<HyperparameterDomain>& domains() const { return domains_; }
  std::size_t encoded_dim() const { return encoded_dim_; }

  bool operator==(const SearchSpace& other) const { return domains_ == other.domains_; }

  void validate(const Configuration& config) const {
    if (config.values.size() != domains_.size())
      throw ValidationError("configuration has " + std::to_string(config.values.size()) +
                            " values, space has " + std::to_string(domains_.size()) +
                            " domains");
    for (const auto& d : domains_) check_value(d, config);
  }

  Configuration sample(Rng& rng) const {
    Configuration c;
    for (const auto& d : domains_) {
      switch (d.kind) {
        case DomainKind::kContinuous:
          c.values[d.name] = d.scale == Scale::kLogarithmic
                                 ? std::exp(rng.uniform(std::log(d.lo), std::log(d.hi)))
                                 : rng.uniform(d.lo, d.hi);
          break;
        case DomainKind::kInteger: {
          double v;
          if (d.scale == Scale::kLogarithmic) {
            v = std::round(std::exp(rng.uniform(std::log(d.lo), std::log(d.hi))));
          } else {
            v = static_cast<double>(
                rng.uniform_int(static_cast<long>(d.lo), static_cast<long>(d.hi)));
          }
          c.values[d.name] = std::clamp(v, d.lo, d.hi);
          break;
        }
        case DomainKind::kCategorical:
          c.values[d.name] = d.choices[rng.uniform_index(d.choices.size())];
          break;
      }
    }
    return c;
  }

  // Maps a configuration to a vector in [0,1]^encoded_dim: numeric domains
  // affinely (after log transform when the scale is logarithmic), categorical
  // domains as one-hot blocks.
  std::vector<double> encode(const Configuration& config) const {
    std::vector<double> out;
    out.reserve(encoded_dim_);
    for (const auto& d : domains_) {
      check_value(d, config);
      if (d.is_numeric()) {
        const double x = std::get<double>(config.values.at(d.name));
        out.push_back(to_unit(d, x));
      } else {
        const auto& label = std::get<std::string>(config.values.at(d.name));
        for (const auto& choice : d.choices) out.push_back(choice == label ? 1.0 : 0.0);
      }
    }
    return out;
  }

  // Inverse of encode: exact for categorical (argmax of the block), affine
  // inverse for numeric, with integer domains rounded.
  Configuration decode(const std::vector<double>& enc) const {
    if (enc.size() != encoded_dim_)
      throw ValidationError("encoded vector has dimension " + std::to_string(enc.size()) +
                            ", expected " + std::to_string(encoded_dim_));
    Configuration c;
    std::size_t at = 0;
    for (const auto& d : domains_) {
      if (d.is_numeric()) {
        double x = from_unit(d, enc[at++]);
        if (d.kind == DomainKind::kInteger) x = std::round(x);
        c.values[d.name] = std::clamp(x, d.lo, d.hi);
      } else {
        std::size_t best = 0;
        for (std::size_t j = 1; j < d.choices.size(); ++j)
          if (enc[at + j] > enc[at + best]) best = j;
        c.values[d.name] = d.choices[best];
        at += d.choices.size();
      }
    }
    return c;
  }

 private:
  static void check_value(const HyperparameterDomain& d, const Configuration& config) {
    auto it = config.values.find(d.name);
    if (it == config.values.end())
      throw ValidationError("domain '" + d.name + "': no value in configuration");
    if (d.is_numeric()) {
      if (!std::holds_alternative<double>(it->second))
        throw ValidationError("domain '" + d.name + "': expected a number");
      const double x = std::get<double>(it->second);
      if (!std::isfinite(x) || x < d.lo || x > d.hi)
        throw ValidationError("domain '" + d.name + "': value out of bounds");
    } else {
      if (!std::holds_alternative<std::string>(it->second))
        throw ValidationError("domain '" + d.name + "': expected a label");
      const auto& label = std::get<std::string>(it->second);
      if (std::find(d.choices.begin(), d.choices.end(), label) == d.choices.end())
        throw ValidationError("domain '" + d.name + "': label '" + label + "' not a choice");
    }
  }

  static double to_unit(const HyperparameterDomain& d, double x) {
    if (d.scale == Scale::kLogarithmic)
      return (std::log(x) - std::log(d.lo)) / (std::log(d.hi) - std::log(d.lo));
    return (x - d.lo) / (d.hi - d.lo);
  }

  static double from_unit(const HyperparameterDomain& d, double t) {
    if (d.scale == Scale::kLogarithmic)
      return std::exp(std::log(d.lo) + t * (std::log(d.hi) - std::log(d.lo)));
    return d.lo + t * (d.hi - d.lo);
  }

  std::vector<HyperparameterDomain> domains_;
  std::size_t encoded_dim_ = 0;
};

}  // namespace fastbo

#endif  // FASTBO_SEARCH_SPACE_HPP
