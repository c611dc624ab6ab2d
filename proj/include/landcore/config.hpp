#pragma once

// Run configuration, read from a JSON file. Every key is optional:
//
//   {
//     "seed": 42,
//     "year": 2011,
//     "strata": {"block_size": 100, "high_frac": 0.6, "medium_frac": 0.3,
//                "priors": {"high": 0.9, "medium": 0.5, "low": 0.1},
//                "samples": 200},
//     "ccm": {"connectivity": 8, "cell_size": 10, "steiner": 4,
//             "default_weight": 1},
//     "demand": {"population": 0, "per_capita_demand": 0, "yield": 0}
//   }
//
// Unknown keys are rejected so that typos do not silently fall back to
// defaults.

#include "landcore/ccm.hpp"
#include "landcore/stratification.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace landcore {

struct StrataConfig {
  double block_size = 100.0;
  Thresholds thresholds;
  Priors priors;
  std::size_t samples = 200;
};

struct CcmConfig {
  Connectivity connectivity = Connectivity::eight;
  std::optional<double> cell_size; // unset: 1/100 of the longer extent side
  std::size_t steiner = 4;
  double default_weight = 1.0;
};

struct DemandConfig {
  double population = 0.0;
  double per_capita_demand = 0.0; // tonnes per person per year
  double yield = 0.0;             // tonnes per square meter per year
};

struct RunConfig {
  std::optional<std::uint64_t> seed;
  int year = 0;
  StrataConfig strata;
  CcmConfig ccm;
  DemandConfig demand;
};

// Throws ParseError or ValidationError naming the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

} // namespace landcore
