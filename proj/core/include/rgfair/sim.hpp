#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgfair/random.hpp"

namespace rgfair {
class TableCache;
}

namespace rgfair {

/// k independent Bernoulli(p) draws, one generator output per position.
std::vector<bool> generateFairRanking(std::int64_t k, double p, Xoshiro256StarStar& rng);

/// Log-spaced k grid used when no explicit list is given.
std::vector<std::int64_t> defaultKValues();

struct SimulationConfig {
  std::vector<std::int64_t> kValues = defaultKValues();
  double p = 0.5;
  double alpha = 0.1;
  std::int64_t trials = 10'000;
  std::uint64_t seed = 0;
  /// Test against adjustAlpha(k, p, alpha).table instead of the unadjusted
  /// constructMTable(k, p, alpha).
  bool adjusted = false;
  /// Worker threads for the trials of one k; 0 picks hardware concurrency.
  /// Results do not depend on this value.
  unsigned threads = 1;
};

/// Throws InvalidParameter unless trials >= 1, kValues is non-empty with
/// every k >= 1, p in [0,1] and alpha in [0,1] (open interval when adjusted).
void validate(const SimulationConfig& config);

struct SimulationRow {
  std::int64_t k = 0;
  /// alpha the tested table was built with (alpha_adj when adjusted).
  double tableAlpha = 0.0;
  std::int64_t rejections = 0;
  std::int64_t trials = 0;
  double rejectionRate = 0.0;
  /// sqrt(rate * (1 - rate) / trials)
  double standardError = 0.0;
  std::optional<double> exactFailProbability;
};

struct SimulationReport {
  std::string generator;
  std::string streams;
  double p = 0.0;
  double alpha = 0.0;
  bool adjusted = false;
  std::uint64_t seed = 0;
  std::vector<SimulationRow> rows;
};

/// For each k: build the table, run `trials` fair rankings through it (trial t
/// draws from stream (seed, k, t)) and record the rejection fraction next to
/// the exact fail probability. Deterministic in the config regardless of the
/// thread count. Adjusted tables go through `cache` when one is given.
SimulationReport runCalibration(const SimulationConfig& config, const TableCache* cache = nullptr);

/// CSV with header `k,rate,trials,stderr,exact_pfail`; probabilities use 12
/// significant digits and a missing exact value is an empty field.
std::string toCsv(const SimulationReport& report);

/// JSON document with the run parameters, generator identity and the rows;
/// probabilities are decimal strings.
std::string toJson(const SimulationReport& report);

} // namespace rgfair
