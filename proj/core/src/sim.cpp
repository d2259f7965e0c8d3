#include "rgfair/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "rgfair/adjust.hpp"
#include "rgfair/decimal.hpp"
#include "rgfair/errors.hpp"
#include "rgfair/fairtest.hpp"
#include "rgfair/mtable.hpp"
#include "rgfair/table_cache.hpp"

namespace rgfair {
namespace {

constexpr const char* kStreamDiscipline = "one substream per (seed, k, trial) via SplitMix64 mixing";

std::int64_t countRejections(const MTable& table, const SimulationConfig& config, std::int64_t begin,
                             std::int64_t end) {
  std::int64_t rejections = 0;
  const auto k = table.k();
  for (std::int64_t trial = begin; trial < end; ++trial) {
    auto rng = Xoshiro256StarStar::forStream(config.seed, static_cast<std::uint64_t>(k),
                                             static_cast<std::uint64_t>(trial));
    if (firstViolation(generateFairRanking(k, config.p, rng), table)) {
      ++rejections;
    }
  }
  return rejections;
}

std::int64_t parallelRejections(const MTable& table, const SimulationConfig& config) {
  unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, config.trials));
  if (workers <= 1) {
    return countRejections(table, config, 0, config.trials);
  }
  std::vector<std::int64_t> partial(workers, 0);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::int64_t chunk = (config.trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::int64_t begin = std::min<std::int64_t>(config.trials, w * chunk);
      const std::int64_t end = std::min<std::int64_t>(config.trials, begin + chunk);
      pool.emplace_back([&, w, begin, end] { partial[w] = countRejections(table, config, begin, end); });
    }
  }
  std::int64_t total = 0;
  for (const auto count : partial) {
    total += count;
  }
  return total;
}

} // namespace

std::vector<bool> generateFairRanking(std::int64_t k, double p, Xoshiro256StarStar& rng) {
  if (k < 1) {
    throw InvalidParameter("ranking length must be >= 1, got " + std::to_string(k));
  }
  std::vector<bool> flags(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < flags.size(); ++i) {
    flags[i] = rng.bernoulli(p);
  }
  return flags;
}

std::vector<std::int64_t> defaultKValues() {
  return {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
}

void validate(const SimulationConfig& config) {
  if (config.trials < 1) {
    throw InvalidParameter("trials must be >= 1, got " + std::to_string(config.trials));
  }
  if (config.kValues.empty()) {
    throw InvalidParameter("at least one k is required");
  }
  for (const auto k : config.kValues) {
    if (k < 1) {
      throw InvalidParameter("every k must be >= 1, got " + std::to_string(k));
    }
  }
  if (!(config.p >= 0.0 && config.p <= 1.0)) {
    throw InvalidParameter("p must be in [0,1]");
  }
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw InvalidParameter("alpha must be in [0,1]");
  }
  if (config.adjusted && !(config.p > 0.0 && config.p < 1.0 && config.alpha > 0.0 && config.alpha < 1.0)) {
    throw InvalidParameter("adjusted simulation requires p and alpha in (0,1)");
  }
}

SimulationReport runCalibration(const SimulationConfig& config, const TableCache* cache) {
  validate(config);
  SimulationReport report;
  report.generator = Xoshiro256StarStar::kName;
  report.streams = kStreamDiscipline;
  report.p = config.p;
  report.alpha = config.alpha;
  report.adjusted = config.adjusted;
  report.seed = config.seed;

  for (const auto k : config.kValues) {
    SimulationRow row;
    row.k = k;
    row.trials = config.trials;
    std::optional<MTable> table;
    if (config.adjusted) {
      auto result = adjustAlphaCached(cache, k, config.p, config.alpha);
      row.exactFailProbability = result.failProbability;
      row.tableAlpha = result.alphaAdjusted;
      table = std::move(result.table);
    } else {
      table = constructMTable(k, config.p, config.alpha);
      row.exactFailProbability = failProbability(*table);
      row.tableAlpha = config.alpha;
    }
    row.rejections = parallelRejections(*table, config);
    row.rejectionRate = static_cast<double>(row.rejections) / static_cast<double>(row.trials);
    row.standardError =
        std::sqrt(row.rejectionRate * (1.0 - row.rejectionRate) / static_cast<double>(row.trials));
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string toCsv(const SimulationReport& report) {
  std::string out = "k,rate,trials,stderr,exact_pfail\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.k) + "," + formatProbability(row.rejectionRate) + "," +
           std::to_string(row.trials) + "," + formatProbability(row.standardError) + ",";
    if (row.exactFailProbability) {
      out += formatProbability(*row.exactFailProbability);
    }
    out += "\n";
  }
  return out;
}

std::string toJson(const SimulationReport& report) {
  nlohmann::ordered_json doc;
  doc["generator"] = report.generator;
  doc["streams"] = report.streams;
  doc["seed"] = report.seed;
  doc["p"] = formatProbability(report.p);
  doc["alpha"] = formatProbability(report.alpha);
  doc["adjusted"] = report.adjusted;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json entry;
    entry["k"] = row.k;
    entry["tableAlpha"] = formatProbability(row.tableAlpha);
    entry["rate"] = formatProbability(row.rejectionRate);
    entry["rejections"] = row.rejections;
    entry["trials"] = row.trials;
    entry["stderr"] = formatProbability(row.standardError);
    entry["exact_pfail"] = row.exactFailProbability ? nlohmann::ordered_json(formatProbability(*row.exactFailProbability))
                                                    : nlohmann::ordered_json(nullptr);
    rows.push_back(std::move(entry));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

} // namespace rgfair
