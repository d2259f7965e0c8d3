#include "rgfair/adjust.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "rgfair/binom.hpp"
#include "rgfair/errors.hpp"

namespace rgfair {
namespace {

void requireOpenUnit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw InvalidParameter(std::string(name) + " must be in (0,1), got " + std::to_string(value));
  }
}

double clampProbability(double value) { return std::clamp(value, 0.0, 1.0); }

} // namespace

double successProbability(const BlockDecomposition& blocks, double p) {
  if (blocks.empty()) {
    return 1.0;
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameter("p must be in [0,1], got " + std::to_string(p));
  }
  const auto cap = static_cast<std::int64_t>(blocks.size());
  // dist[c]: probability of having c protected so far (c == cap means >= cap)
  // with every earlier block requirement met.
  std::vector<double> dist(static_cast<std::size_t>(cap + 1), 0.0);
  std::vector<double> next(dist.size(), 0.0);
  dist[0] = 1.0;
  std::int64_t low = 0;
  std::int64_t high = 0;

  for (std::int64_t j = 1; j <= cap; ++j) {
    const std::int64_t length = blocks.blockLengths[static_cast<std::size_t>(j - 1)];
    const auto row = binom::pmfRow({length, p});
    // tail[x] = P(X >= x)
    std::vector<double> tail(row.size() + 1, 0.0);
    for (std::int64_t x = length; x >= 0; --x) {
      tail[static_cast<std::size_t>(x)] = tail[static_cast<std::size_t>(x + 1)] + row[static_cast<std::size_t>(x)];
    }

    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t c = low; c <= high; ++c) {
      const double weight = dist[static_cast<std::size_t>(c)];
      if (weight == 0.0) {
        continue;
      }
      const std::int64_t room = cap - c;
      const std::int64_t direct = std::min(length, room - 1);
      // Only counts reaching j survive this block.
      for (std::int64_t x = std::max<std::int64_t>(0, j - c); x <= direct; ++x) {
        next[static_cast<std::size_t>(c + x)] += weight * row[static_cast<std::size_t>(x)];
      }
      if (room <= length) {
        next[static_cast<std::size_t>(cap)] += weight * tail[static_cast<std::size_t>(std::max(room, j - c))];
      }
    }
    std::swap(dist, next);
    low = j;
    high = std::min(cap, high + length);
  }
  return clampProbability(dist[static_cast<std::size_t>(cap)]);
}

double failProbability(const MTable& table) {
  const auto blocks = decompose(table);
  if (blocks.empty()) {
    return 0.0;
  }
  return clampProbability(1.0 - successProbability(blocks, table.p()));
}

double bruteForceSuccessProbability(const BlockDecomposition& blocks, double p) {
  double combinations = 1.0;
  for (const auto length : blocks.blockLengths) {
    combinations *= static_cast<double>(length + 1);
  }
  if (combinations > kBruteForceLimit) {
    throw InstanceTooLarge("brute-force enumeration of " + std::to_string(combinations) +
                           " combinations exceeds the limit");
  }
  if (blocks.empty()) {
    return 1.0;
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(blocks.size());
  for (const auto length : blocks.blockLengths) {
    rows.push_back(binom::pmfRow({length, p}));
  }

  // Odometer over v = (i_1..i_m), 0 <= i_j <= b(j); a vector counts when all
  // prefix sums satisfy sum_{j<=l} i_j >= l.
  const std::size_t m = blocks.size();
  std::vector<std::int64_t> counts(m, 0);
  double total = 0.0;
  while (true) {
    std::int64_t prefix = 0;
    bool admissible = true;
    double product = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      prefix += counts[j];
      if (prefix < static_cast<std::int64_t>(j + 1)) {
        admissible = false;
        break;
      }
      product *= rows[j][static_cast<std::size_t>(counts[j])];
    }
    if (admissible) {
      total += product;
    }

    std::size_t digit = 0;
    while (digit < m && counts[digit] == blocks.blockLengths[digit]) {
      counts[digit] = 0;
      ++digit;
    }
    if (digit == m) {
      break;
    }
    ++counts[digit];
  }
  return total;
}

namespace {

struct Candidate {
  double alpha;
  std::int64_t mass;
  double failProbability;
};

class CandidateEvaluator {
public:
  CandidateEvaluator(std::int64_t k, double p) : k_(k), p_(p) {}

  Candidate evaluate(double alpha) {
    const auto table = constructMTable(k_, p_, alpha);
    const auto tableMass = mass(table);
    auto found = failByMass_.find(tableMass);
    if (found == failByMass_.end()) {
      found = failByMass_.emplace(tableMass, failProbability(table)).first;
    }
    return {alpha, tableMass, found->second};
  }

private:
  std::int64_t k_;
  double p_;
  std::map<std::int64_t, double> failByMass_;
};

Candidate closest(std::initializer_list<Candidate> candidates, double alpha) {
  const Candidate* best = nullptr;
  double bestDiff = 0.0;
  for (const auto& candidate : candidates) {
    const double diff = std::fabs(candidate.failProbability - alpha);
    if (best == nullptr || diff < bestDiff || (diff == bestDiff && candidate.mass < best->mass)) {
      best = &candidate;
      bestDiff = diff;
    }
  }
  return *best;
}

} // namespace

AdjustmentResult adjustAlpha(std::int64_t k, double p, double alpha, const AdjustOptions& options) {
  if (k < 1) {
    throw InvalidParameter("k must be >= 1, got " + std::to_string(k));
  }
  requireOpenUnit(p, "p");
  requireOpenUnit(alpha, "alpha");

  CandidateEvaluator evaluator(k, p);
  auto finish = [&](const Candidate& chosen) {
    auto table = constructMTable(k, p, chosen.alpha);
    return AdjustmentResult{chosen.alpha, std::move(table), chosen.failProbability};
  };

  Candidate low = evaluator.evaluate(0.0);
  Candidate high = evaluator.evaluate(alpha);
  // Nothing in [0, alpha] rejects more often than the unadjusted table.
  if (high.failProbability <= alpha + options.matchTolerance) {
    return finish(high);
  }

  for (int iteration = 0; iteration < options.maxIterations; ++iteration) {
    if (high.mass - low.mass <= 1) {
      return finish(closest({low, high}, alpha));
    }
    const double midAlpha = low.alpha + (high.alpha - low.alpha) / 2.0;
    // Bracket collapsed in double precision: low and high are neighbours even
    // though their masses differ by more than one.
    if (!(midAlpha > low.alpha && midAlpha < high.alpha)) {
      return finish(closest({low, high}, alpha));
    }
    const Candidate mid = evaluator.evaluate(midAlpha);
    if (std::fabs(mid.failProbability - alpha) <= options.matchTolerance) {
      return finish(mid);
    }
    if (high.mass - mid.mass == 1 && mid.mass - low.mass == 1) {
      return finish(closest({low, mid, high}, alpha));
    }
    if (mid.failProbability < alpha) {
      low = mid;
    } else {
      high = mid;
    }
  }
  throw SearchDiverged("alpha search did not converge within " +
                       std::to_string(options.maxIterations) + " iterations");
}

} // namespace rgfair
