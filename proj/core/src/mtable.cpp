#include "rgfair/mtable.hpp"

#include <numeric>
#include <string>

#include "rgfair/binom.hpp"
#include "rgfair/errors.hpp"

namespace rgfair {

MTable::MTable(std::vector<std::int64_t> entries, double p, double alpha)
    : entries_(std::move(entries)), p_(p), alpha_(alpha) {
  if (!isValid(entries_)) {
    throw InvalidParameter("mTable entries are not a valid table");
  }
  if (!(p >= 0.0 && p <= 1.0) || !(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("mTable p and alpha must lie in [0,1]");
  }
}

std::int64_t MTable::at(std::int64_t position) const {
  if (position < 1 || position > k()) {
    throw InvalidParameter("mTable position " + std::to_string(position) + " outside 1.." +
                           std::to_string(k()));
  }
  return entries_[static_cast<std::size_t>(position - 1)];
}

MTable constructMTable(std::int64_t k, double p, double alpha) {
  if (k < 1) {
    throw InvalidParameter("k must be >= 1, got " + std::to_string(k));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameter("p must be in [0,1], got " + std::to_string(p));
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("alpha must be in [0,1], got " + std::to_string(alpha));
  }
  std::vector<std::int64_t> entries(static_cast<std::size_t>(k), 0);
  if (p == 1.0 && alpha > 0.0) {
    std::iota(entries.begin(), entries.end(), std::int64_t{1});
  } else if (p > 0.0 && p < 1.0) {
    for (std::int64_t i = 1; i <= k; ++i) {
      entries[static_cast<std::size_t>(i - 1)] = binom::quantile(i, p, alpha);
    }
  }
  return MTable(std::move(entries), p, alpha);
}

BlockDecomposition decompose(const MTable& table) {
  BlockDecomposition blocks;
  std::int64_t reached = 0;
  std::int64_t previousBoundary = 0;
  for (std::int64_t position = 1; position <= table.k(); ++position) {
    if (table.at(position) > reached) {
      reached = table.at(position);
      blocks.boundaries.push_back(position);
      blocks.blockLengths.push_back(position - previousBoundary);
      previousBoundary = position;
    }
  }
  blocks.coveredPrefix = previousBoundary;
  return blocks;
}

std::int64_t mass(const MTable& table) {
  const auto entries = table.entries();
  return std::accumulate(entries.begin(), entries.end(), std::int64_t{0});
}

bool isValid(std::span<const std::int64_t> entries) {
  if (entries.empty() || entries.front() < 0 || entries.front() > 1) {
    return false;
  }
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const auto step = entries[i] - entries[i - 1];
    if (step < 0 || step > 1) {
      return false;
    }
  }
  return true;
}

} // namespace rgfair
