#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rgfair {

/// Minimum number of protected candidates required in each prefix of a
/// ranking: at(i) is the requirement for the top i positions, i = 1..k.
///
/// Always valid (non-decreasing, unit steps, at(1) in {0,1}); the constructor
/// rejects anything else. Storage is 0-based, every accessor is 1-based.
class MTable {
public:
  MTable(std::vector<std::int64_t> entries, double p, double alpha);

  std::int64_t k() const { return static_cast<std::int64_t>(entries_.size()); }
  double p() const { return p_; }
  double alpha() const { return alpha_; }

  /// Requirement for the top `position` candidates, 1 <= position <= k.
  std::int64_t at(std::int64_t position) const;
  std::span<const std::int64_t> entries() const { return entries_; }

  /// Requirement at position k (0 for an empty requirement set).
  std::int64_t finalRequirement() const { return entries_.back(); }

  friend bool operator==(const MTable& a, const MTable& b) = default;

private:
  std::vector<std::int64_t> entries_;
  double p_;
  double alpha_;
};

/// Blocks between consecutive increases of an mTable. Positions after the
/// last increase impose nothing new and are not part of any block.
struct BlockDecomposition {
  std::vector<std::int64_t> blockLengths;
  /// boundaries[i-1] is the first position requiring i protected candidates.
  std::vector<std::int64_t> boundaries;
  std::int64_t coveredPrefix = 0;

  std::size_t size() const { return blockLengths.size(); }
  bool empty() const { return blockLengths.empty(); }

  friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;
};

/// entries[i] = quantile(i, p, alpha) for i = 1..k.
///
/// p = 0 gives the all-zero table; p = 1 gives m(i) = i for alpha > 0 and the
/// all-zero table for alpha = 0. Throws InvalidParameter for k < 1 or p, alpha
/// outside [0,1].
MTable constructMTable(std::int64_t k, double p, double alpha);

BlockDecomposition decompose(const MTable& table);

/// Sum of all entries.
std::int64_t mass(const MTable& table);

/// Non-decreasing, steps of at most one, first entry 0 or 1, no negatives.
/// The empty vector is not a table.
bool isValid(std::span<const std::int64_t> entries);

} // namespace rgfair
