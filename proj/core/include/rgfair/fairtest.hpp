#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rgfair/mtable.hpp"

namespace rgfair {

struct Candidate {
  std::string id;
  double score = 0.0;
  bool isProtected = false;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Position 1 is items.front().
struct Ranking {
  std::vector<Candidate> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  friend bool operator==(const Ranking&, const Ranking&) = default;
};

struct Violation {
  std::int64_t position = 0;
  std::int64_t required = 0;
  std::int64_t actual = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerificationReport {
  bool passed = true;
  std::optional<std::int64_t> firstViolationPosition;
  std::vector<Violation> violations;
};

/// Checks positions 1..min(k, ranking length): the ranking passes iff the
/// protected count of every checked prefix meets the table. Throws
/// InvalidParameter for an empty ranking.
VerificationReport verify(const Ranking& ranking, const MTable& table);

/// Flag-only variant used by the simulator. Returns the first failing
/// position, or nothing if every checked prefix meets the table.
std::optional<std::int64_t> firstViolation(const std::vector<bool>& protectedFlags,
                                           const MTable& table);

/// Builds the top-k ranking (k = table.k()) from two score-sorted lists.
///
/// Each position takes the better-scored head of the two lists unless the
/// table would otherwise be violated, in which case the protected head is
/// placed. Equal scores favour the protected candidate. Both lists must be
/// sorted by score descending and correctly flagged, and together contain at
/// least k candidates (InvalidParameter otherwise). Throws Infeasible when
/// the table requires a protected candidate and none is left.
Ranking rerank(std::span<const Candidate> protectedList,
               std::span<const Candidate> nonProtectedList, const MTable& table);

} // namespace rgfair
