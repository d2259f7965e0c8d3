#pragma once

#include <cstdint>

#include "rgfair/mtable.hpp"

namespace rgfair {

/// Outcome of the significance search: the per-position alpha, the table it
/// produces and that table's exact probability of rejecting a fair ranking.
struct AdjustmentResult {
  double alphaAdjusted = 0.0;
  MTable table;
  double failProbability = 0.0;
};

/// Probability that a ranking drawn position-by-position from Bernoulli(p)
/// meets every block requirement, i.e. has at least j protected candidates
/// by the end of block j for all j. An empty decomposition returns 1.
///
/// Forward dynamic program over (block, cumulative protected count) with the
/// count saturated at the number of blocks: O(blocks * coveredPrefix).
double successProbability(const BlockDecomposition& blocks, double p);

/// 1 - successProbability(decompose(table), table.p()).
double failProbability(const MTable& table);

/// Largest enumeration the brute-force oracle accepts: prod(b(j) + 1).
inline constexpr double kBruteForceLimit = 1e7;

/// Exhaustive enumeration of every admissible per-block protected-count
/// vector. Only for small instances; throws InstanceTooLarge when the
/// product of (b(j) + 1) exceeds kBruteForceLimit.
double bruteForceSuccessProbability(const BlockDecomposition& blocks, double p);

/// Binary search settings for adjustAlpha.
struct AdjustOptions {
  int maxIterations = 200;
  /// Early exit when a table's fail probability is this close to alpha.
  double matchTolerance = 1e-10;
};

/// Finds the alpha_c in [0, alpha] whose table has fail probability closest
/// to alpha. Requires k >= 1, 0 < p < 1, 0 < alpha < 1.
///
/// Progress is measured by table mass: mass is non-decreasing in alpha_c and
/// identifies the table, so the search ends once the bracketing tables are
/// neighbours. Ties in |P_fail - alpha| go to the smaller mass.
AdjustmentResult adjustAlpha(std::int64_t k, double p, double alpha,
                             const AdjustOptions& options = {});

} // namespace rgfair
