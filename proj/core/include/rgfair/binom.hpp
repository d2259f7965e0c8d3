#pragma once

#include <cstdint>
#include <vector>

namespace rgfair::binom {

struct BinomialParams {
  std::int64_t trials = 0;
  double successProb = 0.0;
};

/// Throws InvalidParameter unless trials >= 0 and successProb in [0,1].
void validate(const BinomialParams& params);

/// P(X = x) for X ~ Bin(trials, successProb). Zero for x > trials (or x < 0).
///
/// Evaluated in log space so that trials in the tens of thousands neither
/// overflow the binomial coefficient nor underflow the intermediate powers.
double pmf(std::int64_t x, const BinomialParams& params);

/// P(X <= x). Returns 1 for x >= trials.
double cdf(std::int64_t x, const BinomialParams& params);

/// The whole probability mass row pmf(0..trials), computed by a log-space
/// recurrence in O(trials).
std::vector<double> pmfRow(const BinomialParams& params);

/// Smallest m >= 0 with cdf(m; position, p) >= alpha.
///
/// Requires position >= 1, 0 < p < 1 and alpha in [0,1]. The comparison is
/// non-strict, so alpha == 0 always yields 0.
std::int64_t quantile(std::int64_t position, double p, double alpha);

} // namespace rgfair::binom
