#include "rgfair/binom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgfair/errors.hpp"

namespace rgfair::binom {
namespace {

// Neumaier-compensated running sum; keeps the log-pmf recurrence accurate to
// a few ulps even after tens of thousands of steps.
class CompensatedSum {
public:
  explicit CompensatedSum(double start) : sum_(start) {}

  void add(double term) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

private:
  double sum_;
  double comp_ = 0.0;
};

// Below this starting mass (1-p)^n the linear recurrence would underflow.
constexpr double kLinearFloor = 1e-280;

// Visits pmf(x) for x = 0..last (last <= n) in order, for 0 < p < 1. Stops
// early when the visitor returns false.
//
// The linear recurrence multiplies before dividing, so at p = 1/2 every value
// is exact while the binomial coefficient fits in 53 bits and ties between
// cdf values stay ties. Long rankings fall back to the log-space recurrence.
template <class Visitor>
void forEachPmf(std::int64_t n, double p, std::int64_t last, Visitor&& visit) {
  const double logStart = static_cast<double>(n) * std::log1p(-p);
  if (logStart >= std::log(kLinearFloor)) {
    const double odds = p / (1.0 - p);
    double value = std::pow(1.0 - p, static_cast<double>(n));
    if (!visit(std::int64_t{0}, value)) {
      return;
    }
    for (std::int64_t x = 1; x <= last; ++x) {
      value = value * static_cast<double>(n - x + 1) / static_cast<double>(x) * odds;
      if (!visit(x, value)) {
        return;
      }
    }
    return;
  }
  const double logOdds = std::log(p) - std::log1p(-p);
  CompensatedSum logPmf(logStart);
  if (!visit(std::int64_t{0}, std::exp(logPmf.value()))) {
    return;
  }
  for (std::int64_t x = 1; x <= last; ++x) {
    logPmf.add(std::log(static_cast<double>(n - x + 1) / static_cast<double>(x)));
    logPmf.add(logOdds);
    if (!visit(x, std::exp(logPmf.value()))) {
      return;
    }
  }
}

bool degenerate(double p) { return p == 0.0 || p == 1.0; }

double degeneratePmf(std::int64_t x, std::int64_t n, double p) {
  const std::int64_t certain = p == 0.0 ? 0 : n;
  return x == certain ? 1.0 : 0.0;
}

} // namespace

void validate(const BinomialParams& params) {
  if (params.trials < 0) {
    throw InvalidParameter("binomial trials must be >= 0, got " + std::to_string(params.trials));
  }
  if (!(params.successProb >= 0.0 && params.successProb <= 1.0)) {
    throw InvalidParameter("binomial success probability must be in [0,1], got " +
                           std::to_string(params.successProb));
  }
}

double pmf(std::int64_t x, const BinomialParams& params) {
  validate(params);
  const std::int64_t n = params.trials;
  if (x < 0 || x > n) {
    return 0.0;
  }
  if (degenerate(params.successProb)) {
    return degeneratePmf(x, n, params.successProb);
  }
  double result = 0.0;
  forEachPmf(n, params.successProb, x, [&](std::int64_t at, double value) {
    if (at == x) {
      result = value;
    }
    return true;
  });
  return result;
}

std::vector<double> pmfRow(const BinomialParams& params) {
  validate(params);
  const std::int64_t n = params.trials;
  std::vector<double> row(static_cast<std::size_t>(n + 1), 0.0);
  if (degenerate(params.successProb)) {
    row[params.successProb == 0.0 ? 0 : static_cast<std::size_t>(n)] = 1.0;
    return row;
  }
  forEachPmf(n, params.successProb, n, [&](std::int64_t at, double value) {
    row[static_cast<std::size_t>(at)] = value;
    return true;
  });
  return row;
}

double cdf(std::int64_t x, const BinomialParams& params) {
  validate(params);
  const std::int64_t n = params.trials;
  if (x < 0) {
    return 0.0;
  }
  if (x >= n) {
    return 1.0;
  }
  if (degenerate(params.successProb)) {
    return params.successProb == 0.0 ? 1.0 : 0.0;
  }
  double sum = 0.0;
  forEachPmf(n, params.successProb, x, [&](std::int64_t, double value) {
    sum = std::min(sum + value, 1.0);
    return true;
  });
  return sum;
}

std::int64_t quantile(std::int64_t position, double p, double alpha) {
  if (position < 1) {
    throw InvalidParameter("quantile position must be >= 1, got " + std::to_string(position));
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidParameter("quantile requires 0 < p < 1, got " + std::to_string(p));
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidParameter("quantile requires alpha in [0,1], got " + std::to_string(alpha));
  }
  // Same accumulation order as cdf(), so quantile and cdf agree bit for bit.
  std::int64_t found = position;
  double sum = 0.0;
  forEachPmf(position, p, position - 1, [&](std::int64_t at, double value) {
    sum = std::min(sum + value, 1.0);
    if (sum >= alpha) {
      found = at;
      return false;
    }
    return true;
  });
  return found;
}

} // namespace rgfair::binom
