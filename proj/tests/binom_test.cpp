#include "rgfair/binom.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rgfair/errors.hpp"

namespace rgfair::binom {
namespace {

using testing::naivePmf;

TEST(BinomPmf, SpotValues) {
  EXPECT_DOUBLE_EQ(pmf(0, {4, 0.5}), 0.0625);
  EXPECT_EQ(pmf(5, {4, 0.5}), 0.0);
  EXPECT_NEAR(pmf(2, {4, 0.5}), 0.375, 1e-15);
  EXPECT_EQ(pmf(-1, {4, 0.5}), 0.0);
}

TEST(BinomPmf, DegenerateProbabilities) {
  EXPECT_EQ(pmf(0, {7, 0.0}), 1.0);
  EXPECT_EQ(pmf(1, {7, 0.0}), 0.0);
  EXPECT_EQ(pmf(7, {7, 1.0}), 1.0);
  EXPECT_EQ(pmf(6, {7, 1.0}), 0.0);
  EXPECT_EQ(pmf(0, {0, 0.3}), 1.0);
}

TEST(BinomPmf, RejectsInvalidParams) {
  EXPECT_THROW(pmf(0, {-1, 0.5}), InvalidParameter);
  EXPECT_THROW(pmf(0, {3, 1.5}), InvalidParameter);
  EXPECT_THROW(cdf(0, {3, -0.1}), InvalidParameter);
}

TEST(BinomPmf, RowsSumToOne) {
  for (std::int64_t n = 0; n <= 30; ++n) {
    for (double p : {0.01, 0.1, 0.25, 0.3, 0.5, 0.7, 0.9, 0.99}) {
      const auto row = pmfRow({n, p});
      double sum = 0.0;
      for (double v : row) {
        sum += v;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12) << "n=" << n << " p=" << p;
    }
  }
}

TEST(BinomPmf, AgreesWithNaiveOracle) {
  for (std::int64_t n = 0; n <= 20; ++n) {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto row = pmfRow({n, p});
      for (std::int64_t x = 0; x <= n; ++x) {
        EXPECT_NEAR(pmf(x, {n, p}), naivePmf(x, n, p), 1e-12) << n << " " << x << " " << p;
        EXPECT_EQ(row[static_cast<std::size_t>(x)], pmf(x, {n, p}));
        EXPECT_NEAR(cdf(x, {n, p}), testing::naiveCdf(x, n, p), 1e-12);
      }
    }
  }
}

TEST(BinomPmf, LargeTrialsStayFinite) {
  // 2^-10000 underflows, but the bulk of the distribution must not.
  const auto row = pmfRow({10000, 0.5});
  double sum = 0.0;
  for (double v : row) {
    ASSERT_TRUE(std::isfinite(v));
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_NEAR(pmf(5000, {10000, 0.5}), 0.0079786461393821, 1e-12);
}

TEST(BinomCdf, SpotValues) {
  EXPECT_DOUBLE_EQ(cdf(0, {4, 0.5}), 0.0625);
  EXPECT_EQ(cdf(4, {4, 0.5}), 1.0);
  EXPECT_EQ(cdf(9, {4, 0.5}), 1.0);
  // 23/256 from exact rational enumeration.
  EXPECT_NEAR(cdf(2, {9, 0.5}), 0.08984375, 1e-15);
  EXPECT_EQ(cdf(-1, {4, 0.5}), 0.0);
}

TEST(BinomCdf, NonDecreasing) {
  for (std::int64_t n : {1, 5, 17, 60, 300}) {
    for (double p : {0.05, 0.3, 0.5, 0.8}) {
      double previous = 0.0;
      for (std::int64_t x = 0; x <= n; ++x) {
        const double value = cdf(x, {n, p});
        EXPECT_GE(value, previous);
        previous = value;
      }
    }
  }
}

TEST(BinomQuantile, TableValues) {
  EXPECT_EQ(quantile(4, 0.5, 0.1), 1);
  EXPECT_EQ(quantile(12, 0.3, 0.1), 2);
  EXPECT_EQ(quantile(1, 0.5, 0.1), 0);
  EXPECT_EQ(quantile(2, 0.7, 0.1), 1);
}

TEST(BinomQuantile, ZeroAlphaIsZero) {
  for (std::int64_t i = 1; i <= 40; ++i) {
    for (double p : {0.1, 0.5, 0.9}) {
      EXPECT_EQ(quantile(i, p, 0.0), 0);
    }
  }
}

TEST(BinomQuantile, AlphaOneIsPosition) {
  EXPECT_EQ(quantile(7, 0.5, 1.0), 7);
}

TEST(BinomQuantile, NonStrictAtExactTie) {
  // cdf(0; 1, 0.5) is exactly 0.5.
  EXPECT_EQ(quantile(1, 0.5, 0.5), 0);
  EXPECT_EQ(quantile(1, 0.5, std::nextafter(0.5, 1.0)), 1);
}

TEST(BinomQuantile, RejectsOutOfDomain) {
  EXPECT_THROW(quantile(0, 0.5, 0.1), InvalidParameter);
  EXPECT_THROW(quantile(3, 0.0, 0.1), InvalidParameter);
  EXPECT_THROW(quantile(3, 1.0, 0.1), InvalidParameter);
  EXPECT_THROW(quantile(3, 0.5, 1.1), InvalidParameter);
}

TEST(BinomQuantile, MinimalityProperty) {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<std::int64_t> position(1, 200);
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto i = position(gen);
    const double p = unit(gen);
    const double alpha = unit(gen);
    const auto m = quantile(i, p, alpha);
    ASSERT_GE(m, 0);
    ASSERT_LE(m, i);
    EXPECT_GE(cdf(m, {i, p}), alpha);
    if (m > 0) {
      EXPECT_LT(cdf(m - 1, {i, p}), alpha);
    }
  }
}

TEST(BinomQuantile, MonotoneInAlpha) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::int64_t i = 1 + static_cast<std::int64_t>(unit(gen) * 80);
    const double p = 0.01 + 0.98 * unit(gen);
    double a = unit(gen);
    double b = unit(gen);
    if (a > b) {
      std::swap(a, b);
    }
    EXPECT_LE(quantile(i, p, a), quantile(i, p, b));
  }
}

} // namespace
} // namespace rgfair::binom
