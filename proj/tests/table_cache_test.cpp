#include "rgfair/table_cache.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "rgfair/decimal.hpp"
#include "rgfair/errors.hpp"
#include "temp_dir.hpp"

namespace rgfair {
namespace {

AdjustmentResult normalized(AdjustmentResult result) {
  result.alphaAdjusted = roundToSignificant(result.alphaAdjusted);
  result.failProbability = roundToSignificant(result.failProbability);
  result.table = MTable({result.table.entries().begin(), result.table.entries().end()}, result.table.p(),
                        result.alphaAdjusted);
  return result;
}

void expectSame(const AdjustmentResult& a, const AdjustmentResult& b) {
  EXPECT_EQ(a.alphaAdjusted, b.alphaAdjusted);
  EXPECT_EQ(a.failProbability, b.failProbability);
  EXPECT_EQ(a.table, b.table);
}

TEST(TableCacheKey, QuantizesAndNamesFiles) {
  const auto key = TableCacheKey::from(12, 0.5, 0.1);
  EXPECT_EQ(key.pNanos, 500'000'000);
  EXPECT_EQ(key.alphaNanos, 100'000'000);
  EXPECT_EQ(key.pText(), "0.500000000");
  EXPECT_EQ(key.fileName(), "mtable_k12_p0_500000000_a0_100000000.json");
  EXPECT_EQ(TableCacheKey::from(12, 0.5 + 1e-12, 0.1), key);
  EXPECT_FALSE(TableCacheKey::from(12, 0.500000001, 0.1) == key);
  EXPECT_EQ(TableCacheKey::from(3, 1.0, 0.000000001).fileName(), "mtable_k3_p1_000000000_a0_000000001.json");
}

TEST(Serialization, MatchesSchema) {
  const auto result = adjustAlpha(12, 0.5, 0.1);
  const auto doc = nlohmann::json::parse(serializeAdjustment(0.5, 0.1, result));
  EXPECT_EQ(doc.at("k").get<int>(), 12);
  EXPECT_EQ(doc.at("p").get<std::string>(), "0.5");
  EXPECT_EQ(doc.at("alpha").get<std::string>(), "0.1");
  EXPECT_EQ(doc.at("failProbability").get<std::string>(), "0.111328125");
  EXPECT_TRUE(doc.at("alphaAdjusted").is_string());
  EXPECT_EQ(doc.at("mtable").get<std::vector<int>>(), (std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3}));
}

TEST(Serialization, RejectsMalformedDocuments) {
  EXPECT_THROW(parseAdjustment("not json"), CacheError);
  EXPECT_THROW(parseAdjustment(R"({"k": 2, "p": 0.5})"), CacheError);
  EXPECT_THROW(
      parseAdjustment(R"({"k":2,"p":"0.5","alpha":"0.1","alphaAdjusted":"0.1","failProbability":"0","mtable":[0]})"),
      CacheError);
  EXPECT_THROW(
      parseAdjustment(R"({"k":2,"p":"0.5","alpha":"0.1","alphaAdjusted":"0.1","failProbability":"0","mtable":[0,2]})"),
      CacheError);
}

TEST(TableCache, MissIsAbsent) {
  testing::TempDir dir;
  TableCache cache(dir.path());
  EXPECT_FALSE(cache.get(TableCacheKey::from(5, 0.5, 0.1)).has_value());
}

TEST(TableCache, PutThenGetRoundTrips) {
  testing::TempDir dir;
  TableCache cache(dir.path() / "nested");
  const auto result = normalized(adjustAlpha(40, 0.3, 0.05));
  const auto key = TableCacheKey::from(40, 0.3, 0.05);
  cache.put(key, 0.3, 0.05, result);
  EXPECT_TRUE(std::filesystem::exists(cache.pathFor(key)));
  const auto hit = cache.get(key);
  ASSERT_TRUE(hit.has_value());
  expectSame(*hit, result);
}

TEST(TableCache, PutIsIdempotent) {
  testing::TempDir dir;
  TableCache cache(dir.path());
  const auto result = normalized(adjustAlpha(12, 0.5, 0.1));
  const auto key = TableCacheKey::from(12, 0.5, 0.1);
  cache.put(key, 0.5, 0.1, result);
  cache.put(key, 0.5, 0.1, result);
  const auto hit = cache.get(key);
  ASSERT_TRUE(hit.has_value());
  expectSame(*hit, result);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    ++files;
  }
  EXPECT_EQ(files, 1u);
}

TEST(TableCache, ConcurrentPutsOfSameKey) {
  testing::TempDir dir;
  TableCache cache(dir.path());
  const auto result = normalized(adjustAlpha(30, 0.5, 0.1));
  const auto key = TableCacheKey::from(30, 0.5, 0.1);
  {
    std::vector<std::jthread> writers;
    for (int i = 0; i < 8; ++i) {
      writers.emplace_back([&] {
        for (int j = 0; j < 20; ++j) {
          cache.put(key, 0.5, 0.1, result);
          if (auto hit = cache.get(key)) {
            EXPECT_EQ(hit->table, result.table);
          }
        }
      });
    }
  }
  const auto hit = cache.get(key);
  ASSERT_TRUE(hit.has_value());
  expectSame(*hit, result);
}

TEST(TableCache, CorruptEntrySurfacesAsCacheError) {
  testing::TempDir dir;
  TableCache cache(dir.path());
  const auto key = TableCacheKey::from(4, 0.5, 0.1);
  std::ofstream(cache.pathFor(key)) << "{ truncated";
  EXPECT_THROW(cache.get(key), CacheError);
}

TEST(TableCache, EntryForAnotherKeyIsRejected) {
  testing::TempDir dir;
  TableCache cache(dir.path());
  const auto otherKey = TableCacheKey::from(12, 0.5, 0.2);
  const auto result = normalized(adjustAlpha(12, 0.5, 0.1));
  std::ofstream(cache.pathFor(otherKey)) << serializeAdjustment(0.5, 0.1, result);
  EXPECT_THROW(cache.get(otherKey), CacheError);
}

TEST(TableCache, UnwritableDirectoryIsCacheError) {
  testing::TempDir dir;
  const auto blocker = dir / "file";
  std::ofstream(blocker) << "x";
  TableCache cache(blocker / "sub");
  const auto result = adjustAlpha(4, 0.5, 0.1);
  EXPECT_THROW(cache.put(TableCacheKey::from(4, 0.5, 0.1), 0.5, 0.1, result), CacheError);
}

TEST(AdjustAlphaCached, HitAndMissAgree) {
  testing::TempDir dir;
  TableCache cache(dir.path());
  const auto miss = adjustAlphaCached(&cache, 60, 0.4, 0.1);
  const auto hit = adjustAlphaCached(&cache, 60, 0.4, 0.1);
  const auto uncached = adjustAlphaCached(nullptr, 60, 0.4, 0.1);
  expectSame(miss, hit);
  expectSame(miss, uncached);
  EXPECT_EQ(miss.table, constructMTable(60, 0.4, miss.alphaAdjusted));
}

TEST(AdjustAlphaCached, FallsBackWhenCacheIsBroken) {
  testing::TempDir dir;
  const auto blocker = dir / "file";
  std::ofstream(blocker) << "x";
  TableCache cache(blocker);
  const auto result = adjustAlphaCached(&cache, 12, 0.5, 0.1);
  EXPECT_NEAR(result.failProbability, 57.0 / 512.0, 1e-12);
}

TEST(DefaultDirectory, HonoursEnvironment) {
  ::setenv("RGFAIR_CACHE_DIR", "/tmp/rgfair-env-test", 1);
  EXPECT_EQ(TableCache::defaultDirectory(), std::filesystem::path("/tmp/rgfair-env-test"));
  ::unsetenv("RGFAIR_CACHE_DIR");
  EXPECT_FALSE(TableCache::defaultDirectory().empty());
}

} // namespace
} // namespace rgfair
