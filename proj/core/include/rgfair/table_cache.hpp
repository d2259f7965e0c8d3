#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rgfair/adjust.hpp"

namespace rgfair {

/// (k, p, alpha) with both probabilities quantized to 9 decimal places
/// (round-half-away-from-zero on value * 1e9). Parameters closer than 5e-10
/// share a key.
struct TableCacheKey {
  std::int64_t k = 0;
  std::int64_t pNanos = 0;
  std::int64_t alphaNanos = 0;

  static TableCacheKey from(std::int64_t k, double p, double alpha);

  /// Fixed-point text, e.g. "0.500000000".
  std::string pText() const;
  std::string alphaText() const;

  /// mtable_k<k>_p<p9>_a<a9>.json with '.' replaced by '_'.
  std::string fileName() const;

  friend bool operator==(const TableCacheKey&, const TableCacheKey&) = default;
};

/// JSON document for an adjusted table:
/// {"k", "p", "alpha", "alphaAdjusted", "failProbability", "mtable"}, with
/// probabilities as 12-significant-digit strings.
std::string serializeAdjustment(double p, double alpha, const AdjustmentResult& result);

/// Inverse of serializeAdjustment. Probabilities come back rounded to 12
/// significant digits. Throws CacheError on malformed documents.
struct StoredAdjustment {
  std::int64_t k = 0;
  double p = 0.0;
  double alpha = 0.0;
  AdjustmentResult result;
};
StoredAdjustment parseAdjustment(std::string_view document);

/// Directory-backed store of adjustment results, one JSON file per key.
/// Writes go through a uniquely named temporary file and an atomic rename, so
/// concurrent puts of the same key both succeed and leave identical content.
class TableCache {
public:
  explicit TableCache(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return directory_; }
  std::filesystem::path pathFor(const TableCacheKey& key) const;

  /// Absent on a miss. Throws CacheError if the file exists but cannot be
  /// read, parsed, or belongs to another key.
  std::optional<AdjustmentResult> get(const TableCacheKey& key) const;

  /// Throws CacheError on I/O failure.
  void put(const TableCacheKey& key, double p, double alpha, const AdjustmentResult& result) const;

  /// $RGFAIR_CACHE_DIR, else $XDG_CACHE_HOME/rgfair, else $HOME/.cache/rgfair,
  /// else <temp>/rgfair-cache.
  static std::filesystem::path defaultDirectory();

private:
  std::filesystem::path directory_;
};

/// Cached adjustAlpha. A cache that fails to read or write is bypassed. Fresh
/// results are normalized to 12 significant digits so hits and misses return
/// the same values.
AdjustmentResult adjustAlphaCached(const TableCache* cache, std::int64_t k, double p, double alpha);

} // namespace rgfair
