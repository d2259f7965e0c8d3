#include "rgfair/table_cache.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "rgfair/decimal.hpp"
#include "rgfair/errors.hpp"

namespace rgfair {
namespace {

constexpr double kNanosPerUnit = 1e9;

std::int64_t quantize(double value) { return std::llround(value * kNanosPerUnit); }

std::string fixedNine(std::int64_t nanos) {
  const bool negative = nanos < 0;
  const auto magnitude = negative ? -nanos : nanos;
  std::string fraction = std::to_string(magnitude % 1'000'000'000);
  fraction.insert(0, 9 - fraction.size(), '0');
  return (negative ? "-" : "") + std::to_string(magnitude / 1'000'000'000) + "." + fraction;
}

std::string underscored(std::string text) {
  for (auto& c : text) {
    if (c == '.') {
      c = '_';
    }
  }
  return text;
}

std::string uniqueSuffix() {
  static std::atomic<std::uint64_t> counter{0};
  static const std::uint64_t processToken = [] {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
  }();
  std::ostringstream out;
  out << std::hex << processToken << '.' << counter.fetch_add(1);
  return out.str();
}

double probabilityField(const nlohmann::json& doc, const char* name) {
  const auto& field = doc.at(name);
  if (!field.is_string()) {
    throw CacheError(std::string("field '") + name + "' must be a decimal string");
  }
  return parseDecimal(field.get<std::string>());
}

} // namespace

TableCacheKey TableCacheKey::from(std::int64_t k, double p, double alpha) {
  return {k, quantize(p), quantize(alpha)};
}

std::string TableCacheKey::pText() const { return fixedNine(pNanos); }
std::string TableCacheKey::alphaText() const { return fixedNine(alphaNanos); }

std::string TableCacheKey::fileName() const {
  return "mtable_k" + std::to_string(k) + "_p" + underscored(pText()) + "_a" +
         underscored(alphaText()) + ".json";
}

std::string serializeAdjustment(double p, double alpha, const AdjustmentResult& result) {
  nlohmann::ordered_json doc;
  doc["k"] = result.table.k();
  doc["p"] = formatProbability(p);
  doc["alpha"] = formatProbability(alpha);
  doc["alphaAdjusted"] = formatProbability(result.alphaAdjusted);
  doc["failProbability"] = formatProbability(result.failProbability);
  const auto entries = result.table.entries();
  doc["mtable"] = std::vector<std::int64_t>(entries.begin(), entries.end());
  return doc.dump(2) + "\n";
}

StoredAdjustment parseAdjustment(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    const auto k = doc.at("k").get<std::int64_t>();
    const double p = probabilityField(doc, "p");
    const double alpha = probabilityField(doc, "alpha");
    const double alphaAdjusted = probabilityField(doc, "alphaAdjusted");
    const double fail = probabilityField(doc, "failProbability");
    auto entries = doc.at("mtable").get<std::vector<std::int64_t>>();
    if (static_cast<std::int64_t>(entries.size()) != k) {
      throw CacheError("mtable length does not match k");
    }
    return {k, p, alpha, AdjustmentResult{alphaAdjusted, MTable(std::move(entries), p, alphaAdjusted), fail}};
  } catch (const CacheError&) {
    throw;
  } catch (const std::exception& e) {
    throw CacheError(std::string("malformed mtable document: ") + e.what());
  }
}

TableCache::TableCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::filesystem::path TableCache::pathFor(const TableCacheKey& key) const {
  return directory_ / key.fileName();
}

std::optional<AdjustmentResult> TableCache::get(const TableCacheKey& key) const {
  const auto path = pathFor(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    if (ec) {
      throw CacheError("cannot stat " + path.string() + ": " + ec.message());
    }
    return std::nullopt;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CacheError("cannot open " + path.string());
  }
  std::ostringstream content;
  content << in.rdbuf();
  if (in.bad()) {
    throw CacheError("cannot read " + path.string());
  }
  auto stored = parseAdjustment(content.str());
  if (!(TableCacheKey::from(stored.k, stored.p, stored.alpha) == key)) {
    throw CacheError(path.string() + " holds a different key");
  }
  return std::move(stored.result);
}

void TableCache::put(const TableCacheKey& key, double p, double alpha,
                     const AdjustmentResult& result) const {
  if (!(TableCacheKey::from(result.table.k(), p, alpha) == key)) {
    throw InvalidParameter("cache key does not match the stored parameters");
  }
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) {
    throw CacheError("cannot create " + directory_.string() + ": " + ec.message());
  }
  const auto target = pathFor(key);
  auto temporary = target;
  temporary += ".tmp." + uniqueSuffix();
  {
    std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
    out << serializeAdjustment(p, alpha, result);
    out.flush();
    if (!out) {
      std::filesystem::remove(temporary, ec);
      throw CacheError("cannot write " + temporary.string());
    }
  }
  std::filesystem::rename(temporary, target, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(temporary, ignored);
    throw CacheError("cannot move cache entry into place: " + ec.message());
  }
}

std::filesystem::path TableCache::defaultDirectory() {
  if (const char* dir = std::getenv("RGFAIR_CACHE_DIR"); dir != nullptr && *dir != '\0') {
    return dir;
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return std::filesystem::path(xdg) / "rgfair";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::filesystem::path(home) / ".cache" / "rgfair";
  }
  return std::filesystem::temp_directory_path() / "rgfair-cache";
}

AdjustmentResult adjustAlphaCached(const TableCache* cache, std::int64_t k, double p, double alpha) {
  const auto key = TableCacheKey::from(k, p, alpha);
  if (cache != nullptr) {
    try {
      if (auto hit = cache->get(key)) {
        return std::move(*hit);
      }
    } catch (const CacheError&) {
      // unreadable entry: recompute and overwrite below
    }
  }

  auto result = adjustAlpha(k, p, alpha);
  result.failProbability = roundToSignificant(result.failProbability);
  const double rounded = roundToSignificant(result.alphaAdjusted);
  auto snapped = constructMTable(k, p, rounded);
  if (std::ranges::equal(snapped.entries(), result.table.entries())) {
    result.alphaAdjusted = rounded;
    result.table = std::move(snapped);
  }

  if (cache != nullptr) {
    try {
      cache->put(key, p, alpha, result);
    } catch (const CacheError&) {
      // read-only or full cache directory: the result is still valid
    }
  }
  return result;
}

} // namespace rgfair
