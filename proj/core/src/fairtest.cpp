#include "rgfair/fairtest.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <unordered_set>

#include "rgfair/errors.hpp"

namespace rgfair {
namespace {

void requireSortedGroup(std::span<const Candidate> list, bool expectProtected, const char* name) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].isProtected != expectProtected) {
      throw InvalidParameter(std::string(name) + " list contains a candidate from the other group: '" +
                             list[i].id + "'");
    }
    if (i > 0 && list[i].score > list[i - 1].score) {
      throw InvalidParameter(std::string(name) + " list is not sorted by score descending at '" +
                             list[i].id + "'");
    }
  }
}

} // namespace

VerificationReport verify(const Ranking& ranking, const MTable& table) {
  if (ranking.empty()) {
    throw InvalidParameter("cannot verify an empty ranking");
  }
  VerificationReport report;
  const auto checked = std::min<std::int64_t>(table.k(), static_cast<std::int64_t>(ranking.size()));
  std::int64_t count = 0;
  for (std::int64_t position = 1; position <= checked; ++position) {
    count += ranking.items[static_cast<std::size_t>(position - 1)].isProtected ? 1 : 0;
    const auto required = table.at(position);
    if (count < required) {
      report.violations.push_back({position, required, count});
    }
  }
  report.passed = report.violations.empty();
  if (!report.passed) {
    report.firstViolationPosition = report.violations.front().position;
  }
  return report;
}

std::optional<std::int64_t> firstViolation(const std::vector<bool>& protectedFlags,
                                           const MTable& table) {
  const auto checked = std::min<std::int64_t>(table.k(), static_cast<std::int64_t>(protectedFlags.size()));
  const auto entries = table.entries();
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < checked; ++i) {
    count += protectedFlags[static_cast<std::size_t>(i)] ? 1 : 0;
    if (count < entries[static_cast<std::size_t>(i)]) {
      return i + 1;
    }
  }
  return std::nullopt;
}

Ranking rerank(std::span<const Candidate> protectedList,
               std::span<const Candidate> nonProtectedList, const MTable& table) {
  requireSortedGroup(protectedList, true, "protected");
  requireSortedGroup(nonProtectedList, false, "non-protected");
  std::unordered_set<std::string_view> ids;
  for (const auto* list : {&protectedList, &nonProtectedList}) {
    for (const auto& candidate : *list) {
      if (candidate.id.empty() || !ids.insert(candidate.id).second) {
        throw InvalidParameter("candidate ids must be non-empty and unique: '" + candidate.id + "'");
      }
    }
  }
  const auto k = table.k();
  if (static_cast<std::int64_t>(protectedList.size() + nonProtectedList.size()) < k) {
    throw InvalidParameter("need at least " + std::to_string(k) + " candidates, got " +
                           std::to_string(protectedList.size() + nonProtectedList.size()));
  }

  Ranking ranking;
  ranking.items.reserve(static_cast<std::size_t>(k));
  std::size_t nextProtected = 0;
  std::size_t nextOther = 0;
  std::int64_t protectedPlaced = 0;
  for (std::int64_t position = 1; position <= k; ++position) {
    const bool haveProtected = nextProtected < protectedList.size();
    const bool haveOther = nextOther < nonProtectedList.size();
    bool takeProtected;
    if (protectedPlaced < table.at(position)) {
      if (!haveProtected) {
        throw Infeasible("table requires " + std::to_string(table.at(position)) +
                         " protected candidates in the top " + std::to_string(position) + " but only " +
                         std::to_string(protectedList.size()) + " exist");
      }
      takeProtected = true;
    } else if (haveProtected && haveOther) {
      takeProtected = protectedList[nextProtected].score >= nonProtectedList[nextOther].score;
    } else {
      takeProtected = haveProtected;
    }

    if (takeProtected) {
      ranking.items.push_back(protectedList[nextProtected++]);
      ++protectedPlaced;
    } else {
      ranking.items.push_back(nonProtectedList[nextOther++]);
    }
  }
  return ranking;
}

} // namespace rgfair
