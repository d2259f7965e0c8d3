#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rgfair/fairtest.hpp"

namespace rgfair::cli {

/// Malformed ranking CSV. line() is 1-based and counts the header (0 when
/// the file itself could not be opened).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& source, std::int64_t line, const std::string& message);
  std::int64_t line() const { return line_; }

private:
  std::int64_t line_;
};

/// Reads `position,id,score,protected` CSV. Positions must run 1, 2, ...
/// in file order, ids must be unique and non-empty (no commas), protected is
/// `1` or `0`. Blank lines are skipped.
Ranking parseRankingCsv(std::istream& in, const std::string& source = "<input>");
Ranking readRankingFile(const std::filesystem::path& path);

/// Writes the ranking with positions renumbered from 1. Scores use the
/// shortest representation that round-trips.
void writeRankingCsv(std::ostream& out, const Ranking& ranking);

} // namespace rgfair::cli
