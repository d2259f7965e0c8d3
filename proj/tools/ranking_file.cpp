#include "ranking_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace rgfair::cli {
namespace {

constexpr std::string_view kHeader = "position,id,score,protected";

std::vector<std::string_view> splitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

template <class T>
bool parseNumber(std::string_view text, T& value) {
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && end == text.data() + text.size() && !text.empty();
}

} // namespace

ParseError::ParseError(const std::string& source, std::int64_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

Ranking parseRankingCsv(std::istream& in, const std::string& source) {
  std::string raw;
  std::int64_t lineNumber = 0;
  bool sawHeader = false;
  Ranking ranking;
  std::unordered_set<std::string> ids;

  while (std::getline(in, raw)) {
    ++lineNumber;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (!sawHeader) {
      if (line != kHeader) {
        throw ParseError(source, lineNumber, "expected header '" + std::string(kHeader) + "'");
      }
      sawHeader = true;
      continue;
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = splitFields(line);
    if (fields.size() != 4) {
      throw ParseError(source, lineNumber, "expected 4 fields, found " + std::to_string(fields.size()));
    }
    std::int64_t position = 0;
    if (!parseNumber(fields[0], position)) {
      throw ParseError(source, lineNumber, "position is not an integer");
    }
    const auto expected = static_cast<std::int64_t>(ranking.size()) + 1;
    if (position != expected) {
      throw ParseError(source, lineNumber,
                       "expected position " + std::to_string(expected) + ", found " + std::to_string(position));
    }
    Candidate candidate;
    candidate.id = std::string(fields[1]);
    if (candidate.id.empty()) {
      throw ParseError(source, lineNumber, "empty id");
    }
    if (!ids.insert(candidate.id).second) {
      throw ParseError(source, lineNumber, "duplicate id '" + candidate.id + "'");
    }
    if (!parseNumber(fields[2], candidate.score) || !std::isfinite(candidate.score)) {
      throw ParseError(source, lineNumber, "score is not a finite number");
    }
    if (fields[3] == "1") {
      candidate.isProtected = true;
    } else if (fields[3] != "0") {
      throw ParseError(source, lineNumber, "protected must be 1 or 0");
    }
    ranking.items.push_back(std::move(candidate));
  }
  if (!sawHeader) {
    throw ParseError(source, lineNumber, "missing header");
  }
  return ranking;
}

Ranking readRankingFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }
  return parseRankingCsv(in, path.string());
}

void writeRankingCsv(std::ostream& out, const Ranking& ranking) {
  out << kHeader << '\n';
  std::int64_t position = 0;
  for (const auto& candidate : ranking.items) {
    char score[32];
    const auto [end, ec] = std::to_chars(score, score + sizeof(score), candidate.score);
    out << ++position << ',' << candidate.id << ',' << std::string_view(score, static_cast<std::size_t>(end - score))
        << ',' << (candidate.isProtected ? '1' : '0') << '\n';
  }
}

} // namespace rgfair::cli
