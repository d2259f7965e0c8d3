#include "rgfair/decimal.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

#include "rgfair/errors.hpp"

namespace rgfair {

std::string formatProbability(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 12);
  if (ec != std::errc{}) {
    throw InvalidParameter("cannot format value");
  }
  return std::string(buffer, end);
}

double parseDecimal(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (first != last && *first == '+') {
    ++first;
  }
  const auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || end != last || text.empty()) {
    throw InvalidParameter("not a decimal number: '" + std::string(text) + "'");
  }
  return value;
}

double roundToSignificant(double value) { return parseDecimal(formatProbability(value)); }

} // namespace rgfair
