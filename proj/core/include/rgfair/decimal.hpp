#pragma once

#include <string>
#include <string_view>

namespace rgfair {

/// Decimal text with 12 significant digits ("%.12g", C locale), the format
/// used for every probability written to disk or stdout.
std::string formatProbability(double value);

/// Parses a full decimal string; throws InvalidParameter on trailing junk.
double parseDecimal(std::string_view text);

/// parseDecimal(formatProbability(value)).
double roundToSignificant(double value);

} // namespace rgfair
