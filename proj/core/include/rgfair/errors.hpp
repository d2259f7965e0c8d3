#pragma once

#include <stdexcept>
#include <string>

namespace rgfair {

/// Raised when an argument is outside the domain of an operation (k < 1,
/// probabilities outside [0,1], unsorted inputs, ...).
class InvalidParameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Re-ranking ran out of protected candidates while the table still
/// required more.
class Infeasible : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The brute-force enumeration guard rejected the instance.
class InstanceTooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The alpha search exceeded its iteration cap.
class SearchDiverged : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing the persistent table cache failed. Recoverable: callers
/// may fall back to recomputing.
class CacheError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace rgfair
