#pragma once

#include <stdexcept>
#include <string>

namespace rpurn {

// Error hierarchy. The CLI maps each family onto an exit status:
// ConfigError -> 2, DataError -> 3, NumericError -> 4.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters, flags or parameter-domain violations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed, empty or too-short input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Degenerate numeric state (e.g. an urn with zero total mass).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace rpurn
