#pragma once

#include <stdexcept>
#include <string>

namespace fsweep {

/// Invalid configuration, malformed file or violated precondition on caller data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The response oracle could not produce a value for a requested frequency.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fsweep
