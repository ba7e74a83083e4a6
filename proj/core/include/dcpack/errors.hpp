#pragma once

#include <stdexcept>
#include <string>

namespace dcpack {

// Malformed instance, placement or file content supplied by the caller.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Solver parameters that cannot be honoured (e.g. a grid too coarse for the
// smallest circle).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace dcpack
