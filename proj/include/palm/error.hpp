#pragma once

#include <stdexcept>
#include <string>

namespace palm {

// Bad shapes, bad parameters, malformed inputs handed to a pure function.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Filesystem and decoding failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent training/evaluation setup (too few samples, bad split ratio).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace palm
