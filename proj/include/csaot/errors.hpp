#pragma once

#include <stdexcept>
#include <string>

namespace csaot {

// Malformed arguments: wrong dimensions, out-of-range actions, bad K.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values detected in a graph, loss or optimizer update.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Documents that fail to parse or miss required fields.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checkpoint and configuration disagree on architecture.
class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Files that cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace csaot
