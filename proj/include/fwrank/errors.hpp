#pragma once

#include <stdexcept>
#include <string>

namespace fwrank {

/// Malformed input data: bad CSV rows, invalid rankings, mismatched checkpoints.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read, written or renamed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fwrank
