// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vlprep {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero/negative dimensions, canvases smaller than their content.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Image dimensions that are not multiples of the tile size, or tile sets
// whose members disagree on size.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Malformed files, datasets and argument values.
class InputError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::int64_t total, std::int64_t limit)
      : Error("token budget exceeded: " + std::to_string(total) + " > " +
              std::to_string(limit)),
        total_(total),
        limit_(limit) {}

  std::int64_t total() const { return total_; }
  std::int64_t limit() const { return limit_; }

 private:
  std::int64_t total_;
  std::int64_t limit_;
};

}  // namespace vlprep
