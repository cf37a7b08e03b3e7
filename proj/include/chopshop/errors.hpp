#pragma once

#include <stdexcept>
#include <string>

namespace chopshop {

/// Result does not fit the 64-bit integer range.
class capacity_error : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// (n, r) or a degree lies outside the admissible range of an operation.
class range_error : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// A sampled or supplied configuration failed a genericity check.
class genericity_error : public std::runtime_error {
public:
  genericity_error(const std::string& what, int retries = 0)
      : std::runtime_error(what), retries_(retries) {}
  int retries() const noexcept { return retries_; }

private:
  int retries_;
};

} // namespace chopshop
