#pragma once

#include <stdexcept>
#include <string>

namespace irlink {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad range, non-finite input, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The computation produced NaN/inf or diverged. `quantity()` names what failed.
class NumericFailure : public Error {
 public:
  NumericFailure(std::string quantity, const std::string& what);
  const std::string& quantity() const noexcept { return quantity_; }

 private:
  std::string quantity_;
};

/// Component values describe a filter that cannot be realized as specified.
class InvalidDesign : public Error {
 public:
  using Error::Error;
};

/// A metric has no meaning for the given input (e.g. THD of silence).
class MetricUndefined : public Error {
 public:
  using Error::Error;
};

namespace detail {
void require(bool condition, const char* message);
void require_finite(double value, const char* name);
}  // namespace detail

}  // namespace irlink
