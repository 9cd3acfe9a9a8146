#include "irlink/error.hpp"

#include <cmath>
#include <utility>

namespace irlink {

NumericFailure::NumericFailure(std::string quantity, const std::string& what)
    : Error(what), quantity_(std::move(quantity)) {}

namespace detail {

void require(bool condition, const char* message) {
  if (!condition) throw InvalidInput(message);
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw InvalidInput(std::string(name) + " must be finite");
}

}  // namespace detail
}  // namespace irlink
