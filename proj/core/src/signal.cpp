#include "irlink/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irlink/error.hpp"

namespace irlink {

Signal::Signal(std::vector<double> samples, double sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  detail::require(std::isfinite(sample_rate_) && sample_rate_ > 0.0, "sample rate must be > 0");
  detail::require(!samples_.empty(), "signal must contain at least one sample");
  for (double v : samples_)
    if (!std::isfinite(v)) throw InvalidInput("signal samples must be finite");
}

Signal Signal::sine(double frequency_hz, double amplitude, double sample_rate, std::size_t count, double phase_rad) {
  std::vector<double> s(count);
  const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate;
  for (std::size_t i = 0; i < count; ++i) s[i] = amplitude * std::sin(w * static_cast<double>(i) + phase_rad);
  return {std::move(s), sample_rate};
}

Signal Signal::constant(double value, double sample_rate, std::size_t count) {
  return {std::vector<double>(count, value), sample_rate};
}

Signal Signal::slice(std::size_t first, std::size_t count) const {
  detail::require(first < samples_.size(), "slice starts past the end of the signal");
  const std::size_t n = std::min(count, samples_.size() - first);
  return {std::vector<double>(samples_.begin() + static_cast<std::ptrdiff_t>(first),
                              samples_.begin() + static_cast<std::ptrdiff_t>(first + n)),
          sample_rate_};
}

}  // namespace irlink
