#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace irlink {

/// Uniformly sampled waveform, volts (or amperes for LED current). Immutable
/// once constructed: every processing stage returns a new Signal.
class Signal {
 public:
  /// Throws InvalidInput if the rate is not > 0, the sequence is empty, or
  /// any sample is non-finite.
  Signal(std::vector<double> samples, double sample_rate);

  static Signal sine(double frequency_hz, double amplitude, double sample_rate, std::size_t count,
                     double phase_rad = 0.0);
  static Signal constant(double value, double sample_rate, std::size_t count);

  std::span<const double> samples() const { return samples_; }
  double sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  double duration() const { return static_cast<double>(samples_.size()) / sample_rate_; }
  double operator[](std::size_t i) const { return samples_[i]; }

  /// Sub-range [first, first + count), clamped to the end.
  Signal slice(std::size_t first, std::size_t count) const;

  bool operator==(const Signal&) const = default;

 private:
  std::vector<double> samples_;
  double sample_rate_;
};

}  // namespace irlink
