#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace irlink::noise {

/// Seeded Gaussian source. Uses mt19937_64 (whose output sequence is fixed
/// by the standard) with a hand-rolled Box–Muller transform so the same seed
/// yields the same doubles on every standard library.
class GaussianSource {
 public:
  GaussianSource(std::uint64_t seed, std::uint64_t stream);
  double next();

 private:
  double uniform_open();  // (0, 1)
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// RMS levels of the three additive noise components, volts.
struct NoiseSpec {
  double broadband_rms = 0.0;  ///< white across the whole band
  double low_band_rms = 0.0;   ///< confined below 10 Hz
  double high_band_rms = 0.0;  ///< confined above 10 kHz

  void validate() const;
  bool silent() const { return broadband_rms == 0.0 && low_band_rms == 0.0 && high_band_rms == 0.0; }
};

inline constexpr double kLowBandEdgeHz = 10.0;
inline constexpr double kHighBandEdgeHz = 10'000.0;

/// Sum of the three independent components, each scaled so its stationary RMS
/// equals the requested level. The high band is omitted when the Nyquist
/// frequency does not exceed its edge.
std::vector<double> synthesize(const NoiseSpec& spec, double sample_rate, std::size_t count, std::uint64_t seed);

}  // namespace irlink::noise
