#include "irlink/noise.hpp"

#include <cmath>
#include <numbers>

#include "irlink/error.hpp"

namespace irlink::noise {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum Stream : std::uint64_t { kBroadband = 1, kLowBand = 2, kHighBand = 3 };

// Random walk with a leak; corner well under the 10 Hz band edge.
constexpr double kLowBandCornerHz = 3.0;

void add_broadband(std::vector<double>& out, double rms, std::uint64_t seed) {
  GaussianSource src(seed, kBroadband);
  for (double& v : out) v += rms * src.next();
}

void add_low_band(std::vector<double>& out, double rms, double rate, std::uint64_t seed) {
  GaussianSource src(seed, kLowBand);
  const double b = std::exp(-2.0 * std::numbers::pi * kLowBandCornerHz / rate);
  // y[n] = b·y[n−1] + σ·x[n]: stationary variance σ²/(1 − b²).
  const double sigma = rms * std::sqrt(1.0 - b * b);
  double y = rms * src.next();
  for (double& v : out) {
    v += y;
    y = b * y + sigma * src.next();
  }
}

void add_high_band(std::vector<double>& out, double rms, double rate, std::uint64_t seed) {
  if (rate / 2.0 <= kHighBandEdgeHz) return;
  // One-pole high-pass y[n] = a·(y[n−1] + x[n] − x[n−1]); its white-noise power
  // gain Σh² = 2a²/(1 + a).
  const double rc = 1.0 / (2.0 * std::numbers::pi * kHighBandEdgeHz);
  const double a = rc / (rc + 1.0 / rate);
  const double gain = std::sqrt(2.0 * a * a / (1.0 + a));
  GaussianSource src(seed, kHighBand);
  double y = 0.0;
  double x_prev = 0.0;
  // Run-in so the output starts stationary.
  for (int i = 0; i < 64; ++i) {
    const double x = src.next();
    y = a * (y + x - x_prev);
    x_prev = x;
  }
  for (double& v : out) {
    const double x = src.next();
    y = a * (y + x - x_prev);
    x_prev = x;
    v += rms / gain * y;
  }
}

}  // namespace

GaussianSource::GaussianSource(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream))) {}

double GaussianSource::uniform_open() {
  double u = 0.0;
  do {
    u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  } while (u == 0.0);
  return u;
}

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform_open()));
  const double phi = 2.0 * std::numbers::pi * uniform_open();
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

void NoiseSpec::validate() const {
  for (double v : {broadband_rms, low_band_rms, high_band_rms})
    detail::require(std::isfinite(v) && v >= 0.0, "noise RMS levels must be >= 0");
}

std::vector<double> synthesize(const NoiseSpec& spec, double sample_rate, std::size_t count, std::uint64_t seed) {
  spec.validate();
  detail::require(std::isfinite(sample_rate) && sample_rate > 0.0, "sample rate must be > 0");
  std::vector<double> out(count, 0.0);
  if (spec.broadband_rms > 0.0) add_broadband(out, spec.broadband_rms, seed);
  if (spec.low_band_rms > 0.0) add_low_band(out, spec.low_band_rms, sample_rate, seed);
  if (spec.high_band_rms > 0.0) add_high_band(out, spec.high_band_rms, sample_rate, seed);
  return out;
}

}  // namespace irlink::noise
