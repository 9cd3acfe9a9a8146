#include "irlink/metrics.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "irlink/error.hpp"

namespace irlink::signal_chain {

double rms(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

double normalized_correlation(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  if (xx == 0.0 || yy == 0.0) return 0.0;
  return xy / std::sqrt(xx * yy);
}

long best_lag(std::span<const double> ref, std::span<const double> rx, std::size_t max_lag, std::size_t window) {
  const std::size_t n = std::min({window, ref.size(), rx.size()});
  const long lmax = static_cast<long>(max_lag);
  long best = 0;
  double best_score = -1.0;
  for (long lag = -lmax; lag <= lmax; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const long j = static_cast<long>(i) + lag;
      if (j < 0 || j >= static_cast<long>(rx.size())) continue;
      acc += ref[i] * rx[static_cast<std::size_t>(j)];
    }
    const double score = std::abs(acc);
    if (score > best_score) {
      best_score = score;
      best = lag;
    }
  }
  return best;
}

double thd(const Signal& signal, double fundamental_hz) {
  const double fs = signal.sample_rate();
  detail::require(std::isfinite(fundamental_hz) && fundamental_hz > 0.0, "fundamental must be > 0");
  detail::require(fundamental_hz < fs / 10.0, "fundamental must be below sample_rate/10");
  const auto periods = static_cast<std::size_t>(std::floor(static_cast<double>(signal.size()) * fundamental_hz / fs));
  detail::require(periods >= 10, "THD needs at least 10 fundamental periods");

  const auto len = static_cast<std::size_t>(std::llround(static_cast<double>(periods) * fs / fundamental_hz));
  const std::size_t n = std::min(len, signal.size());
  const auto x = signal.samples().subspan(signal.size() - n, n);

  std::vector<double> windowed(n);
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    windowed[i] = w * x[i];
    energy += windowed[i] * windowed[i];
  }

  auto bin_power = [&](std::size_t bin) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      // Exact argument reduction keeps the phase accurate for long windows.
      const std::size_t k = (bin * i) % n;
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      acc += windowed[i] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return std::norm(acc);
  };
  auto harmonic_power = [&](std::size_t h) {
    const std::size_t centre = h * periods;
    return bin_power(centre - 1) + bin_power(centre) + bin_power(centre + 1);
  };

  const double fundamental = harmonic_power(1);
  if (!(fundamental > 0.0) || fundamental <= 1e-24 * energy * static_cast<double>(n))
    throw MetricUndefined("fundamental carries no power; THD is undefined");

  double harmonics = 0.0;
  for (std::size_t h = 2; h <= 10; ++h) {
    if (h * periods + 1 >= n / 2) break;
    harmonics += harmonic_power(h);
  }
  return std::sqrt(harmonics / fundamental);
}

}  // namespace irlink::signal_chain
