#pragma once

#include <cstddef>
#include <span>

#include "irlink/signal.hpp"

namespace irlink::signal_chain {

double rms(std::span<const double> x);

/// Σxy / √(Σx²·Σy²); 0 when either side is silent.
double normalized_correlation(std::span<const double> x, std::span<const double> y);

/// Lag (in samples, |lag| <= max_lag) maximizing |Σ ref[i]·rx[i + lag]| over the
/// first `window` samples of ref. Positive lag means rx is late.
long best_lag(std::span<const double> ref, std::span<const double> rx, std::size_t max_lag, std::size_t window);

/// Total harmonic distortion √(Σ_{k=2..10} P_k) / √P_1. Analyzes the final
/// whole number of fundamental periods under a periodic Hann window, summing
/// each harmonic's three centre bins. Harmonics above Nyquist are skipped.
/// Throws InvalidInput if fewer than 10 periods are present or
/// fundamental >= sample_rate/10, MetricUndefined if the fundamental carries
/// no power.
double thd(const Signal& signal, double fundamental_hz);

}  // namespace irlink::signal_chain
