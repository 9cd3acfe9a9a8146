#include "irlink/signal_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "irlink/error.hpp"

namespace irlink::signal_chain {
namespace {

template <typename Fn>
Signal map_samples(const Signal& in, Fn fn) {
  std::vector<double> out(in.size());
  const auto s = in.samples();
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = fn(s[i], i);
  return {std::move(out), in.sample_rate()};
}

}  // namespace

double preamp_gain(const AmplifierSpec& spec) {
  detail::require(std::isfinite(spec.r1) && spec.r1 >= 0.0, "preamp r1 must be >= 0");
  detail::require(std::isfinite(spec.r2) && spec.r2 > 0.0, "preamp r2 must be > 0");
  return 1.0 + spec.r1 / spec.r2;
}

Signal amplify(const Signal& signal, double gain) {
  detail::require_finite(gain, "gain");
  return map_samples(signal, [gain](double x, std::size_t) { return gain * x; });
}

Signal led_drive_resistor(const Signal& signal, double v1) {
  detail::require_finite(v1, "LED supply voltage");
  return map_samples(signal, [v1](double x, std::size_t) { return v1 - x; });
}

void TransistorModel::validate() const {
  detail::require(std::isfinite(beta_t) && beta_t > 0.0, "transistor beta_t must be > 0");
  detail::require(std::isfinite(v_t) && v_t > 0.0, "thermal voltage must be > 0");
  detail::require_finite(v_th, "threshold voltage");
}

Signal led_drive_transistor(const Signal& signal, const TransistorModel& model, double v_bias) {
  model.validate();
  detail::require_finite(v_bias, "bias voltage");
  std::vector<double> out(signal.size());
  const auto s = signal.samples();
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = model.beta_t * std::exp((v_bias + s[i] - model.v_th) / model.v_t);
    if (!std::isfinite(out[i])) throw NumericFailure("led_current", "transistor drive current overflowed");
  }
  return {std::move(out), signal.sample_rate()};
}

Signal am_modulate(const Signal& signal, double carrier_amp, double carrier_hz) {
  detail::require_finite(carrier_amp, "carrier amplitude");
  detail::require(std::isfinite(carrier_hz) && carrier_hz >= 0.0, "carrier frequency must be >= 0");
  detail::require(carrier_hz < signal.sample_rate() / 2.0, "carrier frequency violates Nyquist");
  const double w = 2.0 * std::numbers::pi * carrier_hz / signal.sample_rate();
  return map_samples(signal, [=](double x, std::size_t i) {
    return x * carrier_amp * std::sin(w * static_cast<double>(i));
  });
}

void ChannelSpec::validate() const {
  detail::require_finite(transconductance, "transconductance");
  for (double a : transconductance_series) detail::require_finite(a, "transconductance sample");
  detail::require(std::isfinite(lambert_order) && lambert_order >= 0.0, "lambert order must be >= 0");
  detail::require(std::isfinite(rx_floor) && rx_floor >= 0.0, "rx floor must be >= 0");
  noise.validate();
}

double beam_gain(double misalignment_rad, double lambert_order) {
  const double a = std::abs(misalignment_rad);
  if (a >= std::numbers::pi / 2.0) return 0.0;
  return std::pow(std::cos(a), lambert_order);
}

Signal channel_transmit(const Signal& drive, const ChannelSpec& spec, double misalignment_rad, std::uint64_t seed) {
  const std::vector<double> mis(drive.size(), misalignment_rad);
  return channel_transmit(drive, spec, mis, seed);
}

Signal channel_transmit(const Signal& drive, const ChannelSpec& spec, std::span<const double> misalignment_rad,
                        std::uint64_t seed) {
  spec.validate();
  detail::require(misalignment_rad.size() == drive.size(), "misalignment series must match the drive length");
  detail::require(spec.transconductance_series.empty() || spec.transconductance_series.size() == drive.size(),
                  "transconductance series must match the drive length");
  std::vector<double> out = noise::synthesize(spec.noise, drive.sample_rate(), drive.size(), seed);
  const auto x = drive.samples();
  // The beam factor is recomputed only when the angle changes (it is held
  // across each control period).
  double last_angle = std::numeric_limits<double>::quiet_NaN();
  double gain = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double angle = misalignment_rad[i];
    if (angle != last_angle) {
      detail::require(std::isfinite(angle) && std::abs(angle) <= std::numbers::pi, "|misalignment| must be <= pi");
      gain = beam_gain(angle, spec.lambert_order);
      last_angle = angle;
    }
    const double a = spec.transconductance_series.empty() ? spec.transconductance : spec.transconductance_series[i];
    out[i] += x[i] * a * gain;
  }
  return {std::move(out), drive.sample_rate()};
}

Signal power_amp(const Signal& signal, double gain, double clip_level) {
  detail::require(std::isfinite(gain) && gain > 0.0, "power amp gain must be > 0");
  detail::require(std::isfinite(clip_level) && clip_level > 0.0, "clip level must be > 0");
  return map_samples(signal, [=](double x, std::size_t) { return std::clamp(gain * x, -clip_level, clip_level); });
}

}  // namespace irlink::signal_chain
