#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irlink/filter.hpp"
#include "irlink/noise.hpp"
#include "irlink/signal.hpp"

namespace irlink::signal_chain {

/// Non-inverting op-amp stage: feedback resistor r1, ground leg r2.
struct AmplifierSpec {
  double r1 = 9e3;  ///< ohms
  double r2 = 1e3;  ///< ohms
};

/// A_V = 1 + R1/R2. Throws InvalidInput unless r1 >= 0 and r2 > 0.
double preamp_gain(const AmplifierSpec& spec);

/// Samplewise multiplication by a constant gain.
Signal amplify(const Signal& signal, double gain);

/// LED terminal voltage with direct resistor bias: V_LED = V1 − v_i.
Signal led_drive_resistor(const Signal& signal, double v1);

/// Exponential junction law of a transistor-biased emitter driver.
struct TransistorModel {
  double beta_t = 1e-3;  ///< current scale, A
  double v_th = 0.65;    ///< threshold voltage, V
  double v_t = 0.026;    ///< thermal voltage, V

  void validate() const;
};

/// LED current I = β·exp((v_bias + v_i − V_th)/V_T), in amperes.
/// Throws NumericFailure if any sample overflows.
Signal led_drive_transistor(const Signal& signal, const TransistorModel& model, double v_bias);

/// Reference amplitude modulation f(t)·A·sin(2π·f_c·t). The coupling-tube
/// link does not use it; kept for comparison. Throws InvalidInput above Nyquist.
Signal am_modulate(const Signal& signal, double carrier_amp, double carrier_hz);

/// Free-space optical hop between the emitter and the receiving tube.
struct ChannelSpec {
  double transconductance = 0.8;                 ///< constant A when the series is empty
  std::vector<double> transconductance_series;   ///< optional per-sample A(t)
  double lambert_order = 1.0;                    ///< beam profile exponent m in cos^m
  noise::NoiseSpec noise;
  double rx_floor = 0.0;                         ///< minimum usable received RMS, V

  void validate() const;
};

/// cos^m(misalignment), zero for |misalignment| >= π/2.
double beam_gain(double misalignment_rad, double lambert_order);

/// received = drive · A(t) · cos^m(misalignment) + noise(seed).
/// Throws InvalidInput for |misalignment| > π or a series length mismatch.
Signal channel_transmit(const Signal& drive, const ChannelSpec& spec, double misalignment_rad, std::uint64_t seed);

/// Per-sample misalignment variant (one angle per drive sample).
Signal channel_transmit(const Signal& drive, const ChannelSpec& spec, std::span<const double> misalignment_rad,
                        std::uint64_t seed);

/// Linear gain with hard symmetric clipping at ±clip_level.
Signal power_amp(const Signal& signal, double gain, double clip_level);

}  // namespace irlink::signal_chain
