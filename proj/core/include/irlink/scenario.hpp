#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "irlink/actuator.hpp"
#include "irlink/controller.hpp"
#include "irlink/dynamics.hpp"
#include "irlink/filter.hpp"
#include "irlink/signal.hpp"
#include "irlink/signal_chain.hpp"

namespace irlink::scenario {

/// Base-motion directions. `longitudinal` is in the swing plane (front-back),
/// `lateral` is out of it (left-right).
enum class VibrationKind { none, vertical, longitudinal, lateral };

struct VibrationProfile {
  VibrationKind kind = VibrationKind::none;
  double amplitude = 0.0;  ///< peak acceleration, m/s²
  double frequency = 1.0;  ///< Hz

  void validate() const;
};

/// What the base motion does to the pendulum and the beam at one instant.
struct BaseCoupling {
  double g_eff;             ///< m/s²
  double horizontal_accel;  ///< in-plane pivot acceleration, m/s²
  double lateral_pointing;  ///< out-of-plane beam deflection, rad
};

/// vertical: g_eff = g + a·sin(2πft).
/// longitudinal: in-plane pivot acceleration a·sin(2πft).
/// lateral: the out-of-plane tilt of the apparent vertical,
///          atan(a·sin(2πft)/g), which the beam sees directly.
BaseCoupling base_coupling(const VibrationProfile& profile, double t, double g);

/// Angle between the beam and the receiver axis when the beam is off by
/// `in_plane` in the swing plane and by `out_of_plane` across it:
/// cos(result) = cos(in_plane)·cos(out_of_plane). Result is in [0, π].
double beam_misalignment(double in_plane, double out_of_plane);

/// Everything between the audio source and the speaker except the optical hop.
struct LinkChain {
  signal_chain::AmplifierSpec preamp;
  double led_v1 = 2.0;     ///< LED bias supply, V
  double amp_gain = 2.0;   ///< power amplifier voltage gain
  double amp_clip = 5.0;   ///< power amplifier rail, V
};

struct StabilityThresholds {
  double stable_p2p = 0.017453292519943295;  ///< 1°, rad
  double small_p2p = 0.13962634015954636;    ///< 8°, rad
  double window_fraction = 0.2;              ///< trailing part of the run that is judged
  double min_window_s = 2.0;
};

struct AudioThresholds {
  double frame_s = 0.020;
  double min_correlation = 0.5;
  double complete_max_dropout = 0.02;
  double vanish_min_dropout = 0.60;
  double min_snr_db = 20.0;
  double max_lag_s = 0.010;
  double lag_window_s = 2.0;
};

struct ScenarioConfig {
  dynamics::PendulumParams pendulum;
  control::PdGains gains;
  bool controller_on = true;
  control::ErrorMode control_mode = control::ErrorMode::setpoint;
  double output_scale = 10.0;
  actuator::MotorParams motor;
  VibrationProfile vibration;
  signal_chain::ChannelSpec channel;
  signal_chain::FilterDesign filter;
  LinkChain chain;
  double set_angle = 0.0;      ///< rad
  double initial_angle = 0.0;  ///< rad, pendulum angle at t = 0
  double control_rate = 1000.0;
  double audio_rate = 48000.0;
  double duration = 12.0;
  std::uint64_t seed = 1;
  /// Audio to transmit; looped to cover the run. When unset a multitone of
  /// peak `source_level` is synthesized.
  std::optional<Signal> audio_source;
  double source_level = 0.1;  ///< V
  StabilityThresholds stability;
  AudioThresholds audio;

  void validate() const;
};

enum class StabilityClass { stable, small_oscillation, large_oscillation };
enum class AudioClass { complete, complete_with_noise, intermittent, vanish };

std::string_view to_string(StabilityClass c);
std::string_view to_string(AudioClass c);
std::string_view to_string(VibrationKind k);

struct StabilityReport {
  double set_angle = 0.0;
  StabilityClass classification = StabilityClass::large_oscillation;
  std::optional<double> steady_angle;  ///< mean of the judged window; only when stable
  double oscillation_amplitude = 0.0;  ///< half the judged peak-to-peak, rad
};

struct AudioReport {
  AudioClass classification = AudioClass::vanish;
  double dropout_fraction = 1.0;
  double mean_frame_correlation = 0.0;
  double snr_db = 0.0;
};

struct TimeSeries {
  std::vector<double> t;      ///< control ticks, s
  std::vector<double> theta;  ///< rad
  std::vector<double> omega;  ///< rad/s
  std::vector<double> duty;
  Signal tx;  ///< LED terminal voltage at the audio rate
  Signal rx;  ///< speaker voltage at the audio rate
};

struct ScenarioResult {
  TimeSeries series;
  StabilityReport stability;
  AudioReport audio;
  bool aborted = false;  ///< |θ| exceeded π; series end at the abort tick
};

/// Peak-to-peak over the trailing window: stable below 1°, small oscillation
/// below 8°, large otherwise (or when `aborted`). Throws InvalidInput if the
/// window is shorter than thresholds.min_window_s.
StabilityReport classify_stability(std::span<const double> theta, double sample_rate, double set_angle,
                                   const StabilityThresholds& thresholds, bool aborted = false);

/// Frame-by-frame comparison of `received` against `input` after compensating
/// delay and polarity at the peak of the cross-correlation. A frame drops if
/// its RMS is below `rx_floor` or its correlation is below the threshold.
/// Throws InvalidInput on a rate mismatch, MetricUndefined on silent input.
AudioReport classify_audio(const Signal& input, const Signal& received, const AudioThresholds& thresholds,
                           double rx_floor);

/// Receive path output for an ideally aligned, noise-free link: the reference
/// the audio classification compares against.
Signal ideal_reception(const ScenarioConfig& config, const Signal& source);

/// The transmitted program material for a config (its source, looped, or the
/// synthesized multitone).
Signal program_audio(const ScenarioConfig& config);

/// Closed loop simulation of one experiment. Deterministic in (config, seed).
ScenarioResult run_scenario(const ScenarioConfig& config);

/// One run per set angle, seeds base.seed + index, results in input order.
/// `jobs` bounds the worker threads; output does not depend on it.
std::vector<StabilityReport> stability_sweep(const ScenarioConfig& base, std::span<const double> set_angles,
                                             unsigned jobs = 1);

struct LinkCell {
  VibrationKind kind;
  bool controller_on;
  AudioReport audio;
  StabilityReport stability;
};

/// The vibration × controller matrix: for every profile, a controller-on and a
/// controller-off run (in that order). Seeds base.seed + cell index.
std::vector<LinkCell> link_test(const ScenarioConfig& base, std::span<const VibrationProfile> profiles,
                                unsigned jobs = 1);

void write_timeseries_csv(std::ostream& os, const TimeSeries& series, double audio_rate, double control_rate);
void write_report(std::ostream& os, const StabilityReport& stability);
void write_report(std::ostream& os, const AudioReport& audio);

}  // namespace irlink::scenario
