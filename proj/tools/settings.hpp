#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irlink/error.hpp"
#include "irlink/scenario.hpp"

namespace irlink::cli {

/// Malformed config text or an unusable override. `line` is 0 for
/// command-line overrides.
class ConfigError : public Error {
 public:
  ConfigError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Every tunable, stored in the units its config key names. Converted to
/// library types only by to_scenario(), so a snapshot reloads bit-exactly.
struct Settings {
  double pendulum_m_kg = 0.2;
  double pendulum_l_m = 0.3;
  double pendulum_l1_m = 0.25;
  double pendulum_l2_m = 0.0;  // 0 selects l/2
  double pendulum_g_m_s2 = 9.8;
  double pendulum_c_damp_nms = 0.0;
  std::string pendulum_gravity = "restoring";

  bool controller_enabled = true;
  std::string controller_mode = "setpoint";
  double controller_kp = 80.0;
  double controller_kd = 11.4;
  double controller_output_scale = 10.0;
  double controller_rate_hz = 1000.0;

  double motor_v_ref_v = 7.4;
  double motor_force_per_volt_n_v = 0.03;
  double motor_max_duty = 1.0;
  double motor_deadband_duty = 0.0;

  std::string vibration_kind = "none";
  double vibration_amplitude_m_s2 = 0.0;
  double vibration_frequency_hz = 1.0;

  double channel_transconductance = 0.8;
  double channel_lambert_order = 31.0;
  double channel_rx_floor_v = 0.15;
  double noise_broadband_rms_v = 0.02;
  double noise_low_band_rms_v = 0.05;
  double noise_high_band_rms_v = 0.05;

  double filter_r1_ohm = 6.8e3;
  double filter_c1_f = 5e-9;
  double filter_r2_ohm = 3.6e3;
  double filter_c2_f = 15e-9;
  double filter_r3_ohm = 5e3;
  double filter_c3_f = 1e-6;
  double filter_r4_ohm = 10e3;
  double filter_c4_f = 1e-6;
  double filter_r5_ohm = 10.4e3;
  double filter_c5_f = 1e-6;

  double chain_preamp_r1_ohm = 9e3;
  double chain_preamp_r2_ohm = 1e3;
  double chain_led_v1_v = 2.0;
  double chain_amp_gain = 2.0;
  double chain_amp_clip_v = 5.0;

  double run_set_angle_deg = 0.0;
  double run_initial_angle_deg = 2.0;
  double run_audio_rate_hz = 48000.0;
  double run_duration_s = 12.0;
  std::uint64_t run_seed = 1;
  std::string run_audio_source;  // WAV path, empty for the built-in multitone
  double run_source_level_v = 0.1;

  double stability_stable_p2p_deg = 1.0;
  double stability_small_p2p_deg = 8.0;
  double stability_window_fraction = 0.2;
  double stability_min_window_s = 2.0;

  double audio_frame_s = 0.02;
  double audio_min_correlation = 0.5;
  double audio_complete_max_dropout = 0.02;
  double audio_vanish_min_dropout = 0.6;
  double audio_min_snr_db = 20.0;
  double audio_max_lag_s = 0.01;
  double audio_lag_window_s = 2.0;

  std::vector<double> sweep_set_angles_deg{-20.0, -15.0, -10.0, 0.0, 10.0, 15.0, 20.0};

  double map_kp_min = -5.0;
  double map_kp_max = 50.0;
  double map_kd_min = -5.0;
  double map_kd_max = 20.0;
  std::uint64_t map_grid_n = 200;

  double response_f_min_hz = 1.0;
  double response_f_max_hz = 100000.0;
  std::uint64_t response_points = 401;

  double link_vertical_amplitude_m_s2 = 4.0;
  double link_vertical_frequency_hz = 2.2;
  double link_longitudinal_amplitude_m_s2 = 2.4;
  double link_longitudinal_frequency_hz = 1.1;
  double link_lateral_amplitude_m_s2 = 3.5;
  double link_lateral_frequency_hz = 1.5;
};

/// Applies one `key = value` assignment. Throws ConfigError naming the key
/// when it is unknown or the value does not parse.
void assign(Settings& settings, std::string_view key, std::string_view value, const std::string& source,
            std::size_t line);

/// Parses flat `section.key = value` text; `#` starts a comment. A relative
/// run.audio_source is resolved against `base_dir`.
void apply_config_text(Settings& settings, std::istream& is, const std::string& source,
                       const std::filesystem::path& base_dir = {});
void apply_config_file(Settings& settings, const std::filesystem::path& path);

/// `KEY=VALUE` from the command line; relative paths resolve against the
/// working directory.
void apply_override(Settings& settings, std::string_view assignment);

/// Every key with its current value, one `key = value` line each, in a fixed
/// order. Reloading the text reproduces `settings` exactly.
void write_snapshot(std::ostream& os, const Settings& settings);

std::vector<std::string> known_keys();

/// Library view of the settings; reads the audio source, if any. Throws
/// ConfigError for bad enumerations and InvalidInput for values the library
/// rejects.
scenario::ScenarioConfig to_scenario(const Settings& settings);

/// The four link-test vibration rows in table order.
std::vector<scenario::VibrationProfile> link_profiles(const Settings& settings);

}  // namespace irlink::cli
