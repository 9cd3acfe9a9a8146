#include "settings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <variant>

#include "irlink/format.hpp"
#include "irlink/wav.hpp"

namespace irlink::cli {
namespace {

using Member = std::variant<double Settings::*, std::uint64_t Settings::*, bool Settings::*, std::string Settings::*,
                            std::vector<double> Settings::*>;

struct Field {
  std::string_view key;
  Member member;
};

// Snapshot order is this table's order.
const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      {"pendulum.m_kg", &Settings::pendulum_m_kg},
      {"pendulum.l_m", &Settings::pendulum_l_m},
      {"pendulum.l1_m", &Settings::pendulum_l1_m},
      {"pendulum.l2_m", &Settings::pendulum_l2_m},
      {"pendulum.g_m_s2", &Settings::pendulum_g_m_s2},
      {"pendulum.c_damp_nms", &Settings::pendulum_c_damp_nms},
      {"pendulum.gravity", &Settings::pendulum_gravity},
      {"controller.enabled", &Settings::controller_enabled},
      {"controller.mode", &Settings::controller_mode},
      {"controller.kp", &Settings::controller_kp},
      {"controller.kd", &Settings::controller_kd},
      {"controller.output_scale", &Settings::controller_output_scale},
      {"controller.rate_hz", &Settings::controller_rate_hz},
      {"motor.v_ref_v", &Settings::motor_v_ref_v},
      {"motor.force_per_volt_n_v", &Settings::motor_force_per_volt_n_v},
      {"motor.max_duty", &Settings::motor_max_duty},
      {"motor.deadband_duty", &Settings::motor_deadband_duty},
      {"vibration.kind", &Settings::vibration_kind},
      {"vibration.amplitude_m_s2", &Settings::vibration_amplitude_m_s2},
      {"vibration.frequency_hz", &Settings::vibration_frequency_hz},
      {"channel.transconductance", &Settings::channel_transconductance},
      {"channel.lambert_order", &Settings::channel_lambert_order},
      {"channel.rx_floor_v", &Settings::channel_rx_floor_v},
      {"noise.broadband_rms_v", &Settings::noise_broadband_rms_v},
      {"noise.low_band_rms_v", &Settings::noise_low_band_rms_v},
      {"noise.high_band_rms_v", &Settings::noise_high_band_rms_v},
      {"filter.r1_ohm", &Settings::filter_r1_ohm},
      {"filter.c1_f", &Settings::filter_c1_f},
      {"filter.r2_ohm", &Settings::filter_r2_ohm},
      {"filter.c2_f", &Settings::filter_c2_f},
      {"filter.r3_ohm", &Settings::filter_r3_ohm},
      {"filter.c3_f", &Settings::filter_c3_f},
      {"filter.r4_ohm", &Settings::filter_r4_ohm},
      {"filter.c4_f", &Settings::filter_c4_f},
      {"filter.r5_ohm", &Settings::filter_r5_ohm},
      {"filter.c5_f", &Settings::filter_c5_f},
      {"chain.preamp_r1_ohm", &Settings::chain_preamp_r1_ohm},
      {"chain.preamp_r2_ohm", &Settings::chain_preamp_r2_ohm},
      {"chain.led_v1_v", &Settings::chain_led_v1_v},
      {"chain.amp_gain", &Settings::chain_amp_gain},
      {"chain.amp_clip_v", &Settings::chain_amp_clip_v},
      {"run.set_angle_deg", &Settings::run_set_angle_deg},
      {"run.initial_angle_deg", &Settings::run_initial_angle_deg},
      {"run.audio_rate_hz", &Settings::run_audio_rate_hz},
      {"run.duration_s", &Settings::run_duration_s},
      {"run.seed", &Settings::run_seed},
      {"run.audio_source", &Settings::run_audio_source},
      {"run.source_level_v", &Settings::run_source_level_v},
      {"stability.stable_p2p_deg", &Settings::stability_stable_p2p_deg},
      {"stability.small_p2p_deg", &Settings::stability_small_p2p_deg},
      {"stability.window_fraction", &Settings::stability_window_fraction},
      {"stability.min_window_s", &Settings::stability_min_window_s},
      {"audio.frame_s", &Settings::audio_frame_s},
      {"audio.min_correlation", &Settings::audio_min_correlation},
      {"audio.complete_max_dropout", &Settings::audio_complete_max_dropout},
      {"audio.vanish_min_dropout", &Settings::audio_vanish_min_dropout},
      {"audio.min_snr_db", &Settings::audio_min_snr_db},
      {"audio.max_lag_s", &Settings::audio_max_lag_s},
      {"audio.lag_window_s", &Settings::audio_lag_window_s},
      {"sweep.set_angles_deg", &Settings::sweep_set_angles_deg},
      {"map.kp_min", &Settings::map_kp_min},
      {"map.kp_max", &Settings::map_kp_max},
      {"map.kd_min", &Settings::map_kd_min},
      {"map.kd_max", &Settings::map_kd_max},
      {"map.grid_n", &Settings::map_grid_n},
      {"response.f_min_hz", &Settings::response_f_min_hz},
      {"response.f_max_hz", &Settings::response_f_max_hz},
      {"response.points", &Settings::response_points},
      {"link.vertical_amplitude_m_s2", &Settings::link_vertical_amplitude_m_s2},
      {"link.vertical_frequency_hz", &Settings::link_vertical_frequency_hz},
      {"link.longitudinal_amplitude_m_s2", &Settings::link_longitudinal_amplitude_m_s2},
      {"link.longitudinal_frequency_hz", &Settings::link_longitudinal_frequency_hz},
      {"link.lateral_amplitude_m_s2", &Settings::link_lateral_amplitude_m_s2},
      {"link.lateral_frequency_hz", &Settings::link_lateral_frequency_hz},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && end == text.data() + text.size() && std::isfinite(out);
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && end == text.data() + text.size();
}

std::string format_value(const Settings& s, const Member& member) {
  return std::visit(
      [&](auto ptr) -> std::string {
        using T = std::remove_cvref_t<decltype(s.*ptr)>;
        const T& v = s.*ptr;
        if constexpr (std::is_same_v<T, double>) {
          return fmt_double(v);
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          std::string out;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ", ";
            out += fmt_double(v[i]);
          }
          return out;
        }
      },
      member);
}

void resolve_audio_path(Settings& s, const std::filesystem::path& base_dir) {
  if (s.run_audio_source.empty()) return;
  std::filesystem::path p(s.run_audio_source);
  if (p.is_relative()) p = base_dir.empty() ? std::filesystem::absolute(p) : base_dir / p;
  s.run_audio_source = p.lexically_normal().string();
}

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

ConfigError::ConfigError(std::string source, std::size_t line, const std::string& what)
    : Error(line ? source + ":" + std::to_string(line) + ": " + what : source + ": " + what),
      source_(std::move(source)),
      line_(line) {}

void assign(Settings& settings, std::string_view key, std::string_view value, const std::string& source,
            std::size_t line) {
  const auto& table = fields();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
  if (it == table.end()) throw ConfigError(source, line, "unknown key '" + std::string(key) + "'");

  auto bad = [&](const char* expected) {
    return ConfigError(source, line,
                       "key '" + std::string(key) + "': expected " + expected + ", got '" + std::string(value) + "'");
  };
  std::visit(
      [&](auto ptr) {
        using T = std::remove_cvref_t<decltype(settings.*ptr)>;
        T& target = settings.*ptr;
        if constexpr (std::is_same_v<T, double>) {
          if (!parse_double(value, target)) throw bad("a finite number");
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          if (!parse_u64(value, target)) throw bad("a non-negative integer");
        } else if constexpr (std::is_same_v<T, bool>) {
          if (value == "true") target = true;
          else if (value == "false") target = false;
          else throw bad("true or false");
        } else if constexpr (std::is_same_v<T, std::string>) {
          target = std::string(value);
        } else {
          std::vector<double> list;
          std::string_view rest = value;
          while (!rest.empty()) {
            const auto comma = rest.find(',');
            double v = 0.0;
            if (!parse_double(trim(rest.substr(0, comma)), v)) throw bad("a comma-separated list of numbers");
            list.push_back(v);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
          }
          if (list.empty()) throw bad("a non-empty list");
          target = std::move(list);
        }
      },
      it->member);
}

void apply_config_text(Settings& settings, std::istream& is, const std::string& source,
                       const std::filesystem::path& base_dir) {
  const std::string audio_before = settings.run_audio_source;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(source, line_no, "expected 'key = value', got '" + std::string(line) + "'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source, line_no, "missing key before '='");
    assign(settings, key, trim(line.substr(eq + 1)), source, line_no);
  }
  if (settings.run_audio_source != audio_before) resolve_audio_path(settings, base_dir);
}

void apply_config_file(Settings& settings, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  const auto dir = std::filesystem::absolute(path).parent_path();
  apply_config_text(settings, in, path.string(), dir);
}

void apply_override(Settings& settings, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("--set", 0, "expected KEY=VALUE, got '" + std::string(assignment) + "'");
  const std::string audio_before = settings.run_audio_source;
  assign(settings, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "--set", 0);
  if (settings.run_audio_source != audio_before) resolve_audio_path(settings, {});
}

void write_snapshot(std::ostream& os, const Settings& settings) {
  for (const auto& f : fields()) os << f.key << " = " << format_value(settings, f.member) << '\n';
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.emplace_back(f.key);
  return keys;
}

scenario::ScenarioConfig to_scenario(const Settings& s) {
  scenario::ScenarioConfig c;
  c.pendulum.m = s.pendulum_m_kg;
  c.pendulum.l = s.pendulum_l_m;
  c.pendulum.l1 = s.pendulum_l1_m;
  if (s.pendulum_l2_m != 0.0) c.pendulum.l2 = s.pendulum_l2_m;
  c.pendulum.g = s.pendulum_g_m_s2;
  c.pendulum.c_damp = s.pendulum_c_damp_nms;
  if (s.pendulum_gravity == "restoring") c.pendulum.gravity = dynamics::GravitySign::restoring;
  else if (s.pendulum_gravity == "inverted") c.pendulum.gravity = dynamics::GravitySign::inverted;
  else throw ConfigError("pendulum.gravity", 0, "expected restoring or inverted, got '" + s.pendulum_gravity + "'");

  c.controller_on = s.controller_enabled;
  if (s.controller_mode == "setpoint") c.control_mode = control::ErrorMode::setpoint;
  else if (s.controller_mode == "literal") c.control_mode = control::ErrorMode::literal;
  else throw ConfigError("controller.mode", 0, "expected setpoint or literal, got '" + s.controller_mode + "'");
  c.gains = {s.controller_kp, s.controller_kd};
  c.output_scale = s.controller_output_scale;
  c.control_rate = s.controller_rate_hz;

  c.motor = {s.motor_v_ref_v, s.motor_force_per_volt_n_v, s.motor_max_duty, s.motor_deadband_duty};

  if (s.vibration_kind == "none") c.vibration.kind = scenario::VibrationKind::none;
  else if (s.vibration_kind == "vertical") c.vibration.kind = scenario::VibrationKind::vertical;
  else if (s.vibration_kind == "longitudinal") c.vibration.kind = scenario::VibrationKind::longitudinal;
  else if (s.vibration_kind == "lateral") c.vibration.kind = scenario::VibrationKind::lateral;
  else
    throw ConfigError("vibration.kind", 0,
                      "expected none, vertical, longitudinal or lateral, got '" + s.vibration_kind + "'");
  c.vibration.amplitude = s.vibration_amplitude_m_s2;
  c.vibration.frequency = s.vibration_frequency_hz;

  c.channel.transconductance = s.channel_transconductance;
  c.channel.lambert_order = s.channel_lambert_order;
  c.channel.rx_floor = s.channel_rx_floor_v;
  c.channel.noise = {s.noise_broadband_rms_v, s.noise_low_band_rms_v, s.noise_high_band_rms_v};

  c.filter = {s.filter_c1_f, s.filter_r1_ohm, s.filter_c2_f, s.filter_r2_ohm, s.filter_c3_f,
              s.filter_r3_ohm, s.filter_c4_f, s.filter_r4_ohm, s.filter_c5_f, s.filter_r5_ohm};

  c.chain.preamp = {s.chain_preamp_r1_ohm, s.chain_preamp_r2_ohm};
  c.chain.led_v1 = s.chain_led_v1_v;
  c.chain.amp_gain = s.chain_amp_gain;
  c.chain.amp_clip = s.chain_amp_clip_v;

  c.set_angle = s.run_set_angle_deg * kDeg;
  c.initial_angle = s.run_initial_angle_deg * kDeg;
  c.audio_rate = s.run_audio_rate_hz;
  c.duration = s.run_duration_s;
  c.seed = s.run_seed;
  c.source_level = s.run_source_level_v;
  if (!s.run_audio_source.empty()) {
    std::ifstream in(s.run_audio_source, std::ios::binary);
    if (!in) throw ConfigError("run.audio_source", 0, "cannot open '" + s.run_audio_source + "'");
    c.audio_source = wav::read(in, s.run_source_level_v);
  }

  c.stability = {s.stability_stable_p2p_deg * kDeg, s.stability_small_p2p_deg * kDeg, s.stability_window_fraction,
                 s.stability_min_window_s};
  c.audio = {s.audio_frame_s,       s.audio_min_correlation, s.audio_complete_max_dropout,
             s.audio_vanish_min_dropout, s.audio_min_snr_db, s.audio_max_lag_s,
             s.audio_lag_window_s};
  c.validate();
  return c;
}

std::vector<scenario::VibrationProfile> link_profiles(const Settings& s) {
  using scenario::VibrationKind;
  return {
      {VibrationKind::none, 0.0, 1.0},
      {VibrationKind::vertical, s.link_vertical_amplitude_m_s2, s.link_vertical_frequency_hz},
      {VibrationKind::longitudinal, s.link_longitudinal_amplitude_m_s2, s.link_longitudinal_frequency_hz},
      {VibrationKind::lateral, s.link_lateral_amplitude_m_s2, s.link_lateral_frequency_hz},
  };
}

}  // namespace irlink::cli
