#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "irlink/controller.hpp"
#include "irlink/error.hpp"
#include "irlink/filter.hpp"
#include "irlink/format.hpp"
#include "irlink/scenario.hpp"
#include "irlink/wav.hpp"
#include "settings.hpp"

namespace irlink::cli {
namespace {

namespace fs = std::filesystem;

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Writes to a sibling temp file and renames it over the target, so readers
// never see a partial artifact.
void write_atomic(const fs::path& target, const std::string& bytes) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    os.flush();
    if (!os) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<std::string> artifacts_for(const std::string& verb) {
  if (verb == "simulate") return {"timeseries.csv", "received.wav", "report.txt"};
  if (verb == "sweep-stability") return {"sweep_stability.csv"};
  if (verb == "stability-map") return {"stability_map.csv"};
  if (verb == "filter-response") return {"filter_response.csv", "filter_summary.txt"};
  return {"link_test.csv"};
}

std::string manifest_text(const Command& cmd, const Settings& s, const std::vector<std::string>& artifacts) {
  std::ostringstream os;
  os << "# irlink run manifest; reload with --config to reproduce\n"
     << "# version = " << IRLINK_VERSION_STRING << '\n'
     << "# command = " << cmd.verb << '\n'
     << "# seed = " << s.run_seed << '\n'
     << "# artifacts = manifest.txt";
  for (const auto& a : artifacts) os << ", " << a;
  os << '\n';
  write_snapshot(os, s);
  return os.str();
}

using Outputs = std::vector<std::pair<std::string, std::string>>;

Outputs run_simulate(const Settings& s, std::ostream& out) {
  const auto cfg = to_scenario(s);
  const auto r = scenario::run_scenario(cfg);

  std::ostringstream csv, wav_bytes, report;
  scenario::write_timeseries_csv(csv, r.series, cfg.audio_rate, cfg.control_rate);
  wav::write(wav_bytes, r.series.rx, cfg.chain.amp_clip);
  scenario::write_report(report, r.stability);
  report << '\n';
  scenario::write_report(report, r.audio);
  report << "\n[run]\naborted = " << (r.aborted ? "true" : "false") << '\n';

  out << "stability: " << scenario::to_string(r.stability.classification)
      << "\naudio: " << scenario::to_string(r.audio.classification) << '\n';
  return {{"timeseries.csv", csv.str()}, {"received.wav", wav_bytes.str()}, {"report.txt", report.str()}};
}

Outputs run_sweep(const Settings& s, unsigned jobs, std::ostream& out) {
  const auto cfg = to_scenario(s);
  std::vector<double> angles;
  for (double deg : s.sweep_set_angles_deg) angles.push_back(deg / kRadToDeg);
  const auto reports = scenario::stability_sweep(cfg, angles, jobs);

  std::ostringstream csv;
  csv << "set_angle_deg,classification,steady_angle_deg,oscillation_amplitude_deg\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    csv << fmt_double(s.sweep_set_angles_deg[i]) << ',' << scenario::to_string(r.classification) << ','
        << (r.steady_angle ? fmt_double(*r.steady_angle * kRadToDeg) : "") << ','
        << fmt_double(r.oscillation_amplitude * kRadToDeg) << '\n';
    out << fmt_fixed(s.sweep_set_angles_deg[i], 1) << " deg: " << scenario::to_string(r.classification);
    if (r.steady_angle) out << " at " << fmt_fixed(*r.steady_angle * kRadToDeg, 2) << " deg";
    out << '\n';
  }
  return {{"sweep_stability.csv", csv.str()}};
}

Outputs run_map(const Settings& s, std::ostream& out) {
  const auto cfg = to_scenario(s);
  const auto grid = control::stability_region(cfg.pendulum, {s.map_kp_min, s.map_kp_max},
                                              {s.map_kd_min, s.map_kd_max}, static_cast<std::size_t>(s.map_grid_n));
  std::ostringstream csv;
  control::write_stability_csv(csv, grid);
  const auto stable = std::count(grid.stable.begin(), grid.stable.end(), std::uint8_t{1});
  out << stable << " of " << grid.stable.size() << " cells stable\n";
  return {{"stability_map.csv", csv.str()}};
}

Outputs run_filter(const Settings& s, std::ostream& out) {
  const auto cfg = to_scenario(s);
  const auto tf = signal_chain::design_bandpass(cfg.filter);
  const auto freqs = signal_chain::log_space(s.response_f_min_hz, s.response_f_max_hz,
                                             static_cast<std::size_t>(s.response_points));
  const auto resp = signal_chain::frequency_response(tf, freqs);

  std::ostringstream csv;
  csv << "freq_hz,mag_db,phase_rad,group_delay_s\n";
  for (const auto& p : resp)
    csv << fmt_double(p.hz) << ',' << fmt_double(p.mag_db) << ',' << fmt_double(p.phase_rad) << ','
        << fmt_double(signal_chain::group_delay(tf, p.hz)) << '\n';

  const auto edges = signal_chain::band_edges(tf, s.response_f_min_hz, s.response_f_max_hz);
  const double delay_1k = signal_chain::group_delay(tf, 1000.0);
  std::ostringstream summary;
  summary << "[filter]\n"
          << "lower_edge_hz = " << fmt_double(edges.lower_hz) << '\n'
          << "upper_edge_hz = " << fmt_double(edges.upper_hz) << '\n'
          << "peak_hz = " << fmt_double(edges.peak_hz) << '\n'
          << "peak_db = " << fmt_double(edges.peak_db) << '\n'
          << "group_delay_1khz_s = " << fmt_double(delay_1k) << '\n';
  out << "pass band " << fmt_fixed(edges.lower_hz, 1) << " Hz to " << fmt_fixed(edges.upper_hz, 1)
      << " Hz, group delay at 1 kHz " << fmt_fixed(delay_1k * 1e3, 4) << " ms\n";
  return {{"filter_response.csv", csv.str()}, {"filter_summary.txt", summary.str()}};
}

Outputs run_link_test(const Settings& s, unsigned jobs, std::ostream& out) {
  const auto cfg = to_scenario(s);
  const auto profiles = link_profiles(s);
  const auto cells = scenario::link_test(cfg, profiles, jobs);

  std::ostringstream csv;
  csv << "vibration,controller,classification,dropout_fraction,mean_frame_correlation,snr_db,stability\n";
  for (const auto& c : cells) {
    csv << scenario::to_string(c.kind) << ',' << (c.controller_on ? "on" : "off") << ','
        << scenario::to_string(c.audio.classification) << ',' << fmt_double(c.audio.dropout_fraction) << ','
        << fmt_double(c.audio.mean_frame_correlation) << ',' << fmt_double(c.audio.snr_db) << ','
        << scenario::to_string(c.stability.classification) << '\n';
    out << scenario::to_string(c.kind) << ' ' << (c.controller_on ? "on" : "off") << ": "
        << scenario::to_string(c.audio.classification) << " (dropout " << fmt_fixed(c.audio.dropout_fraction, 3)
        << ", snr " << fmt_fixed(c.audio.snr_db, 1) << " dB)\n";
  }
  return {{"link_test.csv", csv.str()}};
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{"simulate", "sweep-stability", "stability-map", "filter-response",
                                          "link-test"};
  return v;
}

int execute(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    if (std::find(verbs().begin(), verbs().end(), cmd.verb) == verbs().end()) {
      err << "error: unknown command '" << cmd.verb << "'\n";
      return kExitConfig;
    }
    if (cmd.jobs == 0) {
      err << "error: --jobs must be at least 1\n";
      return kExitConfig;
    }

    Settings settings;
    if (cmd.config_path) apply_config_file(settings, *cmd.config_path);
    for (const auto& o : cmd.overrides) apply_override(settings, o);
    if (cmd.seed) settings.run_seed = *cmd.seed;
    (void)to_scenario(settings);  // reject a bad config before anything is written

    const auto artifacts = artifacts_for(cmd.verb);
    fs::create_directories(cmd.output_dir);
    write_atomic(cmd.output_dir / "manifest.txt", manifest_text(cmd, settings, artifacts));

    Outputs outputs;
    if (cmd.verb == "simulate") outputs = run_simulate(settings, out);
    else if (cmd.verb == "sweep-stability") outputs = run_sweep(settings, cmd.jobs, out);
    else if (cmd.verb == "stability-map") outputs = run_map(settings, out);
    else if (cmd.verb == "filter-response") outputs = run_filter(settings, out);
    else outputs = run_link_test(settings, cmd.jobs, out);

    for (const auto& [name, bytes] : outputs) write_atomic(cmd.output_dir / name, bytes);
    return kExitOk;
  } catch (const NumericFailure& e) {
    err << "numeric failure in " << e.quantity() << ": " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace irlink::cli
