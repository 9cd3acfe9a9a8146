// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.
//
//   irlink_acceptance [config-path] [scratch-dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "irlink/actuator.hpp"
#include "irlink/controller.hpp"
#include "irlink/dynamics.hpp"
#include "irlink/filter.hpp"
#include "irlink/format.hpp"
#include "irlink/metrics.hpp"
#include "irlink/scenario.hpp"
#include "irlink/signal_chain.hpp"
#include "settings.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
namespace scn = irlink::scenario;
namespace sc = irlink::signal_chain;
namespace ctl = irlink::control;
namespace dyn = irlink::dynamics;
using irlink::Signal;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr double kDeg = oracle::kPi / 180.0;

// Pinned from the pole-sum oracle.
constexpr double kGroupDelay1k = 1.6938642938051237e-4;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

irlink::cli::Settings load(const fs::path& config) {
  irlink::cli::Settings s;
  irlink::cli::apply_config_file(s, config);
  return s;
}

Outcome stability_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const dyn::PendulumParams p;  // m = 1, l = 0.3, l1 = 0.3, g = 9.8
  const std::size_t n = 200;
  const auto grid = ctl::stability_region(p, {-5.0, 50.0}, {-5.0, 20.0}, n);
  const double stiffness = p.gravity_stiffness();
  std::size_t checked = 0, agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ctl::PdGains k{grid.kp_axis[i], grid.kd_axis[j]};
      if (std::min(std::abs(k.kd + p.c_damp), std::abs(k.kp + stiffness)) < 1e-9) continue;
      const auto poles = ctl::closed_loop_tf(p, k).poles();
      const double re = oracle::max_real_part(std::vector<oracle::Complex>(poles.begin(), poles.end()));
      ++checked;
      if (grid.at(i, j) == (re < 0.0)) ++agree;
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << agree << "/" << checked << " cells agree, " << irlink::fmt_fixed(dt, 3) << " s";
  return {agree == checked && checked > 0 && dt < 5.0, d.str()};
}

struct FreeRun {
  std::vector<double> theta;
  double max_drift = 0.0;
};

FreeRun free_pendulum() {
  dyn::PendulumParams p;
  p.l = 0.3;
  p.g = 9.8;
  dyn::PendulumState s{0.01, 0.0, 0.0};
  const double e0 = dyn::mechanical_energy(p, s);
  FreeRun run;
  for (int i = 0; i <= 10000; ++i) {
    run.theta.push_back(s.theta);
    run.max_drift = std::max(run.max_drift, std::abs(dyn::mechanical_energy(p, s) - e0) / std::abs(e0));
    if (i < 10000) s = dyn::step(p, s, 0.0, 1e-3);
  }
  return run;
}

Outcome natural_frequency(const FreeRun& run) {
  const double w = oracle::zero_crossing_omega(run.theta, 1e-3);
  const double err = std::abs(w - 7.0) / 7.0;
  return {err < 1e-3, "omega = " + irlink::fmt_fixed(w, 6) + " rad/s, error " + irlink::fmt_double(err)};
}

Outcome energy(const FreeRun& run) {
  return {run.max_drift < 1e-6, "max relative drift " + irlink::fmt_double(run.max_drift)};
}

Outcome damping_monotone() {
  const dyn::PendulumParams p;
  const ctl::PdGains base{10.0, 0.0};
  const double a = p.inertia(), c = base.kp + p.gravity_stiffness();
  const double kd_crit = 2.0 * std::sqrt(a * c);
  double prev = -1.0;
  int increasing = 0, underdamped = 0;
  for (int i = 0; i < 50; ++i) {
    const double kd = kd_crit * (0.01 + 0.98 * i / 49.0);
    if (ctl::is_underdamped(p, {base.kp, kd})) ++underdamped;
    const double z = ctl::damping_ratio(p, {base.kp, kd});
    if (z > prev) ++increasing;
    prev = z;
  }
  return {increasing == 50 && underdamped == 50,
          std::to_string(increasing) + "/50 strictly increasing, " + std::to_string(underdamped) + "/50 underdamped"};
}

Outcome table2(const irlink::cli::Settings& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = irlink::cli::to_scenario(s);
  const std::vector<double> deg{-20.0, -15.0, -10.0, 0.0, 10.0, 15.0, 20.0};
  std::vector<double> rad;
  for (double d : deg) rad.push_back(d * kDeg);
  using SC = scn::StabilityClass;
  const std::vector<SC> want{SC::large_oscillation, SC::small_oscillation, SC::stable, SC::stable,
                             SC::stable,            SC::small_oscillation, SC::large_oscillation};
  const auto reports = scn::stability_sweep(cfg, rad, 1);
  bool ok = true;
  std::ostringstream d;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    bool cell = r.classification == want[i];
    if (r.steady_angle) cell = cell && std::abs(*r.steady_angle - rad[i]) <= 2.0 * kDeg;
    ok = ok && cell;
    d << irlink::fmt_double(deg[i]) << ":" << scn::to_string(r.classification);
    if (r.steady_angle) d << "@" << irlink::fmt_fixed(*r.steady_angle / kDeg, 2);
    d << (i + 1 < reports.size() ? " " : "");
  }
  const double dt = seconds_since(t0);
  d << ", " << irlink::fmt_fixed(dt, 2) << " s";
  return {ok && dt < 60.0, d.str()};
}

Outcome table3(const irlink::cli::Settings& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = irlink::cli::to_scenario(s);
  const auto cells = scn::link_test(cfg, irlink::cli::link_profiles(s), 1);
  using AC = scn::AudioClass;
  // Row order: stable, vertical, front-back (in-plane), left-right (out-of-plane); on then off.
  const std::vector<AC> want{AC::complete,          AC::complete, AC::complete,     AC::intermittent,
                             AC::complete_with_noise, AC::vanish, AC::intermittent, AC::vanish};
  int matched = 0;
  bool ordered = true;
  std::ostringstream d;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].audio.classification == want[i]) ++matched;
    if (i % 2 == 1 && cells[i - 1].audio.dropout_fraction > cells[i].audio.dropout_fraction) ordered = false;
    d << scn::to_string(cells[i].kind) << "/" << (cells[i].controller_on ? "on" : "off") << "="
      << scn::to_string(cells[i].audio.classification) << (cells[i].audio.classification == want[i] ? "" : "(!)")
      << " ";
  }
  const double dt = seconds_since(t0);
  d << "| " << matched << "/8 match, on<=off " << (ordered ? "in every row" : "VIOLATED") << ", "
    << irlink::fmt_fixed(dt, 2) << " s";
  return {matched >= 7 && ordered && dt < 120.0, d.str()};
}

Outcome link_delay() {
  const double tau = sc::group_delay(sc::design_bandpass({}), 1000.0);
  const bool in_band = tau >= 0.075e-3 && tau <= 0.30e-3;
  const bool pinned = std::abs(tau / kGroupDelay1k - 1.0) < 1e-7;
  return {in_band && pinned, "group delay at 1 kHz = " + irlink::fmt_fixed(tau * 1e3, 6) + " ms (pinned " +
                                 irlink::fmt_fixed(kGroupDelay1k * 1e3, 6) + " ms)"};
}

Outcome distortion() {
  const double fs = 48000.0, f0 = 1000.0, depth = 0.5;
  const std::size_t n = 96000;

  // Resistor bias: v_i swings depth·V1 around the bias after the preamp.
  const double v1 = 2.0, preamp = sc::preamp_gain({9e3, 1e3});
  const auto source = Signal::sine(f0, depth * v1 / preamp, fs, n);
  const auto sections = sc::bandpass_sections({});
  const auto dig = sc::discretize(std::span<const irlink::TransferFunction>(sections), fs);
  const auto drive = sc::led_drive_resistor(sc::amplify(source, preamp), v1);
  const auto rx = sc::channel_transmit(drive, sc::ChannelSpec{}, 0.0, 0);
  const auto out = sc::power_amp(sc::filter_apply(dig, rx), 2.0, 1e3);
  const double thd_resistor = sc::thd(out.slice(n / 2, n / 2), f0);

  // Transistor bias: the same depth applied to the junction exponent.
  const sc::TransistorModel m;
  const auto current = sc::led_drive_transistor(Signal::sine(f0, depth * m.v_t, fs, n), m, m.v_th);
  const double thd_transistor = sc::thd(current, f0);

  const bool ok = thd_resistor < 1e-6 && thd_transistor > 10.0 * thd_resistor;
  return {ok, "THD transistor " + irlink::fmt_double(thd_transistor) + ", resistor " + irlink::fmt_double(thd_resistor)};
}

Outcome identities() {
  const double a = sc::preamp_gain({9e3, 1e3});
  const double v = irlink::actuator::duty_to_voltage(0.5, 12.0);
  const double k = sc::rc_design_rule(2.0, 5.0);
  return {a == 10.0 && v == 6.0 && k == 10.0,
          "preamp " + irlink::fmt_double(a) + ", duty->V " + irlink::fmt_double(v) + " V, rule " +
              irlink::fmt_double(k) + " kOhm"};
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const fs::path& config, const fs::path& scratch) {
  std::size_t files = 0, identical = 0;
  std::string failed;
  for (const auto& verb : irlink::cli::verbs()) {
    std::vector<fs::path> dirs;
    for (const auto& [tag, jobs] : std::vector<std::pair<std::string, unsigned>>{{"a", 1}, {"b", 1}, {"c", 8}}) {
      irlink::cli::Command cmd;
      cmd.verb = verb;
      cmd.config_path = config;
      cmd.output_dir = scratch / (verb + "_" + tag);
      cmd.jobs = jobs;
      cmd.seed = 1234;
      fs::remove_all(cmd.output_dir);
      std::ostringstream out, err;
      if (irlink::cli::execute(cmd, out, err) != irlink::cli::kExitOk) return {false, verb + " failed: " + err.str()};
      dirs.push_back(cmd.output_dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      ++files;
      const auto name = entry.path().filename();
      const auto ref = read_all(entry.path());
      if (ref == read_all(dirs[1] / name) && ref == read_all(dirs[2] / name)) ++identical;
      else failed += " " + verb + "/" + name.string();
    }
  }
  return {files > 0 && identical == files,
          std::to_string(identical) + "/" + std::to_string(files) + " artifacts byte-identical" + failed};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path config = argc > 1 ? fs::path(argv[1]) : fs::path(IRLINK_DEFAULT_CONFIG);
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "irlink_acceptance";
  fs::create_directories(scratch);

  const auto settings = load(config);
  const auto free_run = free_pendulum();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"stability predicate matches pole solver on 200x200 grid", stability_oracle},
      {"free pendulum oscillates at 7 rad/s", [&] { return natural_frequency(free_run); }},
      {"free pendulum conserves energy", [&] { return energy(free_run); }},
      {"damping ratio strictly increases with Kd", damping_monotone},
      {"stability sweep reproduces the set-angle pattern", [&] { return table2(settings); }},
      {"link test reproduces the vibration matrix", [&] { return table3(settings); }},
      {"band-pass group delay at 1 kHz", link_delay},
      {"transistor bias distorts, resistor bias does not", distortion},
      {"exact gain, voltage and design-rule identities", identities},
      {"CLI artifacts are byte-identical across runs and --jobs", [&] { return determinism(config, scratch); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s [%s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
