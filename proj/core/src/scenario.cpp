#include "irlink/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

#include "irlink/error.hpp"
#include "irlink/format.hpp"
#include "irlink/metrics.hpp"

namespace irlink::scenario {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSnrCapDb = 300.0;

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results stored by index.
// The lowest-index exception is rethrown so failures are reproducible too.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, Fn fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Equal-amplitude tones with Schroeder phases (low crest factor), scaled to `peak`.
Signal multitone(double rate, std::size_t count, double peak) {
  static constexpr std::array<double, 6> kTones{250.0, 400.0, 630.0, 1000.0, 1250.0, 1600.0};
  std::vector<double> x(count, 0.0);
  const double n_tones = static_cast<double>(kTones.size());
  for (std::size_t k = 0; k < kTones.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    const double phase = -kPi * kk * (kk - 1.0) / n_tones;
    const double w = 2.0 * kPi * kTones[k] / rate;
    for (std::size_t i = 0; i < count; ++i) x[i] += std::sin(w * static_cast<double>(i) + phase);
  }
  double max_abs = 0.0;
  for (double v : x) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs > 0.0)
    for (double& v : x) v *= peak / max_abs;
  return {std::move(x), rate};
}

std::size_t audio_samples(const ScenarioConfig& c) {
  return static_cast<std::size_t>(std::llround(c.duration * c.audio_rate));
}

Signal receive_path(const ScenarioConfig& c, const Signal& source, std::span<const double> misalignment,
                    const signal_chain::ChannelSpec& channel) {
  using namespace signal_chain;
  const Signal drive = led_drive_resistor(amplify(source, preamp_gain(c.chain.preamp)), c.chain.led_v1);
  const Signal received = channel_transmit(drive, channel, misalignment, c.seed);
  const auto sections = bandpass_sections(c.filter);
  const DigitalFilter filter = discretize(std::span<const TransferFunction>(sections), c.audio_rate);
  return power_amp(filter_apply(filter, received), c.chain.amp_gain, c.chain.amp_clip);
}

}  // namespace

void VibrationProfile::validate() const {
  detail::require(std::isfinite(amplitude) && amplitude >= 0.0, "vibration amplitude must be >= 0");
  if (kind != VibrationKind::none)
    detail::require(std::isfinite(frequency) && frequency > 0.0, "vibration frequency must be > 0");
}

BaseCoupling base_coupling(const VibrationProfile& profile, double t, double g) {
  if (profile.kind == VibrationKind::none) return {g, 0.0, 0.0};
  const double a = profile.amplitude * std::sin(2.0 * kPi * profile.frequency * t);
  switch (profile.kind) {
    case VibrationKind::vertical:
      return {g + a, 0.0, 0.0};
    case VibrationKind::longitudinal:
      return {g, a, 0.0};
    case VibrationKind::lateral:
      return {g, 0.0, std::atan(a / g)};
    case VibrationKind::none:
      break;
  }
  return {g, 0.0, 0.0};
}

double beam_misalignment(double in_plane, double out_of_plane) {
  // Beam direction (sin a·cos b, sin b, cos a·cos b) against the z axis; the
  // atan2 form stays accurate near zero where acos would not.
  const double x = std::sin(in_plane) * std::cos(out_of_plane);
  const double y = std::sin(out_of_plane);
  const double z = std::cos(in_plane) * std::cos(out_of_plane);
  return std::atan2(std::hypot(x, y), z);
}

void ScenarioConfig::validate() const {
  pendulum.validate();
  motor.validate();
  vibration.validate();
  channel.validate();
  detail::require(std::isfinite(gains.kp) && std::isfinite(gains.kd), "controller gains must be finite");
  detail::require(std::isfinite(output_scale) && output_scale > 0.0, "controller output scale must be > 0");
  detail::require(std::isfinite(control_rate) && control_rate > 0.0, "control rate must be > 0");
  detail::require(1.0 / control_rate <= dynamics::kMaxStep, "control rate must be >= 100 Hz");
  detail::require(std::isfinite(audio_rate) && audio_rate >= control_rate, "audio rate must be >= control rate");
  detail::require(std::isfinite(duration) && duration > 0.0, "duration must be > 0");
  detail::require(std::isfinite(set_angle) && std::abs(set_angle) < kPi / 2, "set angle must be within ±90°");
  detail::require(std::isfinite(initial_angle) && std::abs(initial_angle) < kPi, "initial angle must be within ±180°");
  detail::require(std::isfinite(source_level) && source_level > 0.0, "source level must be > 0");
  detail::require(chain.amp_gain > 0.0 && chain.amp_clip > 0.0, "power amp gain and clip must be > 0");
  detail::require(std::isfinite(chain.led_v1), "LED supply must be finite");
  if (audio_source)
    detail::require(audio_source->sample_rate() == audio_rate, "audio source sample rate must equal the audio rate");
}

std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::stable: return "stable";
    case StabilityClass::small_oscillation: return "small_oscillation";
    case StabilityClass::large_oscillation: return "large_oscillation";
  }
  return "?";
}

std::string_view to_string(AudioClass c) {
  switch (c) {
    case AudioClass::complete: return "complete";
    case AudioClass::complete_with_noise: return "complete_with_noise";
    case AudioClass::intermittent: return "intermittent";
    case AudioClass::vanish: return "vanish";
  }
  return "?";
}

std::string_view to_string(VibrationKind k) {
  switch (k) {
    case VibrationKind::none: return "none";
    case VibrationKind::vertical: return "vertical";
    case VibrationKind::longitudinal: return "longitudinal";
    case VibrationKind::lateral: return "lateral";
  }
  return "?";
}

StabilityReport classify_stability(std::span<const double> theta, double sample_rate, double set_angle,
                                   const StabilityThresholds& th, bool aborted) {
  StabilityReport report;
  report.set_angle = set_angle;
  if (aborted) {
    report.classification = StabilityClass::large_oscillation;
    report.oscillation_amplitude = kPi;
    return report;
  }
  detail::require(sample_rate > 0.0, "sample rate must be > 0");
  const auto window = static_cast<std::size_t>(std::floor(th.window_fraction * static_cast<double>(theta.size())));
  if (window < 2 || static_cast<double>(window) / sample_rate < th.min_window_s)
    throw InvalidInput("angle series too short: the judged window must cover at least " + fmt_double(th.min_window_s) + " s");

  const auto tail = theta.subspan(theta.size() - window);
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  const double p2p = *hi - *lo;
  report.oscillation_amplitude = p2p / 2.0;
  if (p2p < th.stable_p2p) {
    report.classification = StabilityClass::stable;
    double sum = 0.0;
    for (double v : tail) sum += v;
    report.steady_angle = sum / static_cast<double>(tail.size());
  } else if (p2p < th.small_p2p) {
    report.classification = StabilityClass::small_oscillation;
  } else {
    report.classification = StabilityClass::large_oscillation;
  }
  return report;
}

AudioReport classify_audio(const Signal& input, const Signal& received, const AudioThresholds& th, double rx_floor) {
  using namespace signal_chain;
  if (input.sample_rate() != received.sample_rate())
    throw InvalidInput("input and received audio have different sample rates");
  if (rms(input.samples()) < 1e-12) throw MetricUndefined("input audio is silent");

  const double fs = input.sample_rate();
  const auto x = input.samples();
  const auto y = received.samples();
  const long lag = best_lag(x, y, static_cast<std::size_t>(std::llround(th.max_lag_s * fs)),
                            static_cast<std::size_t>(std::llround(th.lag_window_s * fs)));

  // Overlap of x[i] with y[i + lag].
  const long first = std::max(0L, -lag);
  const long last = std::min(static_cast<long>(x.size()), static_cast<long>(y.size()) - lag);
  AudioReport report;
  if (last <= first) return report;
  const auto span_len = static_cast<std::size_t>(last - first);
  const auto xs = x.subspan(static_cast<std::size_t>(first), span_len);
  const auto ys = y.subspan(static_cast<std::size_t>(first + lag), span_len);

  const double polarity = normalized_correlation(xs, ys) < 0.0 ? -1.0 : 1.0;
  const auto frame = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(th.frame_s * fs)));
  const std::size_t frames = span_len / frame;
  if (frames == 0) return report;

  std::size_t dropped = 0;
  double corr_sum = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    const auto xf = xs.subspan(f * frame, frame);
    const auto yf = ys.subspan(f * frame, frame);
    const double corr = polarity * normalized_correlation(xf, yf);
    corr_sum += corr;
    if (rms(yf) < rx_floor || corr < th.min_correlation) ++dropped;
  }
  report.dropout_fraction = static_cast<double>(dropped) / static_cast<double>(frames);
  report.mean_frame_correlation = corr_sum / static_cast<double>(frames);

  double xy = 0.0, xx = 0.0;
  for (std::size_t i = 0; i < span_len; ++i) {
    xy += xs[i] * ys[i];
    xx += xs[i] * xs[i];
  }
  const double g = xy / xx;
  double sig = 0.0, err = 0.0;
  for (std::size_t i = 0; i < span_len; ++i) {
    const double s = g * xs[i];
    sig += s * s;
    err += (ys[i] - s) * (ys[i] - s);
  }
  if (err == 0.0) report.snr_db = kSnrCapDb;
  else if (sig == 0.0) report.snr_db = -kSnrCapDb;
  else report.snr_db = std::clamp(10.0 * std::log10(sig / err), -kSnrCapDb, kSnrCapDb);

  if (report.dropout_fraction > th.vanish_min_dropout) report.classification = AudioClass::vanish;
  else if (report.dropout_fraction >= th.complete_max_dropout) report.classification = AudioClass::intermittent;
  else if (report.snr_db < th.min_snr_db) report.classification = AudioClass::complete_with_noise;
  else report.classification = AudioClass::complete;
  return report;
}

Signal program_audio(const ScenarioConfig& c) {
  const std::size_t n = audio_samples(c);
  if (!c.audio_source) return multitone(c.audio_rate, n, c.source_level);
  const auto src = c.audio_source->samples();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = src[i % src.size()];
  return {std::move(x), c.audio_rate};
}

Signal ideal_reception(const ScenarioConfig& config, const Signal& source) {
  signal_chain::ChannelSpec clean = config.channel;
  clean.noise = {};
  const std::vector<double> aligned(source.size(), 0.0);
  return receive_path(config, source, aligned, clean);
}

ScenarioResult run_scenario(const ScenarioConfig& c) {
  c.validate();
  const double dt = 1.0 / c.control_rate;
  const auto ticks = static_cast<std::size_t>(std::llround(c.duration * c.control_rate));
  const double g = c.pendulum.g;
  const VibrationProfile vib = c.vibration;
  const dynamics::BaseLoadFn load = [vib, g](double t) {
    const auto b = base_coupling(vib, t, g);
    return dynamics::BaseLoad{b.g_eff, b.horizontal_accel};
  };

  std::vector<double> t_s, theta, omega, duty, pointing;
  for (auto* v : {&t_s, &theta, &omega, &duty, &pointing}) v->reserve(ticks);

  dynamics::PendulumState state{c.initial_angle, 0.0, 0.0};
  control::ControllerState cstate;
  cstate.set_angle = c.set_angle;
  cstate.dt = dt;
  cstate.output_scale = c.output_scale;
  cstate.mode = c.control_mode;

  bool aborted = false;
  for (std::size_t k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * dt;
    state.t = t;
    double d = 0.0;
    double force = 0.0;
    if (c.controller_on) {
      const auto out = control::control_step(c.gains, cstate, state.theta);
      cstate = out.state;
      d = actuator::force_to_duty(out.force, c.motor);
      force = actuator::applied_force(d, c.motor);
    }
    t_s.push_back(t);
    theta.push_back(state.theta);
    omega.push_back(state.omega);
    duty.push_back(d);
    pointing.push_back(base_coupling(vib, t, g).lateral_pointing);

    state = dynamics::step(c.pendulum, state, force, dt, load);
    if (std::abs(state.theta) > kPi) {
      aborted = true;
      break;
    }
  }

  // Audio path: misalignment is the zero-order hold of the control-rate
  // angle; after an abort the beam is lost for the rest of the run.
  const Signal source = program_audio(c);
  std::vector<double> misalignment(source.size(), kPi);
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto k = static_cast<std::size_t>(std::floor(static_cast<double>(i) * c.control_rate / c.audio_rate));
    if (k >= theta.size()) break;
    misalignment[i] = beam_misalignment(theta[k] - c.set_angle, pointing[k]);
  }

  using namespace signal_chain;
  const Signal tx = led_drive_resistor(amplify(source, preamp_gain(c.chain.preamp)), c.chain.led_v1);
  Signal rx = receive_path(c, source, misalignment, c.channel);
  const Signal reference = ideal_reception(c, source);

  ScenarioResult result{TimeSeries{std::move(t_s), {}, std::move(omega), std::move(duty), tx, rx}, {}, {}, aborted};
  result.stability = classify_stability(theta, c.control_rate, c.set_angle, c.stability, aborted);
  result.series.theta = std::move(theta);
  result.audio = classify_audio(reference, rx, c.audio, c.channel.rx_floor);
  return result;
}

std::vector<StabilityReport> stability_sweep(const ScenarioConfig& base, std::span<const double> set_angles,
                                             unsigned jobs) {
  return parallel_map<StabilityReport>(set_angles.size(), jobs, [&](std::size_t i) {
    ScenarioConfig cfg = base;
    cfg.set_angle = set_angles[i];
    cfg.seed = base.seed + i;
    return run_scenario(cfg).stability;
  });
}

std::vector<LinkCell> link_test(const ScenarioConfig& base, std::span<const VibrationProfile> profiles,
                                unsigned jobs) {
  return parallel_map<LinkCell>(profiles.size() * 2, jobs, [&](std::size_t i) {
    ScenarioConfig cfg = base;
    cfg.vibration = profiles[i / 2];
    cfg.controller_on = (i % 2) == 0;
    cfg.seed = base.seed + i;
    const auto r = run_scenario(cfg);
    return LinkCell{cfg.vibration.kind, cfg.controller_on, r.audio, r.stability};
  });
}

void write_timeseries_csv(std::ostream& os, const TimeSeries& s, double audio_rate, double control_rate) {
  os << "t_s,theta_rad,omega_rad_s,duty,tx_v,rx_v\n";
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    const auto i = static_cast<std::size_t>(std::llround(static_cast<double>(k) * audio_rate / control_rate));
    const double tx = i < s.tx.size() ? s.tx[i] : 0.0;
    const double rx = i < s.rx.size() ? s.rx[i] : 0.0;
    os << fmt_double(s.t[k]) << ',' << fmt_double(s.theta[k]) << ',' << fmt_double(s.omega[k]) << ','
       << fmt_double(s.duty[k]) << ',' << fmt_double(tx) << ',' << fmt_double(rx) << '\n';
  }
}

void write_report(std::ostream& os, const StabilityReport& r) {
  os << "[stability]\n"
     << "set_angle = " << fmt_double(r.set_angle) << '\n'
     << "classification = " << to_string(r.classification) << '\n';
  if (r.steady_angle) os << "steady_angle = " << fmt_double(*r.steady_angle) << '\n';
  os << "oscillation_amplitude = " << fmt_double(r.oscillation_amplitude) << '\n';
}

void write_report(std::ostream& os, const AudioReport& r) {
  os << "[audio]\n"
     << "classification = " << to_string(r.classification) << '\n'
     << "dropout_fraction = " << fmt_double(r.dropout_fraction) << '\n'
     << "mean_frame_correlation = " << fmt_double(r.mean_frame_correlation) << '\n'
     << "snr_db = " << fmt_double(r.snr_db) << '\n';
}

}  // namespace irlink::scenario
