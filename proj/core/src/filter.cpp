#include "irlink/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irlink/error.hpp"

namespace irlink::signal_chain {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kHalfPowerDb = 10.0 * std::log10(0.5);

double mag_db(Complex h) { return 20.0 * std::log10(std::abs(h)); }

// Real polynomial (descending) with the given roots; imaginary parts of
// conjugate products are discarded.
std::vector<double> from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{Complex(1.0, 0.0)};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * r;
    }
    c = std::move(next);
  }
  std::vector<double> out(c.size());
  std::transform(c.begin(), c.end(), out.begin(), [](Complex z) { return z.real(); });
  return out;
}

// Groups roots into conjugate pairs, then adjacent real pairs, then at most one
// lone real root (returned last).
std::vector<std::vector<Complex>> group_roots(std::vector<Complex> roots) {
  std::vector<std::vector<Complex>> groups;
  std::vector<Complex> reals;
  std::vector<Complex> upper;
  for (const Complex& r : roots) {
    const double tol = 1e-9 * std::max(1.0, std::abs(r));
    if (std::abs(r.imag()) <= tol) reals.emplace_back(r.real(), 0.0);
    else if (r.imag() > 0.0) upper.push_back(r);
  }
  std::sort(upper.begin(), upper.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  for (const Complex& r : upper) groups.push_back({r, std::conj(r)});
  std::sort(reals.begin(), reals.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  std::size_t i = 0;
  for (; i + 1 < reals.size(); i += 2) groups.push_back({reals[i], reals[i + 1]});
  if (i < reals.size()) groups.push_back({reals[i]});
  return groups;
}

Biquad bilinear_section(const TransferFunction& section, double sample_rate) {
  const double k = 2.0 * sample_rate;
  auto coeff = [](const std::vector<double>& c, std::size_t power) {
    return power < c.size() ? c[c.size() - 1 - power] : 0.0;
  };
  const auto& n = section.num;
  const auto& d = section.den;
  detail::require(section.den_degree() <= 2 && section.num_degree() <= section.den_degree(),
                  "discretize needs proper sections of order <= 2");
  const double b2 = coeff(n, 2), b1 = coeff(n, 1), b0 = coeff(n, 0);
  const double a2 = coeff(d, 2), a1 = coeff(d, 1), a0 = coeff(d, 0);
  if (section.den_degree() == 2) {
    const double A0 = a2 * k * k + a1 * k + a0;
    return {(b2 * k * k + b1 * k + b0) / A0, 2.0 * (b0 - b2 * k * k) / A0, (b2 * k * k - b1 * k + b0) / A0,
            2.0 * (a0 - a2 * k * k) / A0, (a2 * k * k - a1 * k + a0) / A0};
  }
  if (section.den_degree() == 1) {
    const double A0 = a1 * k + a0;
    return {(b1 * k + b0) / A0, (b0 - b1 * k) / A0, 0.0, (a0 - a1 * k) / A0, 0.0};
  }
  return {b0 / a0, 0.0, 0.0, 0.0, 0.0};
}

void check_sampling(std::span<const TransferFunction> sections, double sample_rate) {
  detail::require(std::isfinite(sample_rate) && sample_rate > 0.0, "sample rate must be > 0");
  double max_pole = 0.0;
  for (const auto& s : sections)
    for (const Complex& p : s.poles()) max_pole = std::max(max_pole, std::abs(p));
  if (sample_rate < 8.0 * max_pole / kTwoPi)
    throw InvalidInput("sample rate is below 8x the highest pole frequency; response would be distorted");
}

}  // namespace

double rc_design_rule(double fc_khz, double c_nf) {
  detail::require(std::isfinite(fc_khz) && fc_khz > 0.0, "cutoff must be > 0");
  detail::require(std::isfinite(c_nf) && c_nf > 0.0, "capacitance must be > 0");
  return 100.0 / (fc_khz * c_nf);
}

std::vector<TransferFunction> bandpass_sections(const FilterDesign& d) {
  for (double v : {d.c1, d.r1, d.c2, d.r2, d.c3, d.r3, d.c4, d.r4, d.c5, d.r5})
    if (!(std::isfinite(v) && v > 0.0)) throw InvalidDesign("filter component values must be finite and > 0");

  auto lowpass = [](double r, double c) {
    const double tau = r * c;
    return TransferFunction({1.0}, {tau * tau, 2.0 * tau, 1.0});
  };
  const double t34 = d.r3 * d.r4 * d.c3 * d.c4;
  const TransferFunction hp2({t34, 0.0, 0.0}, {t34, d.r3 * (d.c3 + d.c4), 1.0});
  const double t5 = d.r5 * d.c5;
  const TransferFunction hp1({t5, 0.0}, {t5, 1.0});
  return {lowpass(d.r1, d.c1), lowpass(d.r2, d.c2), hp2, hp1};
}

TransferFunction design_bandpass(const FilterDesign& design) {
  const auto sections = bandpass_sections(design);
  TransferFunction total = TransferFunction::gain(1.0);
  for (const auto& s : sections) {
    for (const Complex& p : s.poles())
      if (!(p.real() < 0.0)) throw InvalidDesign("band-pass section has a pole outside the open left half-plane");
    total = total * s;
  }
  return total;
}

std::vector<FrequencyPoint> frequency_response(const TransferFunction& tf, std::span<const double> freqs_hz) {
  std::vector<FrequencyPoint> out;
  out.reserve(freqs_hz.size());
  double prev_phase = 0.0;
  for (std::size_t i = 0; i < freqs_hz.size(); ++i) {
    const double f = freqs_hz[i];
    detail::require(std::isfinite(f) && f > 0.0, "response frequencies must be > 0");
    const Complex h = tf.at_frequency(f);
    double phase = std::arg(h);
    if (i > 0) phase -= kTwoPi * std::round((phase - prev_phase) / kTwoPi);
    prev_phase = phase;
    out.push_back({f, mag_db(h), phase});
  }
  return out;
}

double group_delay(const TransferFunction& tf, double hz) {
  detail::require(std::isfinite(hz) && hz > 0.0, "group delay frequency must be > 0");
  const double w = kTwoPi * hz;
  const double h = 1e-4 * w;
  const Complex up = tf.evaluate(Complex(0.0, w + h));
  const Complex down = tf.evaluate(Complex(0.0, w - h));
  return -std::arg(up / down) / (2.0 * h);
}

std::vector<double> log_space(double lo_hz, double hi_hz, std::size_t count) {
  detail::require(lo_hz > 0.0 && hi_hz > lo_hz && count >= 2, "log_space needs 0 < lo < hi and count >= 2");
  std::vector<double> f(count);
  const double a = std::log(lo_hz), b = std::log(hi_hz);
  for (std::size_t i = 0; i < count; ++i)
    f[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  f.front() = lo_hz;
  f.back() = hi_hz;
  return f;
}

BandEdges band_edges(const TransferFunction& tf, double lo_hz, double hi_hz) {
  const auto freqs = log_space(lo_hz, hi_hz, 4000);
  std::vector<double> db(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) db[i] = mag_db(tf.at_frequency(freqs[i]));
  const auto peak = static_cast<std::size_t>(std::max_element(db.begin(), db.end()) - db.begin());
  const double target = db[peak] + kHalfPowerDb;

  auto refine = [&](double f_in, double f_out) {
    // f_in is inside the band (above target), f_out outside.
    double a = std::log(f_in), b = std::log(f_out);
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (a + b);
      if (mag_db(tf.at_frequency(std::exp(mid))) > target) a = mid;
      else b = mid;
    }
    return std::exp(0.5 * (a + b));
  };

  std::size_t lo = peak;
  while (lo > 0 && db[lo] > target) --lo;
  std::size_t hi = peak;
  while (hi + 1 < freqs.size() && db[hi] > target) ++hi;
  if (db[lo] > target || db[hi] > target)
    throw MetricUndefined("band edge lies outside the swept frequency range");
  return {refine(freqs[lo + 1], freqs[lo]), refine(freqs[hi - 1], freqs[hi]), freqs[peak], db[peak]};
}

DigitalFilter::DigitalFilter(std::vector<Biquad> sections, double sample_rate)
    : sections_(std::move(sections)), sample_rate_(sample_rate) {
  detail::require(std::isfinite(sample_rate_) && sample_rate_ > 0.0, "sample rate must be > 0");
}

Complex DigitalFilter::response(double hz) const {
  const Complex zi = std::polar(1.0, -kTwoPi * hz / sample_rate_);
  Complex h(1.0, 0.0);
  for (const auto& s : sections_)
    h *= (s.b0 + zi * (s.b1 + zi * s.b2)) / (1.0 + zi * (s.a1 + zi * s.a2));
  return h;
}

std::vector<Complex> DigitalFilter::poles() const {
  std::vector<Complex> out;
  for (const auto& s : sections_) {
    if (s.a2 != 0.0) {
      const auto q = poly::quadratic_roots(1.0, s.a1, s.a2);
      out.insert(out.end(), q.begin(), q.end());
    } else if (s.a1 != 0.0) {
      out.emplace_back(-s.a1, 0.0);
    }
  }
  return out;
}

DigitalFilter discretize(std::span<const TransferFunction> sections, double sample_rate) {
  check_sampling(sections, sample_rate);
  std::vector<Biquad> biquads;
  biquads.reserve(sections.size());
  for (const auto& s : sections) biquads.push_back(bilinear_section(s, sample_rate));
  return {std::move(biquads), sample_rate};
}

DigitalFilter discretize(const TransferFunction& tf, double sample_rate) {
  detail::require(tf.num_degree() <= tf.den_degree(), "discretize needs a proper transfer function");
  const double gain = tf.num.front() / tf.den.front();
  auto pole_groups = group_roots(tf.poles());
  auto zero_groups = group_roots(tf.zeros());

  // Zero pairs go to pole pairs in order; a lone zero goes to the lone pole if
  // there is one, otherwise to the first pole pair left without zeros.
  std::vector<std::vector<Complex>> assigned(pole_groups.size());
  auto free_slot = [&](std::size_t size) -> std::size_t {
    for (std::size_t p = 0; p < pole_groups.size(); ++p)
      if (assigned[p].empty() && pole_groups[p].size() == size) return p;
    return pole_groups.size();
  };
  for (const auto& z : zero_groups) {
    std::size_t slot = free_slot(z.size());
    if (slot == pole_groups.size() && z.size() == 1) slot = free_slot(2);
    if (slot == pole_groups.size()) throw InvalidInput("could not factor transfer function into proper sections");
    assigned[slot] = z;
  }

  std::vector<TransferFunction> sections;
  for (std::size_t p = 0; p < pole_groups.size(); ++p)
    sections.emplace_back(from_roots(assigned[p]), from_roots(pole_groups[p]));
  if (sections.empty()) sections.push_back(TransferFunction::gain(1.0));
  sections.front().num = poly::multiply(sections.front().num, std::vector<double>{gain});
  return discretize(std::span<const TransferFunction>(sections), sample_rate);
}

Signal filter_apply(const DigitalFilter& filter, const Signal& signal) {
  if (signal.sample_rate() != filter.sample_rate())
    throw InvalidInput("signal sample rate does not match the rate the filter was discretized at");
  std::vector<double> y(signal.samples().begin(), signal.samples().end());
  for (const auto& s : filter.sections()) {
    double z1 = 0.0, z2 = 0.0;
    for (double& v : y) {
      const double x = v;
      const double out = s.b0 * x + z1;
      z1 = s.b1 * x - s.a1 * out + z2;
      z2 = s.b2 * x - s.a2 * out;
      v = out;
    }
  }
  return {std::move(y), signal.sample_rate()};
}

}  // namespace irlink::signal_chain
