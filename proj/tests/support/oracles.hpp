#pragma once

// Reference computations the tests compare the library against. Each one is
// written the plain way (naive DFT, unscaled companion matrix, pole sums) and
// shares no code with the implementation it checks.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

/// Roots from the eigenvalues of the textbook companion matrix.
inline std::vector<Complex> companion_roots(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) m(0, j) = -c[static_cast<std::size_t>(j + 1)] / c[0];
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

inline double max_real_part(const std::vector<Complex>& roots) {
  double m = -INFINITY;
  for (const auto& r : roots) m = std::max(m, r.real());
  return m;
}

/// Horner evaluation of a descending-power polynomial.
inline Complex horner(const std::vector<double>& c, Complex x) {
  Complex acc(0.0, 0.0);
  for (double v : c) acc = acc * x + v;
  return acc;
}

/// Group delay from the pole/zero sum −d arg H/dω = Σ_p Re 1/(jω−p) − Σ_z Re 1/(jω−z).
inline double pole_sum_group_delay(const std::vector<Complex>& poles, const std::vector<Complex>& zeros, double hz) {
  const Complex jw(0.0, 2.0 * kPi * hz);
  double tau = 0.0;
  for (const auto& p : poles) tau += (1.0 / (jw - p)).real();
  for (const auto& z : zeros)
    if (jw != z) tau -= (1.0 / (jw - z)).real();
  return tau;
}

/// Amplitude of harmonic k of a record holding exactly `periods` periods,
/// by a direct rectangular-window DFT sum.
inline double harmonic_amplitude(const std::vector<double>& x, std::size_t periods, std::size_t k) {
  const std::size_t n = x.size();
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double ang = -2.0 * kPi * static_cast<double>((k * periods * i) % n) / static_cast<double>(n);
    acc += x[i] * Complex(std::cos(ang), std::sin(ang));
  }
  return 2.0 * std::abs(acc) / static_cast<double>(n);
}

/// √(Σ_{k=2..10} A_k²)/A_1 on a record of whole periods.
inline double dft_thd(const std::vector<double>& x, std::size_t periods) {
  const double a1 = harmonic_amplitude(x, periods, 1);
  double h = 0.0;
  for (std::size_t k = 2; k <= 10; ++k) {
    const double a = harmonic_amplitude(x, periods, k);
    h += a * a;
  }
  return std::sqrt(h) / a1;
}

/// Mean oscillation frequency (rad/s) from linearly interpolated upward zero
/// crossings.
inline double zero_crossing_omega(const std::vector<double>& x, double dt) {
  std::vector<double> crossings;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i - 1] < 0.0 && x[i] >= 0.0) {
      const double frac = -x[i - 1] / (x[i] - x[i - 1]);
      crossings.push_back((static_cast<double>(i - 1) + frac) * dt);
    }
  }
  if (crossings.size() < 2) return 0.0;
  const double period = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return 2.0 * kPi / period;
}

/// Amplitude and phase of the `hz` component of x by least-squares fit of
/// a·sin + b·cos over samples [first, x.size()).
inline std::pair<double, double> fit_sine(const std::vector<double>& x, double hz, double fs, std::size_t first) {
  double ss = 0, cc = 0, sc = 0, xs = 0, xc = 0;
  for (std::size_t i = first; i < x.size(); ++i) {
    const double w = 2.0 * kPi * hz * static_cast<double>(i) / fs;
    const double s = std::sin(w), c = std::cos(w);
    ss += s * s;
    cc += c * c;
    sc += s * c;
    xs += x[i] * s;
    xc += x[i] * c;
  }
  const double det = ss * cc - sc * sc;
  const double a = (xs * cc - xc * sc) / det;
  const double b = (xc * ss - xs * sc) / det;
  return {std::hypot(a, b), std::atan2(b, a)};
}

/// Plain RK4 on (θ, ω) with a time-dependent acceleration function.
inline std::pair<double, double> rk4(const std::function<double(double, double, double)>& accel, double theta,
                                     double omega, double t, double dt) {
  const double k1t = omega, k1w = accel(t, theta, omega);
  const double k2t = omega + 0.5 * dt * k1w, k2w = accel(t + 0.5 * dt, theta + 0.5 * dt * k1t, omega + 0.5 * dt * k1w);
  const double k3t = omega + 0.5 * dt * k2w, k3w = accel(t + 0.5 * dt, theta + 0.5 * dt * k2t, omega + 0.5 * dt * k2w);
  const double k4t = omega + dt * k3w, k4w = accel(t + dt, theta + dt * k3t, omega + dt * k3w);
  return {theta + dt / 6.0 * (k1t + 2 * k2t + 2 * k3t + k4t), omega + dt / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w)};
}

/// Deterministic value generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
