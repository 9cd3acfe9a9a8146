#include "irlink/transfer_function.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "irlink/error.hpp"

namespace irlink {
namespace {

std::vector<double> strip_leading_zeros(std::vector<double> c) {
  auto first = std::find_if(c.begin(), c.end(), [](double v) { return v != 0.0; });
  if (first == c.end()) return {0.0};
  c.erase(c.begin(), first);
  return c;
}

}  // namespace

TransferFunction::TransferFunction(std::vector<double> numerator, std::vector<double> denominator) {
  for (double v : numerator) detail::require_finite(v, "transfer function coefficient");
  for (double v : denominator) detail::require_finite(v, "transfer function coefficient");
  detail::require(!numerator.empty(), "transfer function numerator is empty");
  num = strip_leading_zeros(std::move(numerator));
  den = strip_leading_zeros(std::move(denominator));
  detail::require(den.front() != 0.0, "transfer function denominator is zero");
}

Complex TransferFunction::evaluate(Complex s) const {
  return poly::evaluate(num, s) / poly::evaluate(den, s);
}

Complex TransferFunction::at_frequency(double hz) const {
  return evaluate(Complex(0.0, 2.0 * std::numbers::pi * hz));
}

TransferFunction TransferFunction::operator*(const TransferFunction& rhs) const {
  return {poly::multiply(num, rhs.num), poly::multiply(den, rhs.den)};
}

std::vector<Complex> TransferFunction::poles() const { return poly::roots(den); }
std::vector<Complex> TransferFunction::zeros() const { return poly::roots(num); }

namespace poly {

std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Complex evaluate(std::span<const double> coeffs, Complex x) {
  Complex acc(0.0, 0.0);
  for (double c : coeffs) acc = acc * x + c;
  return acc;
}

std::vector<Complex> roots(std::span<const double> coeffs) {
  std::vector<double> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && c.front() == 0.0) c.erase(c.begin());
  std::vector<Complex> out;
  while (c.size() > 1 && c.back() == 0.0) {
    c.pop_back();
    out.emplace_back(0.0, 0.0);
  }
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  if (n <= 0) return out;
  if (n == 1) {
    out.emplace_back(-c[1] / c[0], 0.0);
    return out;
  }
  if (n == 2) {
    const auto q = quadratic_roots(c[0], c[1], c[2]);
    out.insert(out.end(), q.begin(), q.end());
    return out;
  }
  // Substitute x = w·y so the monic polynomial in y has |constant| = 1; keeps the
  // companion matrix entries within a few decades for widely spread roots.
  const double w = std::pow(std::abs(c[static_cast<std::size_t>(n)] / c[0]), 1.0 / static_cast<double>(n));
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double scaled = c[static_cast<std::size_t>(k + 1)] / (c[0] * std::pow(w, static_cast<double>(k + 1)));
    companion(0, k) = -scaled;
  }
  for (Eigen::Index k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericFailure("polynomial roots", "companion eigen-decomposition failed");
  for (Eigen::Index k = 0; k < n; ++k) out.push_back(solver.eigenvalues()(k) * w);
  return out;
}

PolePair quadratic_roots(double a, double b, double c) {
  detail::require(a != 0.0, "quadratic leading coefficient is zero");
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
    return {Complex(re, im), Complex(re, -im)};
  }
  const double sq = std::sqrt(disc);
  if (b == 0.0) return {Complex(sq / (2.0 * a), 0.0), Complex(-sq / (2.0 * a), 0.0)};
  const double q = -0.5 * (b + std::copysign(sq, b));
  const double r1 = q / a;
  const double r2 = q != 0.0 ? c / q : 0.0;
  return {Complex(std::max(r1, r2), 0.0), Complex(std::min(r1, r2), 0.0)};
}

}  // namespace poly
}  // namespace irlink
