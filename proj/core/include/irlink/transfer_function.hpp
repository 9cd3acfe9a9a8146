#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace irlink {

using Complex = std::complex<double>;

/// Conjugate (or real) pole pair of a second-order denominator.
using PolePair = std::array<Complex, 2>;

/// Rational continuous-time transfer function in descending powers of s:
/// num[0]·s^n + ... + num[n] over den[0]·s^m + ... + den[m].
struct TransferFunction {
  std::vector<double> num;
  std::vector<double> den;

  TransferFunction() = default;
  /// Leading zero coefficients are stripped; throws InvalidInput when the
  /// denominator is empty/zero or any coefficient is non-finite.
  TransferFunction(std::vector<double> numerator, std::vector<double> denominator);

  static TransferFunction gain(double k) { return {{k}, {1.0}}; }

  std::size_t num_degree() const { return num.size() - 1; }
  std::size_t den_degree() const { return den.size() - 1; }

  Complex evaluate(Complex s) const;
  /// H(j·2π·f).
  Complex at_frequency(double hz) const;

  /// Series connection.
  TransferFunction operator*(const TransferFunction& rhs) const;

  std::vector<Complex> poles() const;
  std::vector<Complex> zeros() const;

  bool operator==(const TransferFunction&) const = default;
};

namespace poly {

std::vector<double> multiply(std::span<const double> a, std::span<const double> b);
Complex evaluate(std::span<const double> coeffs, Complex x);

/// Roots of a real polynomial (descending powers). Exact zero roots from
/// trailing zero coefficients are returned exactly; the rest come from the
/// eigenvalues of a frequency-scaled companion matrix.
std::vector<Complex> roots(std::span<const double> coeffs);

/// Both roots of a·x² + b·x + c, a ≠ 0, using the cancellation-free form.
PolePair quadratic_roots(double a, double b, double c);

}  // namespace poly
}  // namespace irlink
