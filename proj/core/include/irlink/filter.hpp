#pragma once

#include <span>
#include <vector>

#include "irlink/signal.hpp"
#include "irlink/transfer_function.hpp"

namespace irlink::signal_chain {

/// Component values of the receive band-pass, SI units (ohms, farads).
/// Low-pass stages are equal-component unity-gain Sallen–Key sections (both
/// resistors R, both capacitors C). The high-pass is a unity-gain Sallen–Key
/// section (series C3, C4; R3 in the feedback leg, R4 to ground) followed by
/// a passive C5/R5 first-order section.
struct FilterDesign {
  double c1 = 5e-9;
  double r1 = 6.8e3;
  double c2 = 15e-9;
  double r2 = 3.6e3;
  double c3 = 1e-6;
  double r3 = 5e3;
  double c4 = 1e-6;
  double r4 = 10e3;
  double c5 = 1e-6;
  double r5 = 10.4e3;
};

/// Resistor sizing rule k = 100 / (f_c · C) with k in kΩ, f_c in kHz and C in nF.
double rc_design_rule(double fc_khz, double c_nf);

/// The four cascaded analog sections: LP1, LP2 (2nd order each), HP (2nd
/// order), HP (1st order). Throws InvalidDesign on non-positive components.
std::vector<TransferFunction> bandpass_sections(const FilterDesign& design);

/// Product of bandpass_sections: 7th-order denominator, s³ numerator.
/// Throws InvalidDesign unless every pole is strictly in the left half-plane.
TransferFunction design_bandpass(const FilterDesign& design);

struct FrequencyPoint {
  double hz;
  double mag_db;
  double phase_rad;  ///< unwrapped along the requested frequency list
};

std::vector<FrequencyPoint> frequency_response(const TransferFunction& tf, std::span<const double> freqs_hz);

/// −dφ/dω at f, central difference with relative step 1e-4.
double group_delay(const TransferFunction& tf, double hz);

/// Logarithmically spaced frequencies, both ends included.
std::vector<double> log_space(double lo_hz, double hi_hz, std::size_t count);

struct BandEdges {
  double lower_hz;
  double upper_hz;
  double peak_hz;
  double peak_db;
};

/// −3 dB edges relative to the peak found on a log sweep over [lo, hi],
/// refined by bisection.
BandEdges band_edges(const TransferFunction& tf, double lo_hz, double hi_hz);

/// Direct-form-II-transposed second-order section, a0 normalized to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

/// Cascade of biquads bound to one sample rate.
class DigitalFilter {
 public:
  DigitalFilter(std::vector<Biquad> sections, double sample_rate);

  std::span<const Biquad> sections() const { return sections_; }
  double sample_rate() const { return sample_rate_; }

  /// H(e^{jω}) at `hz`.
  Complex response(double hz) const;
  std::vector<Complex> poles() const;

 private:
  std::vector<Biquad> sections_;
  double sample_rate_;
};

/// Bilinear transform (no pre-warping) of each section. The TF overload
/// factors the polynomial into real first/second-order sections first.
/// Throws InvalidInput when sample_rate < 8 × the largest pole frequency.
DigitalFilter discretize(const TransferFunction& tf, double sample_rate);
DigitalFilter discretize(std::span<const TransferFunction> sections, double sample_rate);

/// Zero-initial-state filtering. Throws InvalidInput on a sample-rate mismatch.
Signal filter_apply(const DigitalFilter& filter, const Signal& signal);

}  // namespace irlink::signal_chain
