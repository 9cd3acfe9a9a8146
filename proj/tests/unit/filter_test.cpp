#include <gtest/gtest.h>

#include <cmath>

#include "irlink/error.hpp"
#include "irlink/filter.hpp"
#include "support/oracles.hpp"

namespace sc = irlink::signal_chain;
using irlink::Signal;
using irlink::TransferFunction;

namespace {

double mag_db(const TransferFunction& tf, double hz) { return 20.0 * std::log10(std::abs(tf.at_frequency(hz))); }

// Frozen from the pole-sum group-delay oracle and a dense-sweep/bisection
// band-edge oracle on the default component values.
constexpr double kGroupDelay1k = 1.6938642938051237e-4;
constexpr double kLowerEdgeHz = 26.446576969752474;
constexpr double kUpperEdgeHz = 1567.457152885673;

}  // namespace

TEST(Filter, DesignRule) {
  EXPECT_EQ(sc::rc_design_rule(2.0, 5.0), 10.0);
  EXPECT_DOUBLE_EQ(sc::rc_design_rule(100.0 / (6.8 * 5.0), 5.0), 6.8);
  EXPECT_DOUBLE_EQ(sc::rc_design_rule(2.0, 10.0), 5.0);
  EXPECT_THROW(sc::rc_design_rule(0.0, 5.0), irlink::InvalidInput);
}

TEST(Filter, SectionShapes) {
  const auto sections = sc::bandpass_sections({});
  ASSERT_EQ(sections.size(), 4u);
  const double t1 = 6.8e3 * 5e-9;
  EXPECT_DOUBLE_EQ(sections[0].den[0], t1 * t1);
  EXPECT_DOUBLE_EQ(sections[0].den[1], 2.0 * t1);
  // Each low-pass is a double real pole at 1/RC.
  for (const auto& p : sections[1].poles()) EXPECT_NEAR(p.real(), -1.0 / (3.6e3 * 15e-9), 1e-3);
  // Second-order high-pass: Q = √(R3R4C3C4)/(R3(C3+C4)).
  const auto& hp = sections[2];
  const double q = std::sqrt(hp.den[0] * hp.den[2]) / hp.den[1];
  EXPECT_NEAR(q, std::sqrt(5e-5) / 0.01, 1e-12);
  EXPECT_EQ(sections[3].den_degree(), 1u);
}

TEST(Filter, BandpassIsSeventhOrderAndStable) {
  const auto tf = sc::design_bandpass({});
  EXPECT_EQ(tf.den_degree(), 7u);
  EXPECT_EQ(tf.num_degree(), 3u);
  for (const auto& p : tf.poles()) EXPECT_LT(p.real(), 0.0);
  const auto want = oracle::companion_roots(tf.den);
  EXPECT_LT(oracle::max_real_part(want), 0.0);
}

TEST(Filter, RejectsUnrealizableParts) {
  sc::FilterDesign d;
  d.r3 = 0.0;
  EXPECT_THROW(sc::design_bandpass(d), irlink::InvalidDesign);
  d = {};
  d.c5 = -1e-6;
  EXPECT_THROW(sc::bandpass_sections(d), irlink::InvalidDesign);
}

TEST(Filter, BlocksDcAndPassesVoiceBand) {
  const auto tf = sc::design_bandpass({});
  EXPECT_EQ(std::abs(tf.evaluate({0.0, 0.0})), 0.0);
  const auto edges = sc::band_edges(tf, 1.0, 1e5);
  EXPECT_LT(edges.peak_db - mag_db(tf, 1000.0), 3.0);
  EXPECT_LT(edges.lower_hz, 1000.0);
  EXPECT_GT(edges.upper_hz, 1000.0);
}

TEST(Filter, BandEdgesPinned) {
  const auto edges = sc::band_edges(sc::design_bandpass({}), 1.0, 1e5);
  EXPECT_NEAR(edges.lower_hz / kLowerEdgeHz, 1.0, 1e-6);
  EXPECT_NEAR(edges.upper_hz / kUpperEdgeHz, 1.0, 1e-6);
}

TEST(Filter, Selectivity) {
  const auto tf = sc::design_bandpass({});
  const double ref = mag_db(tf, 1000.0);
  // Pinned from the direct evaluation oracle.
  const double lo = ref - mag_db(tf, 5.0);
  const double hi = ref - mag_db(tf, 20000.0);
  EXPECT_GT(lo, 12.0);
  EXPECT_GT(hi, 12.0);
  const auto h5 = oracle::horner(tf.num, {0.0, 2 * oracle::kPi * 5.0}) /
                  oracle::horner(tf.den, {0.0, 2 * oracle::kPi * 5.0});
  EXPECT_NEAR(mag_db(tf, 5.0), 20.0 * std::log10(std::abs(h5)), 1e-9);
}

TEST(Filter, FrequencyResponseBasics) {
  const std::vector<double> f{10.0, 100.0, 1000.0};
  for (const auto& p : sc::frequency_response(TransferFunction::gain(1.0), f)) {
    EXPECT_EQ(p.mag_db, 0.0);
    EXPECT_EQ(p.phase_rad, 0.0);
  }
  EXPECT_THROW(sc::frequency_response(TransferFunction::gain(1.0), std::vector<double>{0.0}), irlink::InvalidInput);
}

TEST(Filter, PhaseIsUnwrapped) {
  const auto tf = sc::design_bandpass({});
  const auto freqs = sc::log_space(1.0, 1e5, 500);
  const auto resp = sc::frequency_response(tf, freqs);
  for (std::size_t i = 1; i < resp.size(); ++i)
    EXPECT_LT(std::abs(resp[i].phase_rad - resp[i - 1].phase_rad), oracle::kPi);
  // Zeros sit at the origin, so the net swing is the pole angle sum.
  double want = 0.0;
  for (const auto& p : oracle::companion_roots(tf.den))
    want -= std::arg(irlink::Complex(0.0, 2.0 * oracle::kPi * 1e5) - p) - std::arg(irlink::Complex(0.0, 2.0 * oracle::kPi) - p);
  EXPECT_NEAR(resp.back().phase_rad - resp.front().phase_rad, want, 1e-6);
}

TEST(Filter, GroupDelayMatchesPoleSum) {
  const auto tf = sc::design_bandpass({});
  for (double hz : {50.0, 300.0, 1000.0, 3000.0}) {
    const double want = oracle::pole_sum_group_delay(oracle::companion_roots(tf.den), {}, hz);
    EXPECT_NEAR(sc::group_delay(tf, hz) / want, 1.0, 1e-6) << hz;
  }
  EXPECT_NEAR(sc::group_delay(tf, 1000.0) / kGroupDelay1k, 1.0, 1e-7);
}

TEST(Filter, GroupDelayLimits) {
  EXPECT_EQ(sc::group_delay(TransferFunction::gain(3.0), 100.0), 0.0);
  const double w0 = 2.0 * oracle::kPi * 1000.0;
  const TransferFunction pole({1.0}, {1.0 / w0, 1.0});
  EXPECT_NEAR(sc::group_delay(pole, 1.0) * w0, 1.0, 1e-5);
}

TEST(Filter, DiscretizePreservesDcGain) {
  const TransferFunction lp({4.0}, {1e-4, 1.0});
  const auto dig = sc::discretize(lp, 48000.0);
  EXPECT_NEAR(std::abs(dig.response(0.0)), 4.0, 1e-12);
}

TEST(Filter, DiscretizedPolesInsideUnitCircle) {
  const auto sections = sc::bandpass_sections({});
  const auto dig = sc::discretize(std::span<const TransferFunction>(sections), 48000.0);
  EXPECT_EQ(dig.sections().size(), 4u);
  for (const auto& p : dig.poles()) EXPECT_LT(std::abs(p), 1.0);
}

TEST(Filter, WholeTfFactorsLikeSections) {
  const auto tf = sc::design_bandpass({});
  const auto whole = sc::discretize(tf, 48000.0);
  const auto sections = sc::bandpass_sections({});
  const auto parts = sc::discretize(std::span<const TransferFunction>(sections), 48000.0);
  for (double hz : {20.0, 200.0, 1000.0, 5000.0})
    EXPECT_NEAR(std::abs(whole.response(hz)) / std::abs(parts.response(hz)), 1.0, 1e-9) << hz;
}

TEST(Filter, DigitalMatchesAnalogAtOneKilohertz) {
  const auto tf = sc::design_bandpass({});
  const auto dig = sc::discretize(tf, 48000.0);
  EXPECT_NEAR(20.0 * std::log10(std::abs(dig.response(1000.0))), mag_db(tf, 1000.0), 0.1);
}

TEST(Filter, DigitalResponseIsWarpedAnalog) {
  // Without pre-warping the digital response at f is the analog response at
  // (fs/π)·tan(πf/fs).
  const double fs = 16000.0;
  const double tau = 1.0 / (2.0 * oracle::kPi * 1000.0);
  const TransferFunction lp({1.0}, {tau * tau, 2.0 * tau, 1.0});
  const auto dig = sc::discretize(lp, fs);
  for (const double hz : sc::log_space(10.0, 7000.0, 40)) {
    const double warped = fs / oracle::kPi * std::tan(oracle::kPi * hz / fs);
    EXPECT_NEAR(std::abs(dig.response(hz)), std::abs(lp.at_frequency(warped)), 1e-12) << hz;
  }
  // Close to the analog response well below the sample rate.
  for (const double hz : sc::log_space(10.0, 1000.0, 20))
    EXPECT_NEAR(20.0 * std::log10(std::abs(dig.response(hz))), mag_db(lp, hz), 0.5) << hz;
}

TEST(Filter, UndersampledIsRejected) {
  const TransferFunction lp({1.0}, {1.0 / (2.0 * oracle::kPi * 10000.0), 1.0});
  EXPECT_THROW(sc::discretize(lp, 48000.0), irlink::InvalidInput);
  EXPECT_NO_THROW(sc::discretize(lp, 80000.0));
}

TEST(Filter, ApplyIsLinear) {
  const auto dig = sc::discretize(sc::design_bandpass({}), 48000.0);
  const auto zero = sc::filter_apply(dig, Signal::constant(0.0, 48000.0, 256));
  for (double v : zero.samples()) EXPECT_EQ(v, 0.0);

  const auto x = Signal::sine(700.0, 1.0, 48000.0, 2048);
  const auto y = sc::filter_apply(dig, x);
  std::vector<double> scaled(x.samples().begin(), x.samples().end());
  for (double& v : scaled) v *= -3.5;
  const auto y3 = sc::filter_apply(dig, Signal(scaled, 48000.0));
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(y3[i], -3.5 * y[i], 1e-12);

  EXPECT_THROW(sc::filter_apply(dig, Signal::constant(1.0, 44100.0, 8)), irlink::InvalidInput);
}

TEST(Filter, SteadyStateSineGainMatchesResponse) {
  const auto tf = sc::design_bandpass({});
  const double fs = 48000.0;
  const auto dig = sc::discretize(tf, fs);
  for (const double hz : sc::log_space(80.0, 3000.0, 10)) {
    const auto y = sc::filter_apply(dig, Signal::sine(hz, 1.0, fs, 48000));
    const std::vector<double> out(y.samples().begin(), y.samples().end());
    const auto [amp, phase] = oracle::fit_sine(out, hz, fs, 24000);
    EXPECT_NEAR(20.0 * std::log10(amp), 20.0 * std::log10(std::abs(dig.response(hz))), 1e-3) << hz;
    // Bilinear warping grows with frequency; the analog curve holds to 0.1 dB through 2 kHz.
    if (hz <= 2000.0) EXPECT_NEAR(20.0 * std::log10(amp), mag_db(tf, hz), 0.1) << hz;
  }
}
