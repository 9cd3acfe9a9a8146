#include "irlink/controller.hpp"

#include <cmath>
#include <ostream>

#include "irlink/error.hpp"
#include "irlink/format.hpp"

namespace irlink::control {

void ControllerState::validate() const {
  detail::require(std::isfinite(dt) && dt > 0.0, "control period must be > 0");
  detail::require(std::isfinite(output_scale) && output_scale > 0.0, "output scale must be > 0");
  detail::require_finite(set_angle, "set angle");
}

ControlOutput control_step(const PdGains& gains, const ControllerState& state, double measured_angle) {
  if (!std::isfinite(measured_angle)) throw NumericFailure("measured_angle", "controller received a non-finite angle");
  state.validate();

  const double last = state.last_angle.value_or(measured_angle);
  const double rate = (measured_angle - last) / state.dt;

  double force = 0.0;
  switch (state.mode) {
    case ErrorMode::setpoint: {
      const double error = measured_angle - state.set_angle;
      force = -(gains.kp * error + gains.kd * rate) / state.output_scale;
      break;
    }
    case ErrorMode::literal: {
      const double error = measured_angle - last;
      force = -gains.kp * error - gains.kd * rate / state.output_scale;
      break;
    }
  }
  if (!std::isfinite(force)) throw NumericFailure("force", "controller output is non-finite");

  ControllerState next = state;
  next.last_angle = measured_angle;
  return {force, next};
}

TransferFunction closed_loop_tf(const dynamics::PendulumParams& params, const PdGains& gains) {
  params.validate();
  detail::require_finite(gains.kp, "kp");
  detail::require_finite(gains.kd, "kd");
  return {{params.l1},
          {params.inertia(), gains.kd + params.c_damp, gains.kp + params.gravity_stiffness()}};
}

PolePair closed_loop_poles(const dynamics::PendulumParams& params, const PdGains& gains) {
  const auto tf = closed_loop_tf(params, gains);
  const double c = tf.den.size() == 3 ? tf.den[2] : 0.0;
  const double b = tf.den.size() >= 2 ? tf.den[1] : 0.0;
  return poly::quadratic_roots(tf.den[0], b, c);
}

namespace {

struct Quadratic {
  double a, b, c;
};

Quadratic denominator(const dynamics::PendulumParams& params, const PdGains& gains) {
  params.validate();
  return {params.inertia(), gains.kd + params.c_damp, gains.kp + params.gravity_stiffness()};
}

}  // namespace

bool is_underdamped(const dynamics::PendulumParams& params, const PdGains& gains) {
  const auto q = denominator(params, gains);
  return gains.kd > 0.0 && q.b * q.b - 4.0 * q.a * q.c < 0.0;
}

bool is_stable(const dynamics::PendulumParams& params, const PdGains& gains) {
  const auto q = denominator(params, gains);
  return q.a > 0.0 && q.b > 0.0 && q.c > 0.0;
}

double damping_ratio(const dynamics::PendulumParams& params, const PdGains& gains) {
  const auto q = denominator(params, gains);
  detail::require(q.c > 0.0, "damping ratio needs a positive stiffness term");
  return q.b / (2.0 * std::sqrt(q.a * q.c));
}

StabilityGrid stability_region(const dynamics::PendulumParams& params, GainRange kp_range, GainRange kd_range,
                               std::size_t grid_n) {
  params.validate();
  detail::require(grid_n >= 2, "stability grid needs at least 2 points per axis");
  for (double v : {kp_range.lo, kp_range.hi, kd_range.lo, kd_range.hi}) detail::require_finite(v, "gain range bound");
  detail::require(kp_range.hi > kp_range.lo, "kp range is empty");
  detail::require(kd_range.hi > kd_range.lo, "kd range is empty");

  auto axis = [grid_n](GainRange r) {
    std::vector<double> a(grid_n);
    const double span = r.hi - r.lo;
    for (std::size_t i = 0; i < grid_n; ++i)
      a[i] = r.lo + span * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    a.back() = r.hi;
    return a;
  };

  StabilityGrid grid{axis(kp_range), axis(kd_range), {}};
  grid.stable.resize(grid_n * grid_n);
  for (std::size_t i = 0; i < grid_n; ++i)
    for (std::size_t j = 0; j < grid_n; ++j)
      grid.stable[i * grid_n + j] = is_stable(params, {grid.kp_axis[i], grid.kd_axis[j]}) ? 1 : 0;
  return grid;
}

void write_stability_csv(std::ostream& os, const StabilityGrid& grid) {
  os << "kp,kd,stable\n";
  for (std::size_t i = 0; i < grid.kp_axis.size(); ++i)
    for (std::size_t j = 0; j < grid.kd_axis.size(); ++j)
      os << fmt_double(grid.kp_axis[i]) << ',' << fmt_double(grid.kd_axis[j]) << ','
         << (grid.at(i, j) ? 1 : 0) << '\n';
}

}  // namespace irlink::control
