#include "irlink/dynamics.hpp"

#include <cmath>

#include "irlink/error.hpp"

namespace irlink::dynamics {
namespace {

struct Derivative {
  double dtheta;
  double domega;
};

double accel_unchecked(const PendulumParams& p, double theta, double omega, double force, const BaseLoad& load) {
  const double sign = p.gravity == GravitySign::restoring ? 1.0 : -1.0;
  const double arm = p.gravity_arm();
  const double torque = force * p.l1 - sign * p.m * load.g_eff * arm * std::sin(theta) - p.c_damp * omega +
                        p.m * load.horizontal_accel * arm * std::cos(theta);
  return torque / p.inertia();
}

void check_state(const PendulumState& s, double force) {
  detail::require_finite(s.theta, "theta");
  detail::require_finite(s.omega, "omega");
  detail::require_finite(s.t, "t");
  detail::require_finite(force, "force");
}

}  // namespace

double PendulumParams::gravity_stiffness() const {
  const double k = m * g * gravity_arm();
  return gravity == GravitySign::restoring ? k : -k;
}

void PendulumParams::validate() const {
  detail::require(std::isfinite(m) && m > 0.0, "pendulum mass must be > 0");
  detail::require(std::isfinite(l) && l > 0.0, "pendulum length must be > 0");
  detail::require(std::isfinite(l1) && l1 > 0.0 && l1 <= l, "actuation arm l1 must satisfy 0 < l1 <= l");
  if (l2) detail::require(std::isfinite(*l2) && *l2 > 0.0 && *l2 <= l, "gravity arm l2 must satisfy 0 < l2 <= l");
  detail::require(std::isfinite(g) && g > 0.0, "gravity must be > 0");
  detail::require(std::isfinite(c_damp) && c_damp >= 0.0, "damping must be >= 0");
}

double angular_acceleration(const PendulumParams& params, const PendulumState& state, double force) {
  return angular_acceleration(params, state, force, BaseLoad{params.g, 0.0});
}

double angular_acceleration(const PendulumParams& params, const PendulumState& state, double force,
                            const BaseLoad& load) {
  check_state(state, force);
  detail::require_finite(load.g_eff, "g_eff");
  detail::require_finite(load.horizontal_accel, "horizontal acceleration");
  return accel_unchecked(params, state.theta, state.omega, force, load);
}

PendulumState step(const PendulumParams& params, const PendulumState& state, double force, double dt) {
  const BaseLoad still{params.g, 0.0};
  return step(params, state, force, dt, [still](double) { return still; });
}

PendulumState step(const PendulumParams& params, const PendulumState& state, double force, double dt,
                   const BaseLoadFn& load) {
  detail::require(std::isfinite(dt) && dt > 0.0, "step size must be > 0");
  detail::require(dt <= kMaxStep, "step size exceeds the 10 ms accuracy bound");
  check_state(state, force);

  auto deriv = [&](double t, double theta, double omega) {
    return Derivative{omega, accel_unchecked(params, theta, omega, force, load(t))};
  };

  const double h = dt;
  const Derivative k1 = deriv(state.t, state.theta, state.omega);
  const Derivative k2 = deriv(state.t + h / 2, state.theta + h / 2 * k1.dtheta, state.omega + h / 2 * k1.domega);
  const Derivative k3 = deriv(state.t + h / 2, state.theta + h / 2 * k2.dtheta, state.omega + h / 2 * k2.domega);
  const Derivative k4 = deriv(state.t + h, state.theta + h * k3.dtheta, state.omega + h * k3.domega);

  PendulumState next;
  next.theta = state.theta + h / 6 * (k1.dtheta + 2 * k2.dtheta + 2 * k3.dtheta + k4.dtheta);
  next.omega = state.omega + h / 6 * (k1.domega + 2 * k2.domega + 2 * k3.domega + k4.domega);
  next.t = state.t + h;
  if (!std::isfinite(next.theta)) throw NumericFailure("theta", "pendulum angle became non-finite");
  if (!std::isfinite(next.omega)) throw NumericFailure("omega", "pendulum angular velocity became non-finite");
  return next;
}

TransferFunction linearize(const PendulumParams& params) {
  params.validate();
  return {{params.l1}, {params.inertia(), params.c_damp, params.gravity_stiffness()}};
}

PolePair natural_poles(const PendulumParams& params) {
  params.validate();
  detail::require(params.c_damp == 0.0, "natural_poles requires c_damp == 0; use closed_loop_poles");
  const double w2 = params.gravity_stiffness() / params.inertia();
  if (w2 >= 0.0) {
    const double w = std::sqrt(w2);
    return {Complex(0.0, w), Complex(0.0, -w)};
  }
  const double r = std::sqrt(-w2);
  return {Complex(r, 0.0), Complex(-r, 0.0)};
}

double mechanical_energy(const PendulumParams& params, const PendulumState& state) {
  return 0.5 * params.inertia() * state.omega * state.omega -
         params.gravity_stiffness() * std::cos(state.theta);
}

}  // namespace irlink::dynamics
