#pragma once

#include <functional>
#include <optional>

#include "irlink/transfer_function.hpp"

namespace irlink::dynamics {

/// Sense of the gravity moment. `restoring` is the form the pendulum equation
/// is written in (−m·g·l2·sin θ), which puts the unforced poles on the jω axis.
/// `inverted` flips it to the destabilizing upright-rod form.
enum class GravitySign { restoring, inverted };

/// Plant constants of the pivoted rod. SI units throughout.
struct PendulumParams {
  double m = 1.0;                    ///< mass, kg
  double l = 0.3;                    ///< rod length, m
  double l1 = 0.3;                   ///< actuation moment arm, m
  std::optional<double> l2;          ///< gravity moment arm, m; l/2 when unset
  double g = 9.8;                    ///< gravitational acceleration, m/s²
  double c_damp = 0.0;               ///< viscous damping, N·m·s/rad
  GravitySign gravity = GravitySign::restoring;

  double gravity_arm() const { return l2.value_or(l / 2.0); }
  /// Moment of inertia of a uniform rod about its end, m·l²/3.
  double inertia() const { return m * l * l / 3.0; }
  /// Signed gravity stiffness: +m·g·l2 for restoring, −m·g·l2 for inverted.
  double gravity_stiffness() const;

  /// Throws InvalidInput if any invariant is broken.
  void validate() const;
};

struct PendulumState {
  double theta = 0.0;  ///< rad from the vertical, counter-clockwise positive
  double omega = 0.0;  ///< rad/s
  double t = 0.0;      ///< s
};

/// Base-motion loads seen by the pivot at one instant.
struct BaseLoad {
  double g_eff;             ///< effective gravity along the rod's vertical, m/s²
  double horizontal_accel;  ///< in-plane pivot acceleration, m/s²
};

/// Time-varying base load; evaluated at the RK4 stage times.
using BaseLoadFn = std::function<BaseLoad(double t)>;

/// β = (F·l1 − s·m·g·l2·sin θ − c·ω) / (m·l²/3), s = ±1 per GravitySign.
/// Throws InvalidInput on non-finite state or force.
double angular_acceleration(const PendulumParams& params, const PendulumState& state, double force);

/// Same, with the gravity replaced by `load.g_eff` and the extra in-plane
/// pivot-acceleration torque m·a_h·l2·cos θ.
double angular_acceleration(const PendulumParams& params, const PendulumState& state, double force,
                            const BaseLoad& load);

/// Largest step for which the integrator's accuracy is documented, s.
inline constexpr double kMaxStep = 0.01;

/// One classical RK4 step with the force held constant over the step.
/// Throws InvalidInput for dt ∉ (0, kMaxStep] and NumericFailure if the
/// result is not finite.
PendulumState step(const PendulumParams& params, const PendulumState& state, double force, double dt);
PendulumState step(const PendulumParams& params, const PendulumState& state, double force, double dt,
                   const BaseLoadFn& load);

/// Θ(s)/F(s) = l1 / ((m·l²/3)·s² + c·s + s_g·m·g·l2) of the small-angle plant.
TransferFunction linearize(const PendulumParams& params);

/// Unforced, undamped poles ±j·√(m·g·l2 / (m·l²/3)), which is ±j·√(3g/(2l))
/// for l2 = l/2. With GravitySign::inverted the pair is real, ±√(...).
/// Requires c_damp == 0 (InvalidInput otherwise); with damping use
/// control::closed_loop_poles with zero gains.
PolePair natural_poles(const PendulumParams& params);

/// (1/6)·m·l²·ω² − s_g·m·g·l2·cos θ. Conserved when c_damp = 0 and F = 0.
double mechanical_energy(const PendulumParams& params, const PendulumState& state);

}  // namespace irlink::dynamics
