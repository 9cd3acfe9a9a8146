#pragma once

namespace irlink::actuator {

/// Averaged H-bridge drive. force_per_volt and deadband are model constants,
/// not datasheet values.
struct MotorParams {
  double v_ref = 7.4;           ///< bridge supply, V
  double force_per_volt = 0.1;  ///< N/V at the actuation arm
  double max_duty = 1.0;        ///< |duty| cap
  double deadband = 0.0;        ///< |duty| below this produces no force

  void validate() const;
  /// Largest force magnitude the bridge can deliver.
  double max_force() const { return v_ref * force_per_volt * max_duty; }
};

/// V_out = V_ref × duty; the sign selects the bridge diagonal.
/// Throws InvalidInput if |duty| > 1.
double duty_to_voltage(double duty, double v_ref);

/// clamp(force / (force_per_volt·v_ref), ±max_duty). Non-finite force throws.
double force_to_duty(double force, const MotorParams& motor);

/// Force actually produced by a duty command: zero inside the deadband,
/// otherwise duty_to_voltage(duty)·force_per_volt.
double applied_force(double duty, const MotorParams& motor);

}  // namespace irlink::actuator
