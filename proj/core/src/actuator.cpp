#include "irlink/actuator.hpp"

#include <algorithm>
#include <cmath>

#include "irlink/error.hpp"

namespace irlink::actuator {

void MotorParams::validate() const {
  detail::require(std::isfinite(v_ref) && v_ref > 0.0, "motor v_ref must be > 0");
  detail::require(std::isfinite(force_per_volt) && force_per_volt > 0.0, "motor force_per_volt must be > 0");
  detail::require(std::isfinite(max_duty) && max_duty > 0.0 && max_duty <= 1.0, "motor max_duty must be in (0, 1]");
  detail::require(std::isfinite(deadband) && deadband >= 0.0 && deadband < max_duty,
                  "motor deadband must be in [0, max_duty)");
}

double duty_to_voltage(double duty, double v_ref) {
  detail::require(std::isfinite(duty) && std::abs(duty) <= 1.0, "|duty| must not exceed 1");
  detail::require_finite(v_ref, "v_ref");
  return v_ref * duty;
}

double force_to_duty(double force, const MotorParams& motor) {
  detail::require_finite(force, "force");
  const double duty = force / (motor.force_per_volt * motor.v_ref);
  return std::clamp(duty, -motor.max_duty, motor.max_duty);
}

double applied_force(double duty, const MotorParams& motor) {
  if (std::abs(duty) < motor.deadband) return 0.0;
  return duty_to_voltage(duty, motor.v_ref) * motor.force_per_volt;
}

}  // namespace irlink::actuator
