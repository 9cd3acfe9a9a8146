#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "irlink/dynamics.hpp"
#include "irlink/transfer_function.hpp"

namespace irlink::control {

/// PD gains. kp acts as torque per radian in the closed-loop analysis.
struct PdGains {
  double kp = 0.0;  ///< N·m/rad
  double kd = 0.0;  ///< N·m·s/rad
};

/// How the proportional error is formed.
enum class ErrorMode {
  /// e = measured − set_angle.
  setpoint,
  /// e = new_angle − last_angle, F = −kp·e − (kd·ė)/scale, exactly as the
  /// embedded pseudocode reads (operator precedence included).
  literal,
};

struct ControllerState {
  double set_angle = 0.0;            ///< rad
  std::optional<double> last_angle;  ///< rad; unset until the first sample
  double dt = 1e-3;                  ///< control period, s
  double output_scale = 10.0;        ///< the firmware's "/10" divisor
  ErrorMode mode = ErrorMode::setpoint;

  void validate() const;
};

struct ControlOutput {
  double force;  ///< N
  ControllerState state;
};

/// One tick of the discrete PD law. Derivative is on measurement and is zero
/// on the first sample. Throws NumericFailure on a non-finite measurement.
ControlOutput control_step(const PdGains& gains, const ControllerState& state, double measured_angle);

/// H(s) = l1 / ((m·l²/3)·s² + (K_d + c)·s + K_p + s_g·m·g·l2).
TransferFunction closed_loop_tf(const dynamics::PendulumParams& params, const PdGains& gains);

PolePair closed_loop_poles(const dynamics::PendulumParams& params, const PdGains& gains);

/// Complex closed-loop poles with K_d > 0: b² − 4·a·c < 0 on the denominator.
bool is_underdamped(const dynamics::PendulumParams& params, const PdGains& gains);

/// Both closed-loop poles strictly in the left half-plane. For a quadratic
/// this is exactly "all denominator coefficients positive".
bool is_stable(const dynamics::PendulumParams& params, const PdGains& gains);

/// ζ = b / (2·√(a·c)); requires c > 0.
double damping_ratio(const dynamics::PendulumParams& params, const PdGains& gains);

struct GainRange {
  double lo;
  double hi;
};

/// Row-major boolean map; row i ↔ kp_axis[i], column j ↔ kd_axis[j].
struct StabilityGrid {
  std::vector<double> kp_axis;
  std::vector<double> kd_axis;
  std::vector<std::uint8_t> stable;

  bool at(std::size_t i, std::size_t j) const { return stable[i * kd_axis.size() + j] != 0; }
};

/// Evaluates is_stable on a grid_n × grid_n lattice spanning both ranges
/// inclusively. Throws InvalidInput on an empty/non-finite range or grid_n < 2.
StabilityGrid stability_region(const dynamics::PendulumParams& params, GainRange kp_range, GainRange kd_range,
                               std::size_t grid_n);

/// CSV with header `kp,kd,stable`, rows in row-major order.
void write_stability_csv(std::ostream& os, const StabilityGrid& grid);

}  // namespace irlink::control
