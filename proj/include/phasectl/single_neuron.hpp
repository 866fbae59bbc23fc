#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phasectl/control_signal.hpp"
#include "phasectl/phase_model.hpp"
#include "phasectl/types.hpp"

namespace phasectl {

/// Requested spiking time lies outside the range achievable under the
/// amplitude bound; carries the achievable [t_min, t_max].
struct InfeasibleSpikeTime : std::runtime_error {
  InfeasibleSpikeTime(const std::string& what, Scalar t_min, Scalar t_max)
      : std::runtime_error(what), t_min(t_min), t_max(t_max) {}
  Scalar t_min;
  Scalar t_max;
};

/// Minimum-power feedback law for a Theta neuron,
///   u*(theta) = [-(a+b cos) + sqrt((a+b cos)^2 - 2 lambda0 (1-cos)^2)] / (1-cos),
/// with the removable singularity at theta = 2 n pi evaluated by series.
/// Throws std::domain_error when the discriminant is negative at theta.
Scalar u_star(Scalar theta, Scalar lambda0, Scalar alpha, Scalar beta);

/// Largest lambda0 for which the discriminant stays nonnegative on [0, 2pi];
/// equals (alpha-beta)^2/8. The spiking time diverges at this value.
Scalar grazing_lambda0(Scalar alpha, Scalar beta);

/// Spiking time of the unbounded minimum-power extremal: the quadrature of
/// 1/sqrt((a+b cos)^2 - 2 lambda0 (1-cos)^2) over one revolution. This is the
/// form consistent with the feedback law above (the phase speed along the
/// extremal is exactly that square root). Strictly increasing in lambda0.
Scalar spike_time_unbounded(Scalar lambda0, Scalar alpha, Scalar beta);

/// Variant with the (1-cos) factor entering the discriminant linearly
/// instead of squared. Kept for comparison; it does not close the forward
/// integration round-trip for lambda0 != 0 (see tests). Agrees with
/// spike_time_unbounded at lambda0 = 0.
Scalar spike_time_unbounded_linear_discriminant(Scalar lambda0, Scalar alpha, Scalar beta);

struct MinPowerSolution {
  PhaseModel model;
  Scalar lambda0 = 0.0;
  Scalar T = 0.0;
  Scalar M = kInf;
  /// theta-intervals where the bound is active (pairs theta_on < theta_off).
  std::vector<std::pair<Scalar, Scalar>> switch_angles;
  Scalar energy = 0.0;

  bool saturated() const { return !switch_angles.empty(); }
  /// The synthesized feedback-law control, clipped to the bound.
  ControlSignal control() const;
};

/// Minimum-power control spiking a Theta neuron at exactly time T under the
/// amplitude bound M (infinite for unbounded). Throws InfeasibleSpikeTime
/// when T is not achievable.
MinPowerSolution solve_min_power(const PhaseModel& model, Scalar T, Scalar M = kInf);

struct TimeOptimalSingle {
  ControlSignal control;  // u = M sign(Z(theta))
  Scalar T_min = 0.0;
};

/// Minimum spiking time under |u| <= M: bang control matched to the sign of
/// the PRC, with T_min from the two-set quadrature over {Z >= 0} and {Z < 0}.
TimeOptimalSingle time_optimal_single(const PhaseModel& model, Scalar M);

/// JSON report for a minimum-power solve, including the oracle-integrated
/// terminal phase.
std::string min_power_report_json(const MinPowerSolution& sol,
                                  Scalar oracle_terminal_phase);

}  // namespace phasectl
