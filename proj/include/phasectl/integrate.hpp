#pragma once

#include <iosfwd>
#include <vector>

#include "phasectl/control_signal.hpp"
#include "phasectl/phase_model.hpp"
#include "phasectl/types.hpp"

namespace phasectl {

/// Time grid, per-neuron unwrapped phases, and the applied control samples.
struct Trajectory {
  Vector times;     // strictly increasing, times[0] == 0
  Matrix states;    // (grid length) x (n neurons), unwrapped phases
  Vector controls;  // control value at each grid point

  Eigen::Index num_points() const { return times.size(); }
  Eigen::Index num_neurons() const { return states.cols(); }
  Vector terminal_state() const { return states.row(states.rows() - 1); }
};

/// Fixed-step RK4 forward integration of all neurons under the common input
/// u. Control discontinuities are inserted as grid points. For feedback-law
/// controls, u is evaluated on the first neuron's phase.
Trajectory integrate(const std::vector<PhaseModel>& models, const ControlSignal& u,
                     Scalar T, const Vector& theta0, Scalar step);

/// Convenience overload: all phases start at 0, default step T/4096.
Trajectory integrate(const std::vector<PhaseModel>& models, const ControlSignal& u,
                     Scalar T);

/// Per-neuron times where the unwrapped phase crosses 2*n*pi (n = 1, 2, ...),
/// located by linear interpolation between grid points.
std::vector<std::vector<Scalar>> spike_times(const Trajectory& traj);

/// CSV with header "t,theta_1,...,theta_n,u", floats at 9 significant digits.
void write_csv(const Trajectory& traj, std::ostream& os);

}  // namespace phasectl
