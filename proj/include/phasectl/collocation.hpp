#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phasectl/control_signal.hpp"
#include "phasectl/integrate.hpp"
#include "phasectl/lgl.hpp"
#include "phasectl/nlp.hpp"
#include "phasectl/phase_model.hpp"
#include "phasectl/types.hpp"

namespace phasectl {

/// Transcribed ensemble steering problem on the LGL grid. The decision
/// vector stacks the nodal phases neuron-major, then the nodal controls:
///   x = [theta(0..N, 1), ..., theta(0..N, n), u(0..N)].
struct CollocationProblem {
  LglGrid grid;
  std::vector<PhaseModel> models;
  Scalar T = 0.0;
  Vector target;  // per-neuron terminal phases (multiples of 2 pi)
  Scalar w_term = 0.0;
  Scalar w_energy = 1.0;
  Scalar amplitude = kInf;  // bound A on |u|, infinite when absent
  bool hard_terminal = true;

  int n() const { return static_cast<int>(models.size()); }
  Eigen::Index dim() const { return (grid.N + 1) * (n() + 1); }
  Eigen::Index theta_index(int node, int neuron) const {
    return static_cast<Eigen::Index>(neuron) * (grid.N + 1) + node;
  }
  Eigen::Index u_index(int node) const {
    return static_cast<Eigen::Index>(n()) * (grid.N + 1) + node;
  }
};

CollocationProblem make_collocation(std::vector<PhaseModel> models, Scalar T,
                                    const std::vector<int>& windings, int N,
                                    Scalar w_term, Scalar w_energy,
                                    Scalar amplitude = kInf, bool hard_terminal = true);

/// Collocated-dynamics residuals only (n (N+1) values), for consistency
/// checks of candidate nodal trajectories.
Vector dynamics_residual(const CollocationProblem& prob, const Matrix& theta_nodes,
                         const Vector& u_nodes);

/// Produces the NLP: objective (terminal error + weighted energy), equality
/// constraints (collocated dynamics, initial state, optional hard terminal
/// state), and box bounds on the controls. Gradients are analytic.
NlpProblem transcribe(const CollocationProblem& prob);

struct EnsembleOptions {
  int multistarts = 8;
  std::uint64_t seed = 0;
  NlpOptions nlp;
};

struct EnsembleReport {
  NlpResult nlp;
  Matrix theta_nodes;  // (N+1) x n
  Vector u_nodes;
  Vector node_times;      // LGL nodes mapped to [0, T]
  ControlSignal control;  // interpolated nodal control
  Vector oracle_terminal;
  Scalar max_target_error = 0.0;  // rad, from the RK4 re-integration
  Scalar energy = 0.0;            // (T/2) sum w_j u_j^2
};

/// Solves the transcribed NLP from a linear-ramp initial guess, optionally
/// retrying from seeded random perturbations, then re-integrates the
/// interpolated control with the RK4 oracle.
EnsembleReport solve_ensemble(const CollocationProblem& prob,
                              const EnsembleOptions& opts = {});

std::string ensemble_report_json(const CollocationProblem& prob,
                                 const EnsembleReport& report);

}  // namespace phasectl
