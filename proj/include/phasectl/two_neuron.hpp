#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasectl/control_signal.hpp"
#include "phasectl/phase_model.hpp"
#include "phasectl/types.hpp"

namespace phasectl {

struct TwoNeuronParams {
  Scalar alpha1, beta1, alpha2, beta2;
  Scalar M;

  static TwoNeuronParams from_currents(Scalar I1, Scalar I2, Scalar M) {
    return {1.0 + I1, 1.0 - I1, 1.0 + I2, 1.0 - I2, M};
  }
  Scalar I1() const { return alpha1 - 1.0; }
  Scalar I2() const { return alpha2 - 1.0; }
};

using Field = SwitchingSchedule::Field;

/// Pushforward component of the control field moved backward along a
/// constant-control trajectory for time tau (the closed-form bracket series,
/// continued analytically to the hyperbolic regime when I + u < 0).
Scalar pushforward_component(Scalar tau, Scalar theta, Scalar alpha, Scalar beta,
                             Scalar u);

struct InterswitchResult {
  std::vector<Scalar> times;  // candidate tau in (0, tau_max]
  bool degenerate = false;    // equation holds identically
};

/// Candidate inter-switching intervals from a switching point p along the
/// given field (tau = 0 excluded).
InterswitchResult interswitch_times(const Vector& p, Field field,
                                    const TwoNeuronParams& params, Scalar tau_max,
                                    int grid = 4096);

struct SwitchClassification {
  enum class Direction { XtoY, YtoX, Degenerate };
  Scalar k1 = 0.0;
  Scalar k2 = 0.0;
  Direction direction = Direction::Degenerate;
};

/// Decomposes [f, Z] = k1 f + k2 Z at p and classifies the switch direction
/// from the sign of k1 (k1 > 0: X to Y; k1 < 0: Y to X).
SwitchClassification classify_switch(const Vector& p, const TwoNeuronParams& params);

struct TwoNeuronSolution {
  SwitchingSchedule schedule;
  Vector target;           // (2 m1 pi, 2 m2 pi)
  Vector oracle_terminal;  // re-integrated terminal state
  std::vector<Scalar> k1_at_switches;
  std::vector<Vector> switch_points;
  Scalar terminal_error = 0.0;  // max component deviation, rad
};

struct SynthesisOptions {
  int max_switches = 4;
  int first_switch_grid = 2000;
  Scalar search_step = 1e-3;  // RK4 step during the shooting search
  Scalar verify_step = 1e-4;    // RK4 step for the final oracle check
  Scalar simultaneity_tol = 1e-6;
};

/// Time-optimal bang-bang synthesis steering two Theta neurons from (0, 0)
/// to (2 m1 pi, 2 m2 pi). Throws std::runtime_error when no feasible
/// concatenation exists within max_switches (the message carries the best
/// near-miss).
TwoNeuronSolution synthesize(Scalar I1, Scalar I2, Scalar M, int m1, int m2,
                             const SynthesisOptions& opts = {});

std::string two_neuron_report_json(const TwoNeuronSolution& sol);

}  // namespace phasectl
