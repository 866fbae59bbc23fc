#pragma once

#include <functional>
#include <vector>

#include "phasectl/types.hpp"

namespace phasectl {

/// Bang-bang schedule: the control starts on one constant field and flips
/// sign at each switch time. X is the field f - M Z (u = -M), Y is f + M Z.
struct SwitchingSchedule {
  enum class Field { X, Y };

  Field initial_field = Field::Y;
  std::vector<Scalar> switch_times;  // strictly increasing, in (0, T)
  Scalar T = 0.0;
  Scalar M = 0.0;

  /// +M or -M at time t.
  Scalar value_at(Scalar t) const;
  /// Field in effect at time t.
  Field field_at(Scalar t) const;
  /// Number of switches.
  int num_switches() const { return static_cast<int>(switch_times.size()); }
};

Scalar field_sign(SwitchingSchedule::Field f);  // X -> -1, Y -> +1
std::string to_string(SwitchingSchedule::Field f);

/// A scalar control input, evaluable at any (t, theta). Feedback-law controls
/// depend on the phase, the others only on time.
class ControlSignal {
 public:
  enum class Kind { Zero, Constant, PiecewiseConstant, FeedbackLaw, Sampled };

  ControlSignal() : kind_(Kind::Zero) {}

  static ControlSignal zero();
  static ControlSignal constant(Scalar level);
  static ControlSignal piecewise(SwitchingSchedule schedule);
  /// Feedback law u(theta), optionally clipped to |u| <= bound.
  static ControlSignal feedback(std::function<Scalar(Scalar)> law, Scalar bound = kInf);
  /// Nodal samples interpolated in time. order == 1 -> piecewise linear;
  /// otherwise global barycentric polynomial through all nodes.
  static ControlSignal sampled(Vector times, Vector values, int order = 1,
                               Scalar bound = kInf);

  Scalar eval(Scalar t, Scalar theta = 0.0) const;
  Kind kind() const { return kind_; }
  Scalar bound() const { return bound_; }

  /// Times where the signal is discontinuous (inserted as integration
  /// grid points so jumps never fall inside a step).
  std::vector<Scalar> discontinuities() const;

  const SwitchingSchedule& schedule() const { return schedule_; }
  const Vector& sample_times() const { return times_; }
  const Vector& sample_values() const { return values_; }

 private:
  Kind kind_;
  Scalar level_ = 0.0;
  Scalar bound_ = kInf;
  SwitchingSchedule schedule_;
  std::function<Scalar(Scalar)> law_;
  Vector times_, values_, bary_weights_;
  int order_ = 1;
};

}  // namespace phasectl
