#pragma once

#include <string>
#include <vector>

#include "phasectl/types.hpp"

namespace phasectl {

enum class ModelKind { Theta, Sniper, Sinusoidal };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// A phase-reduced oscillator: dtheta/dt = f(theta) + Z(theta) u.
///
/// Theta:      f = (1+I) + (1-I) cos(theta),  Z = 1 - cos(theta)
/// Sniper:     f = omega,                     Z = z (1 - cos(theta))
/// Sinusoidal: f = omega,                     Z = z sin(theta)
struct PhaseModel {
  ModelKind kind = ModelKind::Theta;
  Scalar omega = 1.0;  // natural angular frequency, > 0
  Scalar I = 0.25;     // baseline current (Theta); I = omega^2/4
  Scalar z = 2.0;      // PRC scale (Sniper/Sinusoidal); default 2/omega

  Scalar alpha() const { return 1.0 + I; }
  Scalar beta() const { return 1.0 - I; }

  Scalar f(Scalar theta) const;
  Scalar Z(Scalar theta) const;
  Scalar df(Scalar theta) const;  // d f / d theta
  Scalar dZ(Scalar theta) const;  // d Z / d theta

  /// Period of the free (u = 0) orbit.
  Scalar natural_period() const { return kTwoPi / omega; }

  static PhaseModel theta_from_current(Scalar I);
  static PhaseModel theta_from_omega(Scalar omega);
  static PhaseModel sniper(Scalar omega, Scalar z = -1.0);      // z < 0 -> 2/omega
  static PhaseModel sinusoidal(Scalar omega, Scalar z = -1.0);  // z < 0 -> 2/omega
};

/// Closed-form free evolution of a Theta neuron with baseline current I > 0,
/// unwrapped so the returned phase is continuous and increasing in t.
/// Period is exactly pi/sqrt(I). Throws std::domain_error for I <= 0.
Scalar free_evolution_theta(Scalar I, Scalar t, Scalar c = 0.0);

}  // namespace phasectl
