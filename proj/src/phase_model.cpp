#include "phasectl/phase_model.hpp"

#include <cmath>
#include <stdexcept>

namespace phasectl {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Theta: return "theta";
    case ModelKind::Sniper: return "sniper";
    case ModelKind::Sinusoidal: return "sinusoidal";
  }
  return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "theta") return ModelKind::Theta;
  if (name == "sniper") return ModelKind::Sniper;
  if (name == "sinusoidal") return ModelKind::Sinusoidal;
  throw std::invalid_argument("unknown model kind: " + name);
}

Scalar PhaseModel::f(Scalar theta) const {
  switch (kind) {
    case ModelKind::Theta: return alpha() + beta() * std::cos(theta);
    case ModelKind::Sniper:
    case ModelKind::Sinusoidal: return omega;
  }
  return 0.0;
}

Scalar PhaseModel::Z(Scalar theta) const {
  switch (kind) {
    case ModelKind::Theta: return 1.0 - std::cos(theta);
    case ModelKind::Sniper: return z * (1.0 - std::cos(theta));
    case ModelKind::Sinusoidal: return z * std::sin(theta);
  }
  return 0.0;
}

Scalar PhaseModel::df(Scalar theta) const {
  switch (kind) {
    case ModelKind::Theta: return -beta() * std::sin(theta);
    case ModelKind::Sniper:
    case ModelKind::Sinusoidal: return 0.0;
  }
  return 0.0;
}

Scalar PhaseModel::dZ(Scalar theta) const {
  switch (kind) {
    case ModelKind::Theta: return std::sin(theta);
    case ModelKind::Sniper: return z * std::sin(theta);
    case ModelKind::Sinusoidal: return z * std::cos(theta);
  }
  return 0.0;
}

PhaseModel PhaseModel::theta_from_current(Scalar I) {
  if (I <= 0.0) throw std::domain_error("Theta model requires I > 0");
  PhaseModel m;
  m.kind = ModelKind::Theta;
  m.I = I;
  m.omega = 2.0 * std::sqrt(I);
  m.z = 0.0;
  return m;
}

PhaseModel PhaseModel::theta_from_omega(Scalar omega) {
  if (omega <= 0.0) throw std::domain_error("Theta model requires omega > 0");
  return theta_from_current(omega * omega / 4.0);
}

PhaseModel PhaseModel::sniper(Scalar omega, Scalar z) {
  if (omega <= 0.0) throw std::domain_error("Sniper model requires omega > 0");
  PhaseModel m;
  m.kind = ModelKind::Sniper;
  m.omega = omega;
  m.I = 0.0;
  m.z = z < 0.0 ? 2.0 / omega : z;
  return m;
}

PhaseModel PhaseModel::sinusoidal(Scalar omega, Scalar z) {
  if (omega <= 0.0) throw std::domain_error("Sinusoidal model requires omega > 0");
  PhaseModel m;
  m.kind = ModelKind::Sinusoidal;
  m.omega = omega;
  m.I = 0.0;
  m.z = z < 0.0 ? 2.0 / omega : z;
  return m;
}

Scalar free_evolution_theta(Scalar I, Scalar t, Scalar c) {
  if (I <= 0.0) {
    throw std::domain_error("free_evolution_theta: I must be positive (no periodic free orbit)");
  }
  const Scalar sq = std::sqrt(I);
  const Scalar s = sq * (t + c);
  // Each tan singularity at s = pi/2 + k pi advances the phase by one winding.
  const Scalar k = std::floor(s / kPi + 0.5);
  return 2.0 * std::atan(std::tan(s - k * kPi) / sq) + kTwoPi * k;
}

}  // namespace phasectl
