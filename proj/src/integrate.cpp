#include "phasectl/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace phasectl {

namespace {

Vector rhs(const std::vector<PhaseModel>& models, const ControlSignal& u, Scalar t,
           const Vector& theta) {
  const Scalar uv = u.eval(t, theta[0]);
  Vector d(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    d[i] = models[i].f(theta[i]) + models[i].Z(theta[i]) * uv;
  }
  return d;
}

}  // namespace

Trajectory integrate(const std::vector<PhaseModel>& models, const ControlSignal& u,
                     Scalar T, const Vector& theta0, Scalar step) {
  if (step <= 0.0) throw std::invalid_argument("integrate: step must be positive");
  const auto n = static_cast<Eigen::Index>(models.size());
  if (theta0.size() != n) throw std::invalid_argument("integrate: theta0 size mismatch");

  // Segment boundaries: 0, T, and any control discontinuity strictly inside.
  std::vector<Scalar> breaks{0.0};
  for (Scalar s : u.discontinuities()) {
    if (s > 0.0 && s < T) breaks.push_back(s);
  }
  breaks.push_back(T);
  std::sort(breaks.begin(), breaks.end());

  // Count grid points.
  std::vector<int> substeps(breaks.size() - 1);
  Eigen::Index total = 1;
  for (size_t s = 0; s + 1 < breaks.size(); ++s) {
    const Scalar len = breaks[s + 1] - breaks[s];
    substeps[s] = std::max(1, static_cast<int>(std::ceil(len / step - 1e-12)));
    total += substeps[s];
  }

  Trajectory traj;
  traj.times.resize(total);
  traj.states.resize(total, n);
  traj.controls.resize(total);

  Vector theta = theta0;
  traj.times[0] = 0.0;
  traj.states.row(0) = theta;
  traj.controls[0] = u.eval(0.0, theta[0]);

  Eigen::Index row = 1;
  for (size_t s = 0; s + 1 < breaks.size(); ++s) {
    const Scalar h = (breaks[s + 1] - breaks[s]) / substeps[s];
    for (int k = 0; k < substeps[s]; ++k) {
      const Scalar t = breaks[s] + k * h;
      const Vector k1 = rhs(models, u, t, theta);
      const Vector k2 = rhs(models, u, t + 0.5 * h, theta + 0.5 * h * k1);
      const Vector k3 = rhs(models, u, t + 0.5 * h, theta + 0.5 * h * k2);
      const Vector k4 = rhs(models, u, t + h, theta + h * k3);
      theta += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const Scalar tn = (k + 1 == substeps[s]) ? breaks[s + 1] : t + h;
      if (!theta.allFinite()) {
        throw std::runtime_error("integrate: non-finite state at t = " + std::to_string(tn));
      }
      traj.times[row] = tn;
      traj.states.row(row) = theta;
      traj.controls[row] = u.eval(tn, theta[0]);
      ++row;
    }
  }
  return traj;
}

Trajectory integrate(const std::vector<PhaseModel>& models, const ControlSignal& u,
                     Scalar T) {
  return integrate(models, u, T, Vector::Zero(static_cast<Eigen::Index>(models.size())),
                   T / 4096.0);
}

std::vector<std::vector<Scalar>> spike_times(const Trajectory& traj) {
  // Small slack so a crossing landing exactly on the final grid point is
  // still counted despite integration roundoff.
  constexpr Scalar kSlack = 1e-9;
  std::vector<std::vector<Scalar>> spikes(traj.num_neurons());
  for (Eigen::Index i = 0; i < traj.num_neurons(); ++i) {
    long level = static_cast<long>(std::floor(traj.states(0, i) / kTwoPi + kSlack));
    for (Eigen::Index r = 1; r < traj.num_points(); ++r) {
      const Scalar prev = traj.states(r - 1, i);
      const Scalar cur = traj.states(r, i);
      while (cur >= (level + 1) * kTwoPi - kSlack) {
        const Scalar target = (level + 1) * kTwoPi;
        const Scalar w = cur > prev ? (target - prev) / (cur - prev) : 1.0;
        spikes[i].push_back(traj.times[r - 1] +
                            std::clamp(w, Scalar(0), Scalar(1)) *
                                (traj.times[r] - traj.times[r - 1]));
        ++level;
      }
      while (cur < level * kTwoPi - kSlack) --level;  // phase moved backwards
    }
  }
  return spikes;
}

void write_csv(const Trajectory& traj, std::ostream& os) {
  os << "t";
  for (Eigen::Index i = 0; i < traj.num_neurons(); ++i) os << ",theta_" << (i + 1);
  os << ",u\n";
  char buf[64];
  auto put = [&](Scalar v, char sep) {
    std::snprintf(buf, sizeof buf, "%.9g%c", v, sep);
    os << buf;
  };
  for (Eigen::Index r = 0; r < traj.num_points(); ++r) {
    put(traj.times[r], ',');
    for (Eigen::Index i = 0; i < traj.num_neurons(); ++i) put(traj.states(r, i), ',');
    put(traj.controls[r], '\n');
  }
}

}  // namespace phasectl
