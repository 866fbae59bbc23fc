#include "phasectl/single_neuron.hpp"

#include <algorithm>
#include <cmath>

#include "phasectl/json_util.hpp"
#include "phasectl/quadrature.hpp"
#include "phasectl/root_finding.hpp"

namespace phasectl {

namespace {

Scalar discriminant(Scalar theta, Scalar lambda0, Scalar alpha, Scalar beta) {
  const Scalar a = alpha + beta * std::cos(theta);
  const Scalar s = 1.0 - std::cos(theta);
  return a * a - 2.0 * lambda0 * s * s;
}

// Unbounded law extended for saturation search: -inf where the discriminant
// is negative (the extremal does not exist there; the bound must be active).
Scalar u_star_or_neg_inf(Scalar theta, Scalar lambda0, Scalar alpha, Scalar beta) {
  if (discriminant(theta, lambda0, alpha, beta) < 0.0) return -kInf;
  return u_star(theta, lambda0, alpha, beta);
}

Scalar clipped_law(Scalar theta, Scalar lambda0, Scalar alpha, Scalar beta, Scalar M) {
  const Scalar u = u_star_or_neg_inf(theta, lambda0, alpha, beta);
  return std::clamp(u, -M, M);
}

// Spiking time under the clipped law, Eq-style quadrature over theta.
Scalar spike_time_clipped(Scalar lambda0, Scalar alpha, Scalar beta, Scalar M) {
  return integrate_adaptive(
      [=](Scalar th) {
        const Scalar u = clipped_law(th, lambda0, alpha, beta, M);
        return 1.0 / (alpha + beta * std::cos(th) + (1.0 - std::cos(th)) * u);
      },
      0.0, kTwoPi, 1e-10);
}

Scalar clipped_energy(Scalar lambda0, Scalar alpha, Scalar beta, Scalar M) {
  return integrate_adaptive(
      [=](Scalar th) {
        const Scalar u = clipped_law(th, lambda0, alpha, beta, M);
        const Scalar speed = alpha + beta * std::cos(th) + (1.0 - std::cos(th)) * u;
        return u * u / speed;
      },
      0.0, kTwoPi, 1e-10);
}

// Max of |u*| over a fine grid; +inf if the law does not exist somewhere.
Scalar max_abs_u_star(Scalar lambda0, Scalar alpha, Scalar beta) {
  Scalar best = 0.0;
  const int n = 4096;
  for (int i = 0; i <= n; ++i) {
    const Scalar th = kTwoPi * i / n;
    const Scalar u = u_star_or_neg_inf(th, lambda0, alpha, beta);
    if (!std::isfinite(u)) return kInf;
    best = std::max(best, std::abs(u));
  }
  return best;
}

}  // namespace

Scalar u_star(Scalar theta, Scalar lambda0, Scalar alpha, Scalar beta) {
  const Scalar c = std::cos(theta);
  const Scalar a = alpha + beta * c;
  const Scalar s = 1.0 - c;
  if (s < 1e-8) {
    // Series limit at the removable singularity: u* -> -lambda0 s / a.
    return -lambda0 * s / a;
  }
  const Scalar disc = a * a - 2.0 * lambda0 * s * s;
  if (disc < 0.0) {
    throw std::domain_error("u_star: negative discriminant (spiking time not achievable)");
  }
  return (-a + std::sqrt(disc)) / s;
}

Scalar grazing_lambda0(Scalar alpha, Scalar beta) {
  const Scalar d = alpha - beta;
  return d * d / 8.0;
}

Scalar spike_time_unbounded(Scalar lambda0, Scalar alpha, Scalar beta) {
  if (lambda0 >= grazing_lambda0(alpha, beta)) {
    throw std::domain_error("spike_time_unbounded: grazing trajectory (T -> infinity)");
  }
  return integrate_adaptive(
      [=](Scalar th) { return 1.0 / std::sqrt(discriminant(th, lambda0, alpha, beta)); },
      0.0, kTwoPi, 1e-10);
}

Scalar spike_time_unbounded_linear_discriminant(Scalar lambda0, Scalar alpha,
                                                Scalar beta) {
  return integrate_adaptive(
      [=](Scalar th) {
        const Scalar a = alpha + beta * std::cos(th);
        const Scalar d = a * a - 2.0 * lambda0 * (1.0 - std::cos(th));
        if (d <= 0.0) {
          throw std::domain_error(
              "spike_time_unbounded_linear_discriminant: nonpositive discriminant");
        }
        return 1.0 / std::sqrt(d);
      },
      0.0, kTwoPi, 1e-10);
}

ControlSignal MinPowerSolution::control() const {
  const Scalar l0 = lambda0, a = model.alpha(), b = model.beta(), bound = M;
  return ControlSignal::feedback(
      [l0, a, b, bound](Scalar theta) {
        return std::clamp(u_star_or_neg_inf(theta, l0, a, b), -bound, bound);
      },
      bound);
}

MinPowerSolution solve_min_power(const PhaseModel& model, Scalar T, Scalar M) {
  if (model.kind != ModelKind::Theta) {
    throw std::invalid_argument("solve_min_power: Theta model required");
  }
  if (T <= 0.0) throw std::invalid_argument("solve_min_power: T must be positive");
  const Scalar alpha = model.alpha(), beta = model.beta();
  const Scalar graze = grazing_lambda0(alpha, beta);
  const Scalar T0 = spike_time_unbounded(0.0, alpha, beta);

  MinPowerSolution sol;
  sol.model = model;
  sol.T = T;
  sol.M = M;

  // Feasible range under the bound.
  const Scalar t_min = std::isfinite(M) ? time_optimal_single(model, M).T_min : 0.0;
  Scalar t_max = kInf;
  if (std::isfinite(M) && M > 0.0 && M < model.I) {
    // u = -M keeps the phase velocity positive; the slow end is finite.
    t_max = integrate_adaptive(
        [&](Scalar th) {
          return 1.0 / (alpha + beta * std::cos(th) - (1.0 - std::cos(th)) * M);
        },
        0.0, kTwoPi, 1e-10);
  }
  if (T < t_min || T > t_max) {
    throw InfeasibleSpikeTime("solve_min_power: T outside achievable range", t_min, t_max);
  }

  // Unbounded solve: T(lambda0) is strictly increasing.
  auto mismatch_unbounded = [&](Scalar l0) { return spike_time_unbounded(l0, alpha, beta) - T; };
  Scalar lambda0 = 0.0;
  bool unbounded_ok = true;
  if (T == T0) {
    lambda0 = 0.0;
  } else if (T > T0) {
    Scalar hi = graze * (1.0 - 1e-4);
    bool bracketed = false;
    for (int i = 0; i < 40 && !bracketed; ++i) {
      try {
        if (mismatch_unbounded(hi) > 0.0) {
          bracketed = true;
          break;
        }
      } catch (const std::runtime_error&) {
        // quadrature too steep; back off
        hi = graze - (graze - hi) * 2.0;
        continue;
      }
      hi = graze - (graze - hi) * 0.5;
    }
    if (bracketed) {
      lambda0 = brent(mismatch_unbounded, 0.0, hi, 1e-13);
    } else {
      unbounded_ok = false;  // extremely slow targets: handled by the clipped solve
    }
  } else {
    Scalar lo = -1.0;
    while (mismatch_unbounded(lo) > 0.0) lo *= 4.0;
    lambda0 = brent(mismatch_unbounded, lo, 0.0, 1e-13);
  }

  if (unbounded_ok && (!std::isfinite(M) || max_abs_u_star(lambda0, alpha, beta) <= M)) {
    sol.lambda0 = lambda0;
    sol.energy = (lambda0 == 0.0)
                     ? 0.0
                     : integrate_adaptive(
                           [&](Scalar th) {
                             const Scalar u = u_star(th, lambda0, alpha, beta);
                             return u * u / std::sqrt(discriminant(th, lambda0, alpha, beta));
                           },
                           0.0, kTwoPi, 1e-10);
    return sol;
  }

  if (!std::isfinite(M)) {
    throw InfeasibleSpikeTime("solve_min_power: unbounded solve failed", t_min, t_max);
  }

  // Bound active: solve the clipped time condition for lambda0.
  auto mismatch_clipped = [&](Scalar l0) { return spike_time_clipped(l0, alpha, beta, M) - T; };
  Scalar lo, hi;
  if (T < T0) {
    hi = 0.0;
    lo = -1.0;
    while (mismatch_clipped(lo) > 0.0) {
      lo *= 4.0;
      if (lo < -1e12) {
        throw InfeasibleSpikeTime("solve_min_power: T below reachable range", t_min, t_max);
      }
    }
  } else {
    lo = 0.0;
    hi = graze;
    while (mismatch_clipped(hi) < 0.0) {
      hi = hi * 4.0 + 1.0;
      if (hi > 1e12) {
        throw InfeasibleSpikeTime("solve_min_power: T above reachable range", t_min, t_max);
      }
    }
  }
  sol.lambda0 = brent(mismatch_clipped, lo, hi, 1e-13);

  // Locate the theta-interval(s) where the bound is active.
  const Scalar bound_sign = (T < T0) ? 1.0 : -1.0;
  auto excess = [&](Scalar th) {
    const Scalar u = u_star_or_neg_inf(th, sol.lambda0, alpha, beta);
    return bound_sign > 0.0 ? u - M : -M - u;  // > 0 where saturated
  };
  std::vector<Scalar> crossings =
      scan_roots([&](Scalar th) { return std::isfinite(excess(th)) ? excess(th) : 1.0; },
                 1e-9, kTwoPi - 1e-9, 8192, 1e-12);
  for (size_t i = 0; i + 1 < crossings.size(); i += 2) {
    sol.switch_angles.emplace_back(crossings[i], crossings[i + 1]);
  }
  if (sol.switch_angles.size() != 1) {
    throw std::runtime_error(
        "solve_min_power: expected exactly one saturated interval, found " +
        std::to_string(sol.switch_angles.size()));
  }
  // The clipped law must respect the bound outside the saturated interval.
  for (int i = 0; i <= 2048; ++i) {
    const Scalar th = kTwoPi * i / 2048;
    const auto [on, off] = sol.switch_angles.front();
    if (th > on && th < off) continue;
    const Scalar u = u_star_or_neg_inf(th, sol.lambda0, alpha, beta);
    if (std::isfinite(u) && std::abs(u) > M * (1.0 + 1e-9) + 1e-12) {
      throw std::runtime_error("solve_min_power: bound violated outside switch interval");
    }
  }
  sol.energy = clipped_energy(sol.lambda0, alpha, beta, M);
  return sol;
}

TimeOptimalSingle time_optimal_single(const PhaseModel& model, Scalar M) {
  if (M < 0.0) throw std::invalid_argument("time_optimal_single: M must be >= 0");
  PhaseModel m = model;
  auto law = [m, M](Scalar theta) { return m.Z(theta) >= 0.0 ? M : -M; };

  // Positive phase velocity everywhere is required for the quadrature.
  for (int i = 0; i <= 4096; ++i) {
    const Scalar th = kTwoPi * i / 4096;
    if (m.f(th) + m.Z(th) * law(th) <= 0.0) {
      throw std::domain_error(
          "time_optimal_single: non-positive max phase velocity at theta = " +
          std::to_string(th));
    }
  }
  TimeOptimalSingle result;
  result.control = ControlSignal::feedback(law, M);
  result.T_min = integrate_adaptive(
      [&](Scalar th) { return 1.0 / (m.f(th) + m.Z(th) * law(th)); }, 0.0, kTwoPi, 1e-10);
  return result;
}

std::string min_power_report_json(const MinPowerSolution& sol,
                                  Scalar oracle_terminal_phase) {
  nlohmann::json j;
  j["model"] = {{"kind", to_string(sol.model.kind)},
                {"omega", json_num(sol.model.omega)},
                {"I", json_num(sol.model.I)}};
  j["T"] = json_num(sol.T);
  j["M"] = std::isfinite(sol.M) ? json_num(sol.M) : nlohmann::json(nullptr);
  j["lambda0"] = json_num(sol.lambda0);
  nlohmann::json sw = nlohmann::json::array();
  for (const auto& [on, off] : sol.switch_angles) {
    sw.push_back({json_num(on), json_num(off)});
  }
  j["switch_angles"] = sw;
  j["energy"] = json_num(sol.energy);
  j["oracle_terminal_phase"] = json_num(oracle_terminal_phase);
  j["oracle_terminal_error"] = json_num(oracle_terminal_phase - kTwoPi);
  return j.dump(2);
}

}  // namespace phasectl
