#include "phasectl/two_neuron.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "phasectl/integrate.hpp"
#include "phasectl/json_util.hpp"
#include "phasectl/root_finding.hpp"

namespace phasectl {

namespace {

// (cos(2 tau sqrt(d)) - 1) / (2 d), continued through d <= 0.
Scalar cos_term(Scalar tau, Scalar d) {
  if (std::abs(d) < 1e-7) {
    const Scalar t2 = tau * tau;
    return -t2 + (1.0 / 3.0) * t2 * t2 * d - (2.0 / 45.0) * t2 * t2 * t2 * d * d;
  }
  const std::complex<Scalar> w = std::sqrt(std::complex<Scalar>(d, 0.0));
  return (std::cos(2.0 * tau * w).real() - 1.0) / (2.0 * d);
}

// sin(2 tau sqrt(d)) / sqrt(d), continued through d <= 0.
Scalar sin_term(Scalar tau, Scalar d) {
  if (std::abs(d) < 1e-7) {
    const Scalar t2 = tau * tau;
    return 2.0 * tau * (1.0 - (2.0 / 3.0) * t2 * d + (2.0 / 15.0) * t2 * t2 * d * d);
  }
  const std::complex<Scalar> w = std::sqrt(std::complex<Scalar>(d, 0.0));
  return (std::sin(2.0 * tau * w) / w).real();
}

using V2 = Eigen::Vector2d;

// Constant-control flow of the two Theta neurons, fixed-step RK4.
struct ConstFlow {
  Scalar a1, b1, a2, b2, u;

  V2 deriv(const V2& p) const {
    return {a1 + b1 * std::cos(p[0]) + u * (1.0 - std::cos(p[0])),
            a2 + b2 * std::cos(p[1]) + u * (1.0 - std::cos(p[1]))};
  }

  V2 advance(V2 p, Scalar t, Scalar step) const {
    if (t <= 0.0) return p;
    const int n = std::max(1, static_cast<int>(std::ceil(t / step)));
    const Scalar h = t / n;
    for (int i = 0; i < n; ++i) {
      const V2 k1 = deriv(p);
      const V2 k2 = deriv(p + 0.5 * h * k1);
      const V2 k3 = deriv(p + 0.5 * h * k2);
      const V2 k4 = deriv(p + h * k3);
      p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return p;
  }

  // First time in (0, horizon] at which component i crosses `level`
  // (either direction). Returns negative if no crossing.
  Scalar first_crossing(const V2& p0, int i, Scalar level, Scalar horizon,
                        Scalar step) const {
    V2 p = p0;
    Scalar t = 0.0;
    Scalar prev = p[i] - level;
    const int n = std::max(1, static_cast<int>(std::ceil(horizon / step)));
    const Scalar h = horizon / n;
    for (int k = 0; k < n; ++k) {
      const V2 pn = advance(p, h, h);
      const Scalar cur = pn[i] - level;
      if (prev == 0.0) return t;
      if ((prev > 0.0) != (cur > 0.0) || cur == 0.0) {
        // Refine inside [t, t+h] by bisection on the flow from p.
        Scalar lo = 0.0, hi = h;
        for (int it = 0; it < 60; ++it) {
          const Scalar mid = 0.5 * (lo + hi);
          const Scalar v = advance(p, mid, h)[i] - level;
          if ((v > 0.0) == (prev > 0.0)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        return t + 0.5 * (lo + hi);
      }
      p = pn;
      prev = cur;
      t += h;
    }
    return -1.0;
  }
};

ConstFlow make_flow(const TwoNeuronParams& params, Field field) {
  return {params.alpha1, params.beta1, params.alpha2, params.beta2,
          field_sign(field) * params.M};
}

Field flip(Field f) { return f == Field::X ? Field::Y : Field::X; }

Scalar interswitch_eq(Scalar tau, const Vector& p, const TwoNeuronParams& params, Scalar u) {
  const Scalar z1 = 1.0 - std::cos(p[0]);
  const Scalar z2 = 1.0 - std::cos(p[1]);
  const Scalar d1 = params.alpha1 - 1.0 + u;
  const Scalar d2 = params.alpha2 - 1.0 + u;
  const Scalar B1 = u - params.beta1 - (params.alpha1 + u) * std::cos(p[0]);
  const Scalar B2 = u - params.beta2 - (params.alpha2 + u) * std::cos(p[1]);
  const Scalar g1 = z1 + B1 * cos_term(tau, d1) + std::sin(p[0]) * sin_term(tau, d1);
  const Scalar g2 = z2 + B2 * cos_term(tau, d2) + std::sin(p[1]) * sin_term(tau, d2);
  return z2 * g1 - z1 * g2;
}

}  // namespace

Scalar pushforward_component(Scalar tau, Scalar theta, Scalar alpha, Scalar beta,
                             Scalar u) {
  const Scalar d = alpha - 1.0 + u;
  const Scalar B = u - beta - (alpha + u) * std::cos(theta);
  return (1.0 - std::cos(theta)) + B * cos_term(tau, d) + std::sin(theta) * sin_term(tau, d);
}

InterswitchResult interswitch_times(const Vector& p, Field field,
                                    const TwoNeuronParams& params, Scalar tau_max,
                                    int grid) {
  const Scalar u = field_sign(field) * params.M;
  InterswitchResult result;

  // Degenerate when the equation vanishes identically (Z(p) = 0 or the two
  // neurons are indistinguishable at p).
  Scalar max_abs = 0.0;
  for (int i = 1; i <= 64; ++i) {
    max_abs = std::max(max_abs, std::abs(interswitch_eq(tau_max * i / 64.0, p, params, u)));
  }
  if (max_abs < 1e-12) {
    result.degenerate = true;
    return result;
  }

  auto f = [&](Scalar tau) { return interswitch_eq(tau, p, params, u); };
  const Scalar tau_lo = tau_max * 1e-7;  // tau = 0 is always a root; skip it
  result.times = scan_roots(f, tau_lo, tau_max, grid, 1e-10);
  std::erase_if(result.times, [&](Scalar t) { return t < tau_max * 1e-6; });
  return result;
}

SwitchClassification classify_switch(const Vector& p, const TwoNeuronParams& params) {
  const Scalar s1 = std::sin(p[0]), s2 = std::sin(p[1]);
  const Scalar z1 = 1.0 - std::cos(p[0]), z2 = 1.0 - std::cos(p[1]);
  const Scalar F1 = params.alpha1 + params.beta1 * std::cos(p[0]);
  const Scalar F2 = params.alpha2 + params.beta2 * std::cos(p[1]);
  const Scalar den = F1 * z2 - F2 * z1;

  SwitchClassification c;
  const Scalar scale = std::abs(F1 * z2) + std::abs(F2 * z1) + 1e-300;
  if (std::abs(den) < 1e-10 * scale) {
    c.direction = SwitchClassification::Direction::Degenerate;
    return c;
  }
  c.k1 = 2.0 * (s1 * z2 - s2 * z1) / den;
  c.k2 = 2.0 * (s2 * F1 - s1 * F2) / den;
  if (c.k1 > 1e-10) {
    c.direction = SwitchClassification::Direction::XtoY;
  } else if (c.k1 < -1e-10) {
    c.direction = SwitchClassification::Direction::YtoX;
  } else {
    c.direction = SwitchClassification::Direction::Degenerate;
  }
  return c;
}

namespace {

struct ChainResult {
  bool ok = false;
  std::vector<Scalar> interswitch;  // tau_2 .. tau_s
  std::vector<V2> points;           // p_1 .. p_s
  Field final_field = Field::Y;
  V2 final_point = V2::Zero();
  Scalar elapsed = 0.0;  // t1 + sum tau
};

// Propagate the switch chain after the first switch point.
ChainResult run_chain(const TwoNeuronParams& params, Field f0, Scalar t1,
                      const V2& p1, int num_switches, Scalar tau_max, Scalar step) {
  ChainResult chain;
  chain.points.push_back(p1);
  chain.elapsed = t1;
  Field cur = flip(f0);  // field after the first switch
  V2 p = p1;
  for (int j = 2; j <= num_switches; ++j) {
    const InterswitchResult cands = interswitch_times(p, cur, params, tau_max);
    if (cands.degenerate) return chain;
    bool found = false;
    for (Scalar tau : cands.times) {
      const V2 q = make_flow(params, cur).advance(p, tau, step);
      const SwitchClassification cls = classify_switch(q, params);
      const bool want_ytox = (cur == Field::Y);
      if ((want_ytox && cls.direction == SwitchClassification::Direction::YtoX) ||
          (!want_ytox && cls.direction == SwitchClassification::Direction::XtoY)) {
        chain.interswitch.push_back(tau);
        chain.points.push_back(q);
        chain.elapsed += tau;
        p = q;
        cur = flip(cur);
        found = true;
        break;
      }
    }
    if (!found) return chain;
  }
  chain.ok = true;
  chain.final_field = cur;
  chain.final_point = p;
  return chain;
}

struct FinalLeg {
  bool ok = false;
  Scalar t_hit = 0.0;     // time (within the leg) at which theta_1 hits target
  Scalar mismatch = 0.0;  // theta_2(t_hit) - target_2, rad
};

FinalLeg close_leg(const TwoNeuronParams& params, Field field, const V2& p,
                   const Vector& target, Scalar horizon, Scalar step) {
  FinalLeg leg;
  const ConstFlow flow = make_flow(params, field);
  const Scalar t_hit = flow.first_crossing(p, 0, target[0], horizon, step);
  if (t_hit <= 0.0) return leg;
  const V2 q = flow.advance(p, t_hit, step);
  leg.ok = true;
  leg.t_hit = t_hit;
  leg.mismatch = q[1] - target[1];
  return leg;
}

}  // namespace

TwoNeuronSolution synthesize(Scalar I1, Scalar I2, Scalar M, int m1, int m2,
                             const SynthesisOptions& opts) {
  if (I1 <= 0.0 || I2 <= 0.0) throw std::invalid_argument("synthesize: currents must be positive");
  if (I1 == I2) throw std::invalid_argument("synthesize: currents must be distinct");
  if (M <= 0.0) throw std::invalid_argument("synthesize: M must be positive");
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("synthesize: targets must be positive windings");

  const TwoNeuronParams params = TwoNeuronParams::from_currents(I1, I2, M);
  Vector target(2);
  target << kTwoPi * m1, kTwoPi * m2;

  const Scalar slow_period = kPi / std::sqrt(std::min(I1, I2));
  const Scalar tau_max = 2.0 * slow_period;
  const Scalar t1_max = 2.0 * slow_period;
  const Scalar horizon = slow_period * (m1 + m2 + 2);

  struct Best {
    Scalar T = kInf;
    Field f0 = Field::Y;
    int switches = 0;
    Scalar t1 = 0.0;
    std::vector<Scalar> interswitch;
  };
  Best best;
  Scalar best_near_miss = kInf;

  for (Field f0 : {Field::X, Field::Y}) {
    const ConstFlow first = make_flow(params, f0);

    // Switch-free closure: both components must arrive together.
    {
      const FinalLeg leg = close_leg(params, f0, V2::Zero(), target, horizon,
                                     opts.search_step);
      if (leg.ok) {
        best_near_miss = std::min(best_near_miss, std::abs(leg.mismatch));
        if (std::abs(leg.mismatch) < opts.simultaneity_tol && leg.t_hit < best.T) {
          best = {leg.t_hit, f0, 0, 0.0, {}};
        }
      }
    }

    // Precompute the first segment once; every t1 candidate lies on it.
    const int G = opts.first_switch_grid;
    std::vector<V2> p1(G + 1);
    {
      V2 p = V2::Zero();
      p1[0] = p;
      const Scalar h = t1_max / G;
      for (int i = 1; i <= G; ++i) {
        p = first.advance(p, h, opts.search_step);
        p1[i] = p;
      }
    }

    for (int s = 1; s <= opts.max_switches; ++s) {
      // mismatch(t1) sampled on the grid; sign changes are refined below.
      auto evaluate = [&](Scalar t1, const V2& pfirst) -> std::pair<bool, FinalLeg> {
        const ChainResult chain =
            run_chain(params, f0, t1, pfirst, s, tau_max, opts.search_step);
        if (!chain.ok) return {false, {}};
        if (chain.elapsed >= best.T) return {false, {}};  // prune
        const Scalar cap = std::min(horizon, best.T + 1.0 - chain.elapsed);
        if (cap <= 0.0) return {false, {}};
        const FinalLeg leg = close_leg(params, chain.final_field, chain.final_point,
                                       target, cap, opts.search_step);
        if (!leg.ok || chain.elapsed + leg.t_hit >= best.T + opts.simultaneity_tol) {
          return {false, {}};
        }
        return {true, leg};
      };

      Scalar prev_m = 0.0;
      bool prev_valid = false;
      for (int i = 1; i <= G; ++i) {
        const Scalar t1 = t1_max * i / G;
        const auto [ok, leg] = evaluate(t1, p1[i]);
        if (ok) best_near_miss = std::min(best_near_miss, std::abs(leg.mismatch));
        if (ok && prev_valid && (prev_m > 0.0) != (leg.mismatch > 0.0)) {
          // Bisect on t1 for simultaneous arrival.
          Scalar lo = t1_max * (i - 1) / G, hi = t1;
          Scalar lo_m = prev_m;
          Scalar t1_root = 0.5 * (lo + hi);
          for (int it = 0; it < 60; ++it) {
            t1_root = 0.5 * (lo + hi);
            const V2 pm = first.advance(V2::Zero(), t1_root, opts.search_step);
            const auto [mok, mleg] = evaluate(t1_root, pm);
            if (!mok) break;
            if (std::abs(mleg.mismatch) < 0.1 * opts.simultaneity_tol) break;
            if ((mleg.mismatch > 0.0) == (lo_m > 0.0)) {
              lo = t1_root;
              lo_m = mleg.mismatch;
            } else {
              hi = t1_root;
            }
          }
          const V2 pr = first.advance(V2::Zero(), t1_root, opts.search_step);
          const ChainResult chain =
              run_chain(params, f0, t1_root, pr, s, tau_max, opts.search_step);
          if (chain.ok) {
            const FinalLeg leg2 = close_leg(params, chain.final_field, chain.final_point,
                                            target, horizon, opts.search_step);
            if (leg2.ok && std::abs(leg2.mismatch) < opts.simultaneity_tol) {
              const Scalar T = chain.elapsed + leg2.t_hit;
              if (T < best.T - 1e-12 ||
                  (T < best.T + 1e-12 &&
                   (s < best.switches || (s == best.switches && t1_root < best.t1)))) {
                best = {T, f0, s, t1_root, chain.interswitch};
              }
            }
          }
        }
        prev_valid = ok;
        prev_m = ok ? leg.mismatch : 0.0;
      }
    }
  }

  if (!std::isfinite(best.T)) {
    throw std::runtime_error(
        "synthesize: no feasible bang-bang concatenation within max_switches; "
        "best near-miss terminal mismatch was " +
        std::to_string(best_near_miss) + " rad");
  }

  TwoNeuronSolution sol;
  sol.schedule.initial_field = best.f0;
  sol.schedule.M = M;
  sol.schedule.T = best.T;
  sol.target = target;
  if (best.switches >= 1) {
    Scalar t = best.t1;
    sol.schedule.switch_times.push_back(t);
    for (Scalar tau : best.interswitch) {
      t += tau;
      sol.schedule.switch_times.push_back(t);
    }
  }

  // Oracle verification with the full RK4 simulator at the fine step.
  const std::vector<PhaseModel> models{PhaseModel::theta_from_current(I1),
                                       PhaseModel::theta_from_current(I2)};
  const Trajectory traj = integrate(models, ControlSignal::piecewise(sol.schedule),
                                    best.T, Vector::Zero(2), opts.verify_step);
  sol.oracle_terminal = traj.terminal_state();
  sol.terminal_error = (sol.oracle_terminal - target).cwiseAbs().maxCoeff();

  for (Scalar t : sol.schedule.switch_times) {
    Eigen::Index row = 0;
    (traj.times.array() - t).cwiseAbs().minCoeff(&row);
    const Vector p = traj.states.row(row);
    sol.switch_points.push_back(p);
    sol.k1_at_switches.push_back(classify_switch(p, params).k1);
  }
  return sol;
}

std::string two_neuron_report_json(const TwoNeuronSolution& sol) {
  nlohmann::json j;
  j["initial_field"] = to_string(sol.schedule.initial_field);
  j["switch_times"] = json_range(sol.schedule.switch_times);
  j["T"] = json_num(sol.schedule.T);
  j["M"] = json_num(sol.schedule.M);
  j["target"] = json_vec(sol.target);
  j["oracle_terminal"] = json_vec(sol.oracle_terminal);
  j["terminal_error"] = json_num(sol.terminal_error);
  j["k1_signs"] = json_range(sol.k1_at_switches);
  return j.dump(2);
}

}  // namespace phasectl
