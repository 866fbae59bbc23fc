#include "phasectl/nlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <deque>
#include <stdexcept>

namespace phasectl {

namespace {

Vector project(const NlpProblem& p, Vector x) {
  if (p.lower.size() == x.size()) x = x.cwiseMax(p.lower);
  if (p.upper.size() == x.size()) x = x.cwiseMin(p.upper);
  return x;
}

void jtv_or_fd(const NlpProblem& p, const Vector& x, const Vector& y, Vector& out) {
  if (p.constraint_jtv) {
    p.constraint_jtv(x, y, out);
    return;
  }
  // Finite-difference gradient of y' c(x).
  out.resize(x.size());
  Vector xp = x, c(p.num_constraints);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Scalar h = 1e-6 * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    p.constraints(xp, c);
    const Scalar fp = y.dot(c);
    xp[i] = x[i] - h;
    p.constraints(xp, c);
    const Scalar fm = y.dot(c);
    xp[i] = x[i];
    out[i] = (fp - fm) / (2.0 * h);
  }
}

struct AugLag {
  const NlpProblem& p;
  Vector multipliers;
  Scalar mu;

  Scalar eval(const Vector& x, Vector* grad, Vector* cons) const {
    Vector c(p.num_constraints);
    Scalar f;
    if (grad) {
      Vector gf = Vector::Zero(x.size());
      f = p.objective(x, &gf);
      Scalar val = f;
      if (p.num_constraints > 0) {
        p.constraints(x, c);
        val += multipliers.dot(c) + 0.5 * mu * c.squaredNorm();
        Vector jtv;
        jtv_or_fd(p, x, (multipliers + mu * c).eval(), jtv);
        *grad = gf + jtv;
      } else {
        *grad = gf;
      }
      if (cons) *cons = c;
      return val;
    }
    f = p.objective(x, nullptr);
    if (p.num_constraints > 0) {
      p.constraints(x, c);
      f += multipliers.dot(c) + 0.5 * mu * c.squaredNorm();
      if (cons) *cons = c;
    }
    return f;
  }
};

struct InnerResult {
  Vector x;
  Scalar pg_norm = kInf;
  long iterations = 0;
};

// Coordinates pinned at a bound with the gradient pushing outward; the
// quasi-Newton model is built on the free coordinates only.
Eigen::Array<bool, Eigen::Dynamic, 1> active_set(const NlpProblem& p, const Vector& x,
                                                 const Vector& g) {
  Eigen::Array<bool, Eigen::Dynamic, 1> active =
      Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(x.size(), false);
  if (p.lower.size() != x.size() && p.upper.size() != x.size()) return active;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (p.lower.size() == x.size() && x[i] <= p.lower[i] && g[i] > 0.0) active[i] = true;
    if (p.upper.size() == x.size() && x[i] >= p.upper[i] && g[i] < 0.0) active[i] = true;
  }
  return active;
}

InnerResult projected_lbfgs(const NlpProblem& p, const AugLag& al, Vector x,
                            Scalar tol, int max_iter, int memory) {
  std::deque<std::pair<Vector, Vector>> pairs;  // (s, y), free coordinates only
  Vector g;
  Scalar fx = al.eval(x, &g, nullptr);
  InnerResult res;
  for (int it = 0; it < max_iter; ++it) {
    const Vector pg = project(p, x - g) - x;
    res.pg_norm = pg.lpNorm<Eigen::Infinity>();
    if (res.pg_norm <= tol) break;

    const auto active = active_set(p, x, g);
    Vector gm = g;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (active[i]) gm[i] = 0.0;
    }

    // Two-loop recursion on the free coordinates.
    Vector q = gm;
    std::vector<Scalar> alphas(pairs.size());
    for (int i = static_cast<int>(pairs.size()) - 1; i >= 0; --i) {
      const auto& [s, y] = pairs[i];
      alphas[i] = s.dot(q) / y.dot(s);
      q -= alphas[i] * y;
    }
    if (!pairs.empty()) {
      const auto& [s, y] = pairs.back();
      q *= s.dot(y) / y.squaredNorm();
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
      const auto& [s, y] = pairs[i];
      const Scalar beta = y.dot(q) / y.dot(s);
      q += (alphas[i] - beta) * s;
    }
    Vector d = -q;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (active[i]) d[i] = 0.0;
    }
    if (d.dot(gm) > -1e-14 * d.norm() * gm.norm()) {
      d = -gm;  // not a descent direction; steepest descent restart
      pairs.clear();
    }

    // Backtracking Armijo along the projected path; if the quasi-Newton
    // direction fails, retry once with steepest descent before giving up.
    Vector xn;
    Scalar fn = fx;
    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      Scalar step = 1.0;
      for (int ls = 0; ls < 60; ++ls) {
        xn = project(p, x + step * d);
        fn = al.eval(xn, nullptr, nullptr);
        const Scalar decrease = g.dot(xn - x);
        if (fn <= fx + 1e-4 * decrease && xn != x) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted && attempt == 0) {
        if (d == -gm) break;  // already steepest descent
        d = -gm;
        pairs.clear();
      }
    }
    ++res.iterations;
    if (!accepted) break;

    Vector gn;
    al.eval(xn, &gn, nullptr);
    const Vector s = xn - x;
    const Vector yv = gn - g;
    if (s.dot(yv) > 1e-12 * s.norm() * yv.norm()) {
      pairs.emplace_back(s, yv);
      if (static_cast<int>(pairs.size()) > memory) pairs.pop_front();
    }
    x = xn;
    fx = fn;
    g = gn;
  }
  res.x = x;
  return res;
}

// Damped Newton steps on the augmented Lagrangian over the free coordinates,
// used to sharpen stationarity once the iterate is feasible and the
// first-order inner solver has stalled. The Hessian is built column-by-column
// by forward-differencing the analytic AL gradient, which is affordable at
// the moderate dimensions this solver targets.
Vector newton_polish(const NlpProblem& p, const AugLag& al, Vector x, Scalar tol,
                     int max_iter) {
  const Eigen::Index dim = x.size();

  for (int it = 0; it < max_iter; ++it) {
    Vector g;
    const Scalar fx = al.eval(x, &g, nullptr);
    const Vector pg = project(p, x - g) - x;
    if (pg.lpNorm<Eigen::Infinity>() <= tol) break;

    const auto active = active_set(p, x, g);
    std::vector<Eigen::Index> free_idx;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (!active[i]) free_idx.push_back(i);
    }
    const Eigen::Index nf = static_cast<Eigen::Index>(free_idx.size());
    if (nf == 0) break;

    Matrix H(nf, nf);
    {
      Vector xp = x, gp;
      for (Eigen::Index k = 0; k < nf; ++k) {
        const Eigen::Index i = free_idx[k];
        const Scalar h = 1e-6 * (1.0 + std::abs(x[i]));
        xp[i] = x[i] + h;
        al.eval(xp, &gp, nullptr);
        xp[i] = x[i];
        for (Eigen::Index l = 0; l < nf; ++l) {
          H(l, k) = (gp[free_idx[l]] - g[free_idx[l]]) / h;
        }
      }
    }
    H = (0.5 * (H + H.transpose())).eval();

    Vector gf(nf);
    for (Eigen::Index k = 0; k < nf; ++k) gf[k] = g[free_idx[k]];

    // Levenberg damping, increased until the step is finite and accepted.
    Scalar tau = 1e-8 * (1.0 + H.diagonal().cwiseAbs().maxCoeff());
    bool accepted = false;
    Vector xn;
    for (int trial = 0; trial < 12 && !accepted; ++trial, tau *= 100.0) {
      Matrix Hd = H;
      Hd.diagonal().array() += tau;
      const Vector df = Hd.ldlt().solve(-gf);
      if (!df.allFinite()) continue;
      Scalar step = 1.0;
      for (int ls = 0; ls < 20; ++ls) {
        xn = x;
        for (Eigen::Index k = 0; k < nf; ++k) xn[free_idx[k]] += step * df[k];
        xn = project(p, xn);
        if (al.eval(xn, nullptr, nullptr) < fx && xn != x) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
    }
    if (!accepted) break;
    x = xn;
  }
  return x;
}

}  // namespace

NlpResult minimize(const NlpProblem& problem, const Vector& x0, const NlpOptions& opts) {
  if (x0.size() != problem.dim) throw std::invalid_argument("minimize: x0 size mismatch");
  if (problem.precond.size() == x0.size()) {
    // Solve in scaled variables xs = s .* x with s = sqrt(precond).
    const Vector s = problem.precond.cwiseSqrt();
    if (s.minCoeff() <= 0.0) throw std::invalid_argument("minimize: precond must be positive");
    NlpProblem scaled = problem;
    scaled.precond.resize(0);
    scaled.objective = [&problem, s](const Vector& xs, Vector* grad) {
      const Scalar f = problem.objective(xs.cwiseQuotient(s), grad);
      if (grad) *grad = grad->cwiseQuotient(s);
      return f;
    };
    if (problem.constraints) {
      scaled.constraints = [&problem, s](const Vector& xs, Vector& c) {
        problem.constraints(xs.cwiseQuotient(s), c);
      };
    }
    if (problem.constraint_jtv) {
      scaled.constraint_jtv = [&problem, s](const Vector& xs, const Vector& y, Vector& jtv) {
        problem.constraint_jtv(xs.cwiseQuotient(s), y, jtv);
        jtv = jtv.cwiseQuotient(s);
      };
    }
    if (problem.lower.size() == x0.size()) scaled.lower = problem.lower.cwiseProduct(s);
    if (problem.upper.size() == x0.size()) scaled.upper = problem.upper.cwiseProduct(s);
    NlpResult result = minimize(scaled, x0.cwiseProduct(s), opts);
    result.x = result.x.cwiseQuotient(s);
    return result;
  }
  Vector x = project(problem, x0);
  {
    const Scalar f0 = problem.objective(x, nullptr);
    if (!std::isfinite(f0)) throw std::invalid_argument("minimize: non-finite objective at x0");
  }

  AugLag al{problem,
            opts.initial_multipliers.size() == problem.num_constraints
                ? opts.initial_multipliers
                : Vector::Zero(problem.num_constraints),
            opts.initial_penalty};
  NlpResult result;
  result.x = x;

  Scalar best_viol = kInf;
  Scalar prev_viol = kInf;
  Vector c(problem.num_constraints);
  for (int outer = 0; outer < opts.max_outer; ++outer) {
    const Scalar inner_tol =
        std::max(opts.gradient_tol, 1e-2 * std::pow(0.2, outer));
    InnerResult inner = projected_lbfgs(problem, al, x, inner_tol, opts.max_inner,
                                        opts.lbfgs_memory);
    x = inner.x;
    result.inner_iterations += inner.iterations;
    result.outer_iterations = outer + 1;
    result.gradient_norm = inner.pg_norm;

    Scalar viol = 0.0;
    if (problem.num_constraints > 0) {
      problem.constraints(x, c);
      viol = c.lpNorm<Eigen::Infinity>();
    }
    if (problem.num_constraints > 0 && viol <= opts.constraint_tol &&
        inner.pg_norm > opts.gradient_tol) {
      const Vector xp = newton_polish(problem, al, x, opts.gradient_tol, 8);
      Vector cp(problem.num_constraints), g;
      problem.constraints(xp, cp);
      const Scalar viol_p = cp.lpNorm<Eigen::Infinity>();
      al.eval(xp, &g, nullptr);
      const Scalar pg_p = (project(problem, xp - g) - xp).lpNorm<Eigen::Infinity>();
      // Keep the polished point only when it is an all-round improvement.
      if (viol_p <= opts.constraint_tol && pg_p < inner.pg_norm) {
        x = xp;
        c = cp;
        viol = viol_p;
        inner.pg_norm = pg_p;
        result.gradient_norm = pg_p;
      }
    }
    if (viol <= best_viol) {
      best_viol = viol;
      result.x = x;
      result.constraint_violation = viol;
    }
    if (viol <= opts.constraint_tol && inner.pg_norm <= opts.gradient_tol) {
      result.converged = true;
      result.x = x;
      result.constraint_violation = viol;
      break;
    }
    if (problem.num_constraints > 0) {
      // Multiplier update only on sufficient violation decrease; otherwise
      // raise the penalty (capped) and retry with the same multipliers.
      if (viol <= 0.25 * prev_viol || viol <= opts.constraint_tol) {
        al.multipliers += al.mu * c;
        prev_viol = viol;
      } else {
        al.mu = std::min(al.mu * opts.penalty_growth, Scalar(1e10));
      }
    } else if (inner.pg_norm <= opts.gradient_tol) {
      result.converged = true;
      result.x = x;
      break;
    }
  }
  result.objective = problem.objective(result.x, nullptr);
  result.multipliers = al.multipliers;
  return result;
}

}  // namespace phasectl
