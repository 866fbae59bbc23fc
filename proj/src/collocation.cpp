#include "phasectl/collocation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "phasectl/json_util.hpp"

namespace phasectl {

CollocationProblem make_collocation(std::vector<PhaseModel> models, Scalar T,
                                    const std::vector<int>& windings, int N,
                                    Scalar w_term, Scalar w_energy, Scalar amplitude,
                                    bool hard_terminal) {
  if (models.size() != windings.size()) {
    throw std::invalid_argument("make_collocation: model/target count mismatch");
  }
  CollocationProblem prob;
  prob.grid = lgl_grid(N);
  prob.models = std::move(models);
  prob.T = T;
  prob.target.resize(static_cast<Eigen::Index>(windings.size()));
  for (size_t i = 0; i < windings.size(); ++i) prob.target[i] = kTwoPi * windings[i];
  prob.w_term = w_term;
  prob.w_energy = w_energy;
  prob.amplitude = amplitude;
  prob.hard_terminal = hard_terminal;
  return prob;
}

Vector dynamics_residual(const CollocationProblem& prob, const Matrix& theta_nodes,
                         const Vector& u_nodes) {
  const int N = prob.grid.N;
  const int n = prob.n();
  Vector res(static_cast<Eigen::Index>(n) * (N + 1));
  const Matrix dtheta = prob.grid.D * theta_nodes;  // (N+1) x n
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= N; ++j) {
      const Scalar th = theta_nodes(j, i);
      res[static_cast<Eigen::Index>(i) * (N + 1) + j] =
          dtheta(j, i) -
          0.5 * prob.T * (prob.models[i].f(th) + u_nodes[j] * prob.models[i].Z(th));
    }
  }
  return res;
}

NlpProblem transcribe(const CollocationProblem& prob) {
  const int N = prob.grid.N;
  const int n = prob.n();
  const Eigen::Index dim = prob.dim();
  const Eigen::Index m_dyn = static_cast<Eigen::Index>(n) * (N + 1);
  const Eigen::Index m = m_dyn + n + (prob.hard_terminal ? n : 0);

  NlpProblem nlp;
  nlp.dim = static_cast<int>(dim);
  nlp.num_constraints = static_cast<int>(m);

  const CollocationProblem p = prob;  // captured by value; grids are small

  nlp.objective = [p, N, n](const Vector& x, Vector* grad) {
    Scalar val = 0.0;
    if (grad) grad->setZero(x.size());
    if (p.w_term != 0.0) {
      for (int i = 0; i < n; ++i) {
        const Scalar e = x[p.theta_index(N, i)] - p.target[i];
        val += p.w_term * e * e;
        if (grad) (*grad)[p.theta_index(N, i)] += 2.0 * p.w_term * e;
      }
    }
    if (p.w_energy != 0.0) {
      for (int j = 0; j <= N; ++j) {
        const Scalar u = x[p.u_index(j)];
        val += p.w_energy * 0.5 * p.T * p.grid.weights[j] * u * u;
        if (grad) (*grad)[p.u_index(j)] += p.w_energy * p.T * p.grid.weights[j] * u;
      }
    }
    return val;
  };

  // Dynamics rows are scaled by sqrt(w_j): keeps the residual integral-like
  // so the penalty Hessian stays well conditioned at large N.
  nlp.constraints = [p, N, n, m_dyn](const Vector& x, Vector& c) {
    c.resize(p.hard_terminal ? m_dyn + 2 * n : m_dyn + n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= N; ++j) {
        Scalar d = 0.0;
        for (int k = 0; k <= N; ++k) d += p.grid.D(j, k) * x[p.theta_index(k, i)];
        const Scalar th = x[p.theta_index(j, i)];
        const Scalar u = x[p.u_index(j)];
        c[static_cast<Eigen::Index>(i) * (N + 1) + j] =
            std::sqrt(p.grid.weights[j]) *
            (d - 0.5 * p.T * (p.models[i].f(th) + u * p.models[i].Z(th)));
      }
    }
    for (int i = 0; i < n; ++i) c[m_dyn + i] = x[p.theta_index(0, i)];
    if (p.hard_terminal) {
      for (int i = 0; i < n; ++i) {
        c[m_dyn + n + i] = x[p.theta_index(N, i)] - p.target[i];
      }
    }
  };

  nlp.constraint_jtv = [p, N, n, m_dyn](const Vector& x, const Vector& y, Vector& out) {
    out.setZero(x.size());
    for (int i = 0; i < n; ++i) {
      const Eigen::Index base = static_cast<Eigen::Index>(i) * (N + 1);
      for (int j = 0; j <= N; ++j) {
        const Scalar yij = std::sqrt(p.grid.weights[j]) * y[base + j];
        if (yij == 0.0) continue;
        // Differentiation-matrix part: d c_{ij} / d theta_{ki} = D(j, k).
        for (int k = 0; k <= N; ++k) {
          out[p.theta_index(k, i)] += yij * p.grid.D(j, k);
        }
        const Scalar th = x[p.theta_index(j, i)];
        const Scalar u = x[p.u_index(j)];
        out[p.theta_index(j, i)] -=
            yij * 0.5 * p.T * (p.models[i].df(th) + u * p.models[i].dZ(th));
        out[p.u_index(j)] -= yij * 0.5 * p.T * p.models[i].Z(th);
      }
    }
    for (int i = 0; i < n; ++i) out[p.theta_index(0, i)] += y[m_dyn + i];
    if (p.hard_terminal) {
      for (int i = 0; i < n; ++i) out[p.theta_index(N, i)] += y[m_dyn + n + i];
    }
  };

  if (std::isfinite(prob.amplitude)) {
    nlp.lower = Vector::Constant(dim, -kInf);
    nlp.upper = Vector::Constant(dim, kInf);
    for (int j = 0; j <= N; ++j) {
      nlp.lower[prob.u_index(j)] = -prob.amplitude;
      nlp.upper[prob.u_index(j)] = prob.amplitude;
    }
  }

  // Diagonal metric approximating the Gauss-Newton diagonal of the penalty
  // term, so theta columns (differentiation-matrix scale) and control columns
  // (order-one scale) are comparable for the quasi-Newton inner solver.
  nlp.precond.resize(dim);
  Vector colD = Vector::Zero(N + 1);
  for (int k = 0; k <= N; ++k) {
    for (int j = 0; j <= N; ++j) {
      colD[k] += prob.grid.weights[j] * prob.grid.D(j, k) * prob.grid.D(j, k);
    }
  }
  Scalar zsq = 0.0;
  for (int i = 0; i < n; ++i) {
    switch (prob.models[i].kind) {
      case ModelKind::Theta: zsq += 4.0; break;
      case ModelKind::Sniper: zsq += 4.0 * prob.models[i].z * prob.models[i].z; break;
      case ModelKind::Sinusoidal: zsq += prob.models[i].z * prob.models[i].z; break;
    }
    for (int k = 0; k <= N; ++k) {
      Scalar pk = colD[k];
      if (k == 0) pk += 1.0;
      if (k == N && prob.hard_terminal) pk += 1.0;
      if (k == N && prob.w_term != 0.0) pk += 2.0 * prob.w_term;
      nlp.precond[prob.theta_index(k, i)] = pk;
    }
  }
  for (int j = 0; j <= N; ++j) {
    nlp.precond[prob.u_index(j)] =
        prob.grid.weights[j] *
        (prob.w_energy * prob.T + 0.25 * prob.T * prob.T * zsq);
  }
  return nlp;
}

namespace {

Vector ramp_guess(const CollocationProblem& prob) {
  const int N = prob.grid.N;
  const int n = prob.n();
  Vector x = Vector::Zero(prob.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= N; ++j) {
      x[prob.theta_index(j, i)] = prob.target[i] * 0.5 * (prob.grid.nodes[j] + 1.0);
    }
  }
  return x;
}

}  // namespace

EnsembleReport solve_ensemble(const CollocationProblem& prob, const EnsembleOptions& opts) {
  const NlpProblem nlp = transcribe(prob);
  const int N = prob.grid.N;
  const int n = prob.n();

  const Vector x0 = ramp_guess(prob);
  NlpResult best = minimize(nlp, x0, opts.nlp);

  // Tight amplitude bounds put long saturated arcs in the optimum, which the
  // cold-started solve handles poorly; continue in the bound from the
  // unconstrained optimum instead.
  if (!best.converged && std::isfinite(prob.amplitude)) {
    CollocationProblem relaxed = prob;
    relaxed.amplitude = kInf;
    NlpResult stage = minimize(transcribe(relaxed), x0, opts.nlp);
    Scalar umax = 0.0;
    for (int j = 0; j <= N; ++j) umax = std::max(umax, std::abs(stage.x[prob.u_index(j)]));
    if (stage.constraint_violation <= best.constraint_violation && umax > prob.amplitude) {
      // Halve the gap to the target bound each step: near-critical bounds
      // need a dense tail, since the solution turns increasingly bang-bang.
      NlpOptions warm = opts.nlp;
      Scalar gap = umax - prob.amplitude;
      while (gap > 1e-3 * prob.amplitude) {
        gap *= 0.5;
        relaxed.amplitude = prob.amplitude + gap;
        warm.initial_multipliers = stage.multipliers;
        stage = minimize(transcribe(relaxed), stage.x, warm);
      }
      relaxed.amplitude = prob.amplitude;
      warm.initial_multipliers = stage.multipliers;
      stage = minimize(transcribe(relaxed), stage.x, warm);
      if (stage.converged || stage.constraint_violation < best.constraint_violation) {
        best = stage;
      }
    }
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<Scalar> noise(0.0, 1.0);
  for (int attempt = 0; attempt < opts.multistarts && !best.converged; ++attempt) {
    Vector x = x0;
    const Scalar scale =
        std::isfinite(prob.amplitude) ? 0.3 * prob.amplitude : 0.5;
    for (int j = 0; j <= N; ++j) x[prob.u_index(j)] += scale * noise(rng);
    const NlpResult r = minimize(nlp, x, opts.nlp);
    if (r.converged ||
        (!best.converged && r.constraint_violation < best.constraint_violation)) {
      best = r;
    }
  }

  EnsembleReport report;
  report.nlp = best;
  report.theta_nodes.resize(N + 1, n);
  report.u_nodes.resize(N + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= N; ++j) report.theta_nodes(j, i) = best.x[prob.theta_index(j, i)];
  }
  for (int j = 0; j <= N; ++j) report.u_nodes[j] = best.x[prob.u_index(j)];
  report.node_times = 0.5 * prob.T * (prob.grid.nodes.array() + 1.0);
  report.energy = 0.5 * prob.T * prob.grid.weights.dot(report.u_nodes.cwiseAbs2());

  report.control = ControlSignal::sampled(report.node_times, report.u_nodes, N,
                                          prob.amplitude);
  const Trajectory traj = integrate(prob.models, report.control, prob.T);
  report.oracle_terminal = traj.terminal_state();
  report.max_target_error = (report.oracle_terminal - prob.target).cwiseAbs().maxCoeff();
  return report;
}

std::string ensemble_report_json(const CollocationProblem& prob,
                                 const EnsembleReport& report) {
  nlohmann::json j;
  nlohmann::json models = nlohmann::json::array();
  for (const auto& m : prob.models) {
    models.push_back({{"kind", to_string(m.kind)},
                      {"omega", json_num(m.omega)},
                      {"I", json_num(m.I)},
                      {"z", json_num(m.z)}});
  }
  j["models"] = models;
  j["T"] = json_num(prob.T);
  j["N"] = prob.grid.N;
  j["target"] = json_vec(prob.target);
  j["w_term"] = json_num(prob.w_term);
  j["w_energy"] = json_num(prob.w_energy);
  j["amplitude"] =
      std::isfinite(prob.amplitude) ? json_num(prob.amplitude) : nlohmann::json(nullptr);
  j["hard_terminal"] = prob.hard_terminal;
  j["converged"] = report.nlp.converged;
  j["constraint_violation"] = json_num(report.nlp.constraint_violation);
  j["objective"] = json_num(report.nlp.objective);
  j["energy"] = json_num(report.energy);
  j["oracle_terminal"] = json_vec(report.oracle_terminal);
  j["max_target_error"] = json_num(report.max_target_error);
  j["u_nodes"] = json_vec(report.u_nodes);
  j["node_times"] = json_vec(report.node_times);
  return j.dump(2);
}

}  // namespace phasectl
