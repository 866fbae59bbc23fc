#pragma once

#include <functional>

#include "phasectl/types.hpp"

namespace phasectl {

/// Smooth equality-constrained minimization problem with optional box
/// bounds. Gradients are analytic callbacks; when absent, central finite
/// differences are used.
struct NlpProblem {
  int dim = 0;
  int num_constraints = 0;

  /// Objective value; fills *grad when non-null.
  std::function<Scalar(const Vector& x, Vector* grad)> objective;
  /// Equality constraints c(x) (size num_constraints).
  std::function<void(const Vector& x, Vector& c)> constraints;
  /// Jacobian-transpose product J(x)^T y; optional (finite-difference fallback).
  std::function<void(const Vector& x, const Vector& y, Vector& jtv)> constraint_jtv;

  Vector lower;  // empty -> unbounded
  Vector upper;

  /// Optional positive diagonal metric (squared variable scales). When set,
  /// the solver works in scaled variables x_i * sqrt(precond_i); convergence
  /// tests apply in the scaled space. Greatly helps when column norms of the
  /// constraint Jacobian span orders of magnitude.
  Vector precond;
};

struct NlpOptions {
  Scalar constraint_tol = 1e-7;
  Scalar gradient_tol = 1e-6;
  int max_outer = 60;
  int max_inner = 4000;
  Scalar initial_penalty = 10.0;
  Scalar penalty_growth = 10.0;
  int lbfgs_memory = 12;
  /// Warm-start Lagrange multipliers (size num_constraints); empty -> zeros.
  /// Useful when continuing a solve from a nearby problem.
  Vector initial_multipliers;
};

struct NlpResult {
  Vector x;
  Scalar objective = 0.0;
  Scalar constraint_violation = 0.0;  // infinity norm
  Scalar gradient_norm = kInf;        // projected-gradient infinity norm at exit
  Vector multipliers;  // final Lagrange multiplier estimates
  int outer_iterations = 0;
  long inner_iterations = 0;
  bool converged = false;
};

/// Augmented-Lagrangian outer loop with a projected L-BFGS inner solver.
NlpResult minimize(const NlpProblem& problem, const Vector& x0,
                   const NlpOptions& opts = {});

}  // namespace phasectl
