#pragma once

#include "phasectl/types.hpp"

namespace phasectl {

/// Legendre-Gauss-Lobatto collocation grid on [-1, 1]: endpoints plus the
/// roots of L_N', quadrature weights, and the differentiation matrix.
struct LglGrid {
  int N = 0;       // polynomial order; N+1 nodes
  Vector nodes;    // ascending, nodes[0] = -1, nodes[N] = 1
  Vector weights;  // w_j = 2 / (N(N+1) L_N(t_j)^2)
  Matrix D;        // (N+1) x (N+1) differentiation matrix

  Eigen::Index size() const { return nodes.size(); }
};

/// Builds the grid; nodes found by Newton iteration on L_N' to 1e-14.
LglGrid lgl_grid(int N);

/// Legendre polynomial L_N and its derivative at x.
std::pair<Scalar, Scalar> legendre_with_derivative(int N, Scalar x);

/// Gauss-Lobatto quadrature of nodal samples: sum w_j f_j. Exact for
/// polynomials of degree <= 2N-1.
Scalar lgl_quadrature(const LglGrid& grid, const Vector& samples);

/// Barycentric Lagrange evaluation of the interpolant through the nodal
/// values at a query point in [-1, 1].
Scalar interpolate(const LglGrid& grid, const Vector& nodal_values, Scalar t);

/// Barycentric weights of the grid (normalized).
Vector barycentric_weights(const LglGrid& grid);

}  // namespace phasectl
