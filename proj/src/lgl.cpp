#include "phasectl/lgl.hpp"

#include <cmath>
#include <stdexcept>

namespace phasectl {

std::pair<Scalar, Scalar> legendre_with_derivative(int N, Scalar x) {
  Scalar p0 = 1.0, p1 = x;
  if (N == 0) return {1.0, 0.0};
  for (int k = 2; k <= N; ++k) {
    const Scalar p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  // L_N'(x) = N (x L_N - L_{N-1}) / (x^2 - 1), valid away from +-1.
  Scalar dp;
  if (std::abs(x * x - 1.0) < 1e-12) {
    dp = (x > 0 ? 1.0 : (N % 2 == 0 ? -1.0 : 1.0)) * 0.5 * N * (N + 1.0);
  } else {
    dp = N * (x * p1 - p0) / (x * x - 1.0);
  }
  return {p1, dp};
}

LglGrid lgl_grid(int N) {
  if (N < 2) throw std::invalid_argument("lgl_grid: N must be >= 2");
  LglGrid grid;
  grid.N = N;
  grid.nodes.resize(N + 1);
  grid.nodes[0] = -1.0;
  grid.nodes[N] = 1.0;

  // Interior nodes: roots of L_N', Newton from Chebyshev-Gauss-Lobatto guesses.
  for (int j = 1; j < N; ++j) {
    Scalar x = -std::cos(kPi * j / N);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(N, x);
      // Newton on L_N'; L_N'' from the Legendre ODE.
      const Scalar d2p = (2.0 * x * dp - N * (N + 1.0) * p) / (1.0 - x * x);
      const Scalar dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-14) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("lgl_grid: Newton iteration did not converge");
    grid.nodes[j] = x;
  }
  // Enforce exact symmetry.
  for (int j = 0; j <= N / 2; ++j) {
    const Scalar v = 0.5 * (grid.nodes[N - j] - grid.nodes[j]);
    grid.nodes[j] = -v;
    grid.nodes[N - j] = v;
  }

  grid.weights.resize(N + 1);
  Vector lvals(N + 1);
  for (int j = 0; j <= N; ++j) {
    lvals[j] = legendre_with_derivative(N, grid.nodes[j]).first;
    grid.weights[j] = 2.0 / (N * (N + 1.0) * lvals[j] * lvals[j]);
  }

  grid.D = Matrix::Zero(N + 1, N + 1);
  for (int j = 0; j <= N; ++j) {
    for (int k = 0; k <= N; ++k) {
      if (j != k) {
        grid.D(j, k) = (lvals[j] / lvals[k]) / (grid.nodes[j] - grid.nodes[k]);
      }
    }
  }
  // Negative-sum diagonal: enforces exact annihilation of constants, which
  // is tighter than the analytic corner values +-N(N+1)/4 in floating point.
  for (int j = 0; j <= N; ++j) grid.D(j, j) = -grid.D.row(j).sum();
  return grid;
}

Scalar lgl_quadrature(const LglGrid& grid, const Vector& samples) {
  if (samples.size() != grid.size()) {
    throw std::invalid_argument("lgl_quadrature: sample length mismatch");
  }
  return grid.weights.dot(samples);
}

Vector barycentric_weights(const LglGrid& grid) {
  const auto n = grid.size();
  Vector w(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Scalar v = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != j) v /= (grid.nodes[j] - grid.nodes[k]);
    }
    w[j] = v;
  }
  return w / w.cwiseAbs().maxCoeff();
}

Scalar interpolate(const LglGrid& grid, const Vector& nodal_values, Scalar t) {
  if (nodal_values.size() != grid.size()) {
    throw std::invalid_argument("interpolate: nodal value length mismatch");
  }
  const Vector w = barycentric_weights(grid);
  Scalar num = 0.0, den = 0.0;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const Scalar d = t - grid.nodes[j];
    if (std::abs(d) < 1e-15) return nodal_values[j];
    const Scalar q = w[j] / d;
    num += q * nodal_values[j];
    den += q;
  }
  return num / den;
}

}  // namespace phasectl
