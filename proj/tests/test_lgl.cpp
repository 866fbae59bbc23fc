#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "phasectl/lgl.hpp"

using namespace phasectl;

TEST_CASE("N=2 grid is the classical 3-point Lobatto rule") {
  const LglGrid g = lgl_grid(2);
  REQUIRE(g.size() == 3);
  CHECK(g.nodes[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(g.nodes[1]) < 1e-14);
  CHECK(g.nodes[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(g.weights[0] - 1.0 / 3.0) < 1e-14);
  CHECK(std::abs(g.weights[1] - 4.0 / 3.0) < 1e-14);
  CHECK(std::abs(g.weights[2] - 1.0 / 3.0) < 1e-14);
}

TEST_CASE("N=4 interior nodes are 0 and +-sqrt(3/7)") {
  const LglGrid g = lgl_grid(4);
  CHECK(std::abs(g.nodes[1] + std::sqrt(3.0 / 7.0)) < 1e-13);
  CHECK(std::abs(g.nodes[2]) < 1e-13);
  CHECK(std::abs(g.nodes[3] - std::sqrt(3.0 / 7.0)) < 1e-13);
}

TEST_CASE("weights sum to 2 and the grid is symmetric") {
  for (int N : {2, 3, 4, 8, 16, 33, 64}) {
    const LglGrid g = lgl_grid(N);
    CHECK(std::abs(g.weights.sum() - 2.0) < 1e-13);
    for (int j = 0; j <= N; ++j) {
      CHECK(std::abs(g.nodes[j] + g.nodes[N - j]) < 1e-13);
      CHECK(std::abs(g.weights[j] - g.weights[N - j]) < 1e-13);
    }
    for (int j = 1; j <= N; ++j) CHECK(g.nodes[j] > g.nodes[j - 1]);
  }
}

TEST_CASE("quadrature is exact on monomials up to degree 2N-1") {
  for (int N : {4, 8, 16}) {
    const LglGrid g = lgl_grid(N);
    for (int k = 0; k <= 2 * N - 1; ++k) {
      Vector samples(N + 1);
      for (int j = 0; j <= N; ++j) samples[j] = std::pow(g.nodes[j], k);
      const Scalar exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(lgl_quadrature(g, samples) - exact) < 1e-13);
    }
  }
}

TEST_CASE("quadrature of cos matches the antiderivative") {
  const LglGrid g = lgl_grid(16);
  Vector samples(17);
  for (int j = 0; j <= 16; ++j) samples[j] = std::cos(g.nodes[j]);
  CHECK(std::abs(lgl_quadrature(g, samples) - 2.0 * std::sin(1.0)) < 1e-12);
}

TEST_CASE("differentiation matrix annihilates constants and is exact on monomials") {
  for (int N : {2, 5, 16, 40, 64}) {
    const LglGrid g = lgl_grid(N);
    for (int j = 0; j <= N; ++j) CHECK(std::abs(g.D.row(j).sum()) < 1e-12);
    for (int k = 1; k <= N; ++k) {
      Vector samples(N + 1), dsamples(N + 1);
      for (int j = 0; j <= N; ++j) {
        samples[j] = std::pow(g.nodes[j], k);
        dsamples[j] = k * std::pow(g.nodes[j], k - 1);
      }
      const Vector got = g.D * samples;
      CHECK((got - dsamples).lpNorm<Eigen::Infinity>() < 1e-10);
    }
  }
}

TEST_CASE("interpolation reproduces nodal values and low-degree polynomials") {
  const LglGrid g = lgl_grid(12);
  Vector samples(13);
  for (int j = 0; j <= 12; ++j) {
    const Scalar t = g.nodes[j];
    samples[j] = 1.0 + t - 2.0 * t * t + 0.5 * t * t * t;
  }
  for (int j = 0; j <= 12; ++j) {
    CHECK(interpolate(g, samples, g.nodes[j]) == doctest::Approx(samples[j]).epsilon(1e-14));
  }
  for (Scalar t = -1.0; t <= 1.0; t += 0.05) {
    const Scalar exact = 1.0 + t - 2.0 * t * t + 0.5 * t * t * t;
    CHECK(std::abs(interpolate(g, samples, t) - exact) < 1e-12);
  }
}

TEST_CASE("legendre polynomial values at known points") {
  // L_2(x) = (3x^2 - 1)/2, L_2'(x) = 3x
  auto [v, d] = legendre_with_derivative(2, 0.5);
  CHECK(v == doctest::Approx((3 * 0.25 - 1) / 2).epsilon(1e-14));
  CHECK(d == doctest::Approx(1.5).epsilon(1e-14));
  // L_N(1) = 1 for all N
  for (int N : {3, 7, 20}) {
    CHECK(legendre_with_derivative(N, 1.0).first == doctest::Approx(1.0).epsilon(1e-13));
  }
}
