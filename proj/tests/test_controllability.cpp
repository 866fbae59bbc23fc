#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "phasectl/controllability.hpp"

using namespace phasectl;

namespace {

using ScalarFn = std::function<Scalar(Scalar)>;

// h large enough that depth-4 nesting (noise ~ eps/h^4) stays below the
// truncation error instead of swamping it.
Scalar derivative5(const ScalarFn& g, Scalar x, Scalar h = 1e-2) {
  return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
}

// Each component of the drift and the control field depends only on its own
// phase, so the iterated bracket reduces to a per-component scalar recursion
// b_{k} = b_{k-1}' f - f' b_{k-1}, evaluated here by nested finite differences.
Scalar bracket_fd(const PhaseModel& m, Scalar theta, int k) {
  ScalarFn b = [&m](Scalar t) { return m.Z(t); };
  for (int j = 0; j < k; ++j) {
    ScalarFn prev = b;
    b = [&m, prev](Scalar t) {
      return derivative5(prev, t) * m.f(t) - m.df(t) * prev(t);
    };
  }
  return b(theta);
}

}  // namespace

TEST_CASE("first bracket of the theta model is 2 sin(theta)") {
  const std::vector<PhaseModel> models = {PhaseModel::theta_from_current(0.3),
                                          PhaseModel::theta_from_current(0.9)};
  Vector theta(2);
  theta << 0.7, 2.1;
  const Vector b = bracket_eval(models, theta, 1);
  CHECK(b[0] == doctest::Approx(2.0 * std::sin(0.7)).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(2.0 * std::sin(2.1)).epsilon(1e-12));
}

TEST_CASE("odd brackets vanish at the origin") {
  const std::vector<PhaseModel> theta_pair = {PhaseModel::theta_from_current(0.3),
                                              PhaseModel::theta_from_current(0.9)};
  const Vector zero = Vector::Zero(2);
  for (int k : {1, 3, 5}) {
    CHECK(bracket_eval(theta_pair, zero, k).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("order zero returns the control field itself") {
  const std::vector<PhaseModel> models = {PhaseModel::sinusoidal(2.0, 0.7)};
  Vector theta(1);
  theta << 1.1;
  CHECK(bracket_eval(models, theta, 0)[0] ==
        doctest::Approx(0.7 * std::sin(1.1)).epsilon(1e-12));
}

TEST_CASE("closed-form brackets match nested finite differences") {
  const std::vector<std::vector<PhaseModel>> families = {
      {PhaseModel::theta_from_current(0.25), PhaseModel::theta_from_current(1.7)},
      {PhaseModel::sniper(0.8), PhaseModel::sniper(2.3)},
      {PhaseModel::sinusoidal(1.1), PhaseModel::sinusoidal(3.0)}};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<Scalar> unif(0.3, 5.9);
  for (const auto& models : families) {
    for (int trial = 0; trial < 5; ++trial) {
      Vector theta(2);
      theta << unif(rng), unif(rng);
      for (int k = 1; k <= 4; ++k) {
        const Vector closed = bracket_eval(models, theta, k);
        for (int i = 0; i < 2; ++i) {
          const Scalar fd = bracket_fd(models[i], theta[i], k);
          const Scalar scale = std::max(std::abs(fd), Scalar(1.0));
          CHECK(std::abs(closed[i] - fd) / scale < 1e-4);
        }
      }
    }
  }
}

TEST_CASE("mixed model kinds are rejected") {
  const std::vector<PhaseModel> mixed = {PhaseModel::theta_from_current(0.3),
                                         PhaseModel::sniper(1.0)};
  Vector theta = Vector::Zero(2);
  CHECK_THROWS(bracket_eval(mixed, theta, 1));
}

TEST_CASE("distinct-frequency pairs span the plane") {
  const std::vector<PhaseModel> models = {PhaseModel::theta_from_current(0.3),
                                          PhaseModel::theta_from_current(0.9)};
  Vector theta(2);
  theta << 1.0, 2.0;
  const RankReport report = rank_test(models, theta);
  CHECK(report.rank == 2);
  CHECK(report.spans);
}

TEST_CASE("identical models at a common phase collapse the rank") {
  // Two indistinguishable neurons started together stay together; every
  // bracket row has equal components, so the span is one-dimensional.
  const std::vector<PhaseModel> models = {PhaseModel::theta_from_current(0.5),
                                          PhaseModel::theta_from_current(0.5)};
  Vector theta(2);
  theta << 0.4, 0.4;
  const RankReport report = rank_test(models, theta);
  CHECK(report.rank == 1);
  CHECK_FALSE(report.spans);
}

TEST_CASE("three distinct sinusoidal frequencies span R^3") {
  const std::vector<PhaseModel> models = {PhaseModel::sinusoidal(1.0),
                                          PhaseModel::sinusoidal(2.0),
                                          PhaseModel::sinusoidal(3.0)};
  Vector theta(3);
  theta << 0.1, 0.2, 0.3;
  const RankReport report = rank_test(models, theta);
  CHECK(report.rank == 3);
  CHECK(report.spans);
}

TEST_CASE("rank test passes at the origin via the even brackets") {
  const std::vector<PhaseModel> models = {PhaseModel::theta_from_current(0.3),
                                          PhaseModel::theta_from_current(0.9)};
  const RankReport report = rank_test(models, Vector::Zero(2));
  CHECK(report.spans);
}

TEST_CASE("near-duplicate frequencies emit a warning") {
  const std::vector<PhaseModel> models = {PhaseModel::sniper(1.0),
                                          PhaseModel::sniper(1.0 + 1e-8)};
  Vector theta(2);
  theta << 1.0, 2.0;
  const RankReport report = rank_test(models, theta);
  CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("report serialization carries the verdict") {
  const std::vector<PhaseModel> models = {PhaseModel::theta_from_current(0.3),
                                          PhaseModel::theta_from_current(0.9)};
  Vector theta(2);
  theta << 1.0, 2.0;
  const std::string json = rank_report_json(rank_test(models, theta));
  CHECK(json.find("\"spans\": true") != std::string::npos);
  CHECK(json.find("\"rank\": 2") != std::string::npos);
}
