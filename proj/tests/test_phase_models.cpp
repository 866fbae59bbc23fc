#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "phasectl/integrate.hpp"
#include "phasectl/phase_model.hpp"
#include "phasectl/quadrature.hpp"

using namespace phasectl;

TEST_CASE("closed-form free evolution has period pi/sqrt(I)") {
  for (Scalar I : {0.25, 0.3, 0.9, 100.0}) {
    const Scalar T0 = kPi / std::sqrt(I);
    CHECK(free_evolution_theta(I, T0) == doctest::Approx(kTwoPi).epsilon(1e-10));
    // Advancing by one period adds exactly one revolution.
    CHECK(free_evolution_theta(I, 1.7 * T0) - free_evolution_theta(I, 0.7 * T0) ==
          doctest::Approx(kTwoPi).epsilon(1e-10));
  }
  // I = 100: two revolutions over 2 T0 = pi/5.
  CHECK(free_evolution_theta(100.0, kPi / 5.0) == doctest::Approx(2.0 * kTwoPi).epsilon(1e-10));
}

TEST_CASE("free evolution is continuous and increasing") {
  const Scalar I = 0.3;
  Scalar prev = free_evolution_theta(I, 0.0);
  CHECK(prev == doctest::Approx(0.0).epsilon(1e-12));
  for (int k = 1; k <= 2000; ++k) {
    const Scalar cur = free_evolution_theta(I, 0.01 * k);
    CHECK(cur > prev);
    CHECK(cur - prev < 0.1);  // no branch jumps
    prev = cur;
  }
}

TEST_CASE("free evolution rejects non-oscillating currents") {
  CHECK_THROWS_AS(free_evolution_theta(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(free_evolution_theta(-0.5, 1.0), std::domain_error);
}

TEST_CASE("closed form agrees with the RK4 integrator") {
  const PhaseModel model = PhaseModel::theta_from_current(0.3);
  const Scalar T = kPi / std::sqrt(0.3);
  const Trajectory traj = integrate({model}, ControlSignal::zero(), T);
  CHECK(std::abs(traj.terminal_state()[0] - free_evolution_theta(0.3, T)) < 1e-8);
  CHECK(traj.terminal_state()[0] == doctest::Approx(kTwoPi).epsilon(1e-8));
}

TEST_CASE("free integration closes one revolution at the natural period") {
  const Trajectory t1 =
      integrate({PhaseModel::theta_from_current(0.25)}, ControlSignal::zero(), kTwoPi);
  CHECK(std::abs(t1.terminal_state()[0] - kTwoPi) < 1e-6);
  // Constant-drift models are integrated exactly.
  const Trajectory t2 = integrate({PhaseModel::sniper(1.0)}, ControlSignal::zero(), kTwoPi);
  CHECK(std::abs(t2.terminal_state()[0] - kTwoPi) < 1e-12);
}

TEST_CASE("constant control reaches one revolution at the quadrature time") {
  const PhaseModel model = PhaseModel::theta_from_current(0.25);
  const Scalar T = integrate_adaptive(
      [&](Scalar th) { return 1.0 / (model.f(th) + model.Z(th)); }, 0.0, kTwoPi);
  const Trajectory traj = integrate({model}, ControlSignal::constant(1.0), T);
  CHECK(std::abs(traj.terminal_state()[0] - kTwoPi) < 1e-6);
}

TEST_CASE("RK4 converges at fourth order on smooth inputs") {
  const PhaseModel model = PhaseModel::theta_from_current(0.4);
  const ControlSignal u = ControlSignal::constant(0.35);
  const Scalar T = 5.0;
  const Scalar ref =
      integrate({model}, u, T, Vector::Zero(1), T / 65536.0).terminal_state()[0];
  const Scalar e1 =
      std::abs(integrate({model}, u, T, Vector::Zero(1), T / 256.0).terminal_state()[0] - ref);
  const Scalar e2 =
      std::abs(integrate({model}, u, T, Vector::Zero(1), T / 512.0).terminal_state()[0] - ref);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("model derivative callbacks match finite differences") {
  const std::vector<PhaseModel> models = {PhaseModel::theta_from_current(0.7),
                                          PhaseModel::sniper(1.3),
                                          PhaseModel::sinusoidal(2.0, 0.8)};
  const Scalar h = 1e-6;
  for (const auto& m : models) {
    for (Scalar th = -1.0; th < 7.0; th += 0.37) {
      CHECK(std::abs(m.df(th) - (m.f(th + h) - m.f(th - h)) / (2 * h)) < 1e-8);
      CHECK(std::abs(m.dZ(th) - (m.Z(th + h) - m.Z(th - h)) / (2 * h)) < 1e-8);
    }
  }
}

TEST_CASE("spike times of a fast free neuron, including the boundary spike") {
  const Trajectory traj =
      integrate({PhaseModel::theta_from_current(100.0)}, ControlSignal::zero(), kPi / 5.0);
  const auto spikes = spike_times(traj);
  REQUIRE(spikes.size() == 1);
  REQUIRE(spikes[0].size() == 2);
  CHECK(spikes[0][0] == doctest::Approx(kPi / 10.0).epsilon(1e-6));
  CHECK(spikes[0][1] == doctest::Approx(kPi / 5.0).epsilon(1e-6));
}

TEST_CASE("no crossing of a revolution yields no spikes") {
  const Trajectory traj =
      integrate({PhaseModel::sinusoidal(1.0)}, ControlSignal::zero(), kPi);  // half period
  CHECK(spike_times(traj)[0].empty());
}

TEST_CASE("five free sinusoidal neurons spike proportionally to frequency") {
  std::vector<PhaseModel> models;
  for (int w = 1; w <= 5; ++w) models.push_back(PhaseModel::sinusoidal(w));
  const auto spikes = spike_times(integrate(models, ControlSignal::zero(), kTwoPi));
  for (int k = 0; k < 5; ++k) CHECK(static_cast<int>(spikes[k].size()) == k + 1);
}

namespace {

ControlSignal random_piecewise(std::mt19937_64& rng, Scalar M, Scalar T) {
  std::uniform_real_distribution<Scalar> unif(0.0, T);
  std::uniform_int_distribution<int> nsw(0, 5);
  SwitchingSchedule sched;
  sched.M = M;
  sched.T = T;
  sched.initial_field = (rng() & 1) ? SwitchingSchedule::Field::Y
                                    : SwitchingSchedule::Field::X;
  std::vector<Scalar> times;
  const int k = nsw(rng);
  for (int i = 0; i < k; ++i) times.push_back(unif(rng));
  std::sort(times.begin(), times.end());
  sched.switch_times = times;
  return ControlSignal::piecewise(sched);
}

void check_no_crossing(const std::vector<PhaseModel>& pair, const ControlSignal& u,
                       Scalar T) {
  const Trajectory traj = integrate(pair, u, T);
  for (Eigen::Index i = 0; i < traj.num_points(); ++i) {
    CHECK(traj.states(i, 0) <= traj.states(i, 1) + 1e-9);
  }
}

}  // namespace

TEST_CASE("ordered phases never cross under a common input") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<Scalar> iu(0.05, 3.0), wu(0.5, 4.0), mu(0.1, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Scalar I1 = iu(rng), I2 = iu(rng);
    if (I1 > I2) std::swap(I1, I2);
    if (I2 - I1 < 1e-3) I2 += 0.1;
    const Scalar T = 8.0;
    check_no_crossing({PhaseModel::theta_from_current(I1), PhaseModel::theta_from_current(I2)},
                      random_piecewise(rng, mu(rng), T), T);

    Scalar w1 = wu(rng), w2 = wu(rng);
    if (w1 > w2) std::swap(w1, w2);
    if (w2 - w1 < 1e-3) w2 += 0.1;
    // The pairwise ordering is preserved when z = 2/omega and the bound is
    // small enough that the drift difference dominates the coupling term.
    check_no_crossing({PhaseModel::sniper(w1), PhaseModel::sniper(w2)},
                      random_piecewise(rng, 0.9 * w1 * w2 / 4.0, T), T);
    check_no_crossing({PhaseModel::sinusoidal(w1), PhaseModel::sinusoidal(w2)},
                      random_piecewise(rng, 0.9 * w1 * w2 / 2.0, T), T);
  }
}

TEST_CASE("trajectory CSV format") {
  const Trajectory traj = integrate({PhaseModel::theta_from_current(0.25),
                                     PhaseModel::theta_from_current(0.5)},
                                    ControlSignal::constant(0.1), 1.0, Vector::Zero(2), 0.25);
  std::ostringstream os;
  write_csv(traj, os);
  const std::string text = os.str();
  CHECK(text.rfind("t,theta_1,theta_2,u\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(traj.num_points()) + 1);
}

TEST_CASE("switch instants land exactly on the integration grid") {
  SwitchingSchedule sched;
  sched.initial_field = SwitchingSchedule::Field::Y;
  sched.M = 0.5;
  sched.T = 2.0;
  sched.switch_times = {0.333333333333};  // not a multiple of the step
  const Trajectory traj = integrate({PhaseModel::theta_from_current(0.25)},
                                    ControlSignal::piecewise(sched), 2.0, Vector::Zero(1), 0.125);
  bool found = false;
  for (Eigen::Index i = 0; i < traj.num_points(); ++i) {
    if (std::abs(traj.times[i] - 0.333333333333) < 1e-12) found = true;
  }
  CHECK(found);
}
