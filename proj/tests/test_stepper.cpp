#include <doctest.h>

#include <cmath>
#include <random>

#include "ntiu/errors.hpp"
#include "ntiu/stencil.hpp"
#include "ntiu/stepper.hpp"

using namespace ntiu;
using doctest::Approx;

namespace {

StepperConfig tight_cfg(double dt) {
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.picard_tol = 1e-13;
  cfg.picard_max = 200;
  cfg.krylov_tol = 1e-13;
  cfg.krylov_max = 1000;
  return cfg;
}

}  // namespace

TEST_CASE("cn_system_apply: identity, constants, spike arithmetic") {
  const GridSpec g = GridSpec::unit_square(9);
  Field u(g, Species::N);
  for (std::size_t i = 0; i < u.size(); ++i) u.values[i] = 0.3 * i - 2.0;

  const Field id = cn_system_apply(u, 1.0, {0.5, 0.25}, 0.0);
  CHECK(id.values == u.values);

  Field c(g, Species::N, 7.5);
  const Field cc = cn_system_apply(c, 3.0, {1.0, 2.0}, 0.7);
  for (double v : cc.values) CHECK(v == 7.5);

  Field spike(g, Species::N, 0.0);
  spike.at(4, 4) = 1.0;
  const double dt = 0.01, hs = g.dx;
  const Field s = cn_system_apply(spike, 1.0, {}, dt);
  CHECK(s.at(4, 4) == Approx(1.0 + 2.0 * dt / (hs * hs)).epsilon(1e-14));
}

TEST_CASE("fused CN apply equals the operator composition") {
  const GridSpec g = GridSpec::unit_square(17);
  Field u(g, Species::U);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (auto& v : u.values) v = uni(rng);

  const double D = 0.086, dt = 0.025;
  const AdvectionVector h{0.0864, 0.0432};
  const Field fused = cn_system_apply(u, D, h, dt);
  const Field lap = apply_laplacian(u, D);
  const Field adv = apply_upwind_advection(u, h);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double composed =
        u.values[i] - 0.5 * dt * (lap.values[i] - adv.values[i]);
    CHECK(fused.values[i] == Approx(composed).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("pointwise Backward-Euler drug decay: U' = -k2 U") {
  const ParameterSet p;
  const GridSpec g = GridSpec::unit_square(3);
  StateSnapshot state(g);
  std::fill(state.U().values.begin(), state.U().values.end(), 1.0);

  StepProblem pb;  // no transport at all: pure reaction ODE per node
  pb.grid = g;
  ModelReactions rx(p, nullptr);
  pb.reactions = &rx;

  const StepperConfig cfg = tight_cfg(0.025);
  const double ratio = 1.0 / (1.0 + p.k2 * cfg.dt);
  double expected = 1.0;
  for (int step = 0; step < 100; ++step) {
    auto [next, rep] = cnbe_step(pb, state, state.time, cfg);
    state = std::move(next);
    expected *= ratio;
    CHECK(state.U().at(1, 1) == Approx(expected).epsilon(1e-12));
  }
  CHECK(expected == Approx(std::pow(0.9913258983890954, 100)).epsilon(1e-9));
}

TEST_CASE("immune influx from the zero state") {
  const ParameterSet p;
  const GridSpec g = GridSpec::unit_square(5);
  const StateSnapshot zero(g);

  const StepperConfig cfg = tight_cfg(0.025);
  auto [next, rep] = cnbe_step(zero, 0.0, p, nullptr, cfg);
  const double expected = p.s * cfg.dt / (1.0 + p.k1 * cfg.dt);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      CHECK(next.I().at(i, j) == Approx(expected).epsilon(1e-12));
  CHECK(next.N().max_value() == 0.0);
  CHECK(next.T().max_value() == 0.0);
  CHECK(next.U().max_value() == 0.0);
  CHECK(rep.picard_iterations <= 25);
}

TEST_CASE("spatially constant states stay spatially constant") {
  const ParameterSet p;
  const GridSpec g = GridSpec::unit_square(7);
  StateSnapshot state(g);
  const double vals[4] = {0.6 * p.K_N(), 0.2 * p.K_T(), 5e4, 0.3};
  for (int k = 0; k < 4; ++k)
    std::fill(state.fields[k].values.begin(), state.fields[k].values.end(),
              vals[k]);
  DosingSchedule sched;  // case-1 pulses
  const StepperConfig cfg = tight_cfg(0.025);
  for (int step = 0; step < 5; ++step) {
    auto [next, rep] = cnbe_step(state, state.time, p, &sched, cfg);
    state = std::move(next);
    for (int k = 0; k < 4; ++k) {
      const Field& f = state.fields[k];
      CHECK(f.max_value() - f.min_value() == 0.0);
    }
  }
  // dynamics moved the state off its initial values
  CHECK(state.U().at(0, 0) > 0.0);
}

TEST_CASE("unconditional stability smoke test on a discrete eigenmode") {
  const GridSpec g = GridSpec::unit_square(33);
  const int M = g.nx;
  StepProblem pb;
  pb.grid = g;
  pb.D = {0.086, 0.0, 0.0, 0.0};
  pb.active = {true, false, false, false};

  for (double dt : {10.0, 0.01}) {
    StateSnapshot state(g);
    for (int j = 0; j < M; ++j)
      for (int i = 0; i < M; ++i)
        state.N().at(i, j) = std::cos(M_PI * (i + 0.5) / M) *
                             std::cos(M_PI * (j + 0.5) / M);
    StepperConfig cfg = tight_cfg(dt);
    double prev = state.N().max_value();
    for (int step = 0; step < 20; ++step) {
      auto [next, rep] = cnbe_step(pb, state, state.time, cfg);
      state = std::move(next);
      double norm = 0.0;
      for (double v : state.N().values) norm = std::max(norm, std::fabs(v));
      CHECK(norm <= prev * (1.0 + 1e-12));
      prev = norm;
    }
  }
}

TEST_CASE("newton accelerator agrees with plain Picard") {
  const ParameterSet p;
  const GridSpec g = GridSpec::unit_square(5);
  StateSnapshot state(g);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    state.N().values[i] = 0.7 * p.K_N() * uni(rng);
    state.T().values[i] = 0.2 * p.K_T() * uni(rng);
    state.I().values[i] = 1e5 * uni(rng);
    state.U().values[i] = uni(rng);
  }
  DosingSchedule sched;
  StepperConfig plain = tight_cfg(0.025);
  StepperConfig accel = plain;
  accel.newton_accel = true;

  auto [a, ra] = cnbe_step(state, 0.0, p, &sched, plain);
  auto [b, rb] = cnbe_step(state, 0.0, p, &sched, accel);
  for (int k = 0; k < 4; ++k) {
    const double scale = std::max(a.fields[k].max_value(), 1.0);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(std::fabs(a.fields[k].values[i] - b.fields[k].values[i]) <=
            10.0 * plain.picard_tol * scale);
  }
  CHECK(rb.picard_iterations <= ra.picard_iterations);
}

TEST_CASE("run: snapshots, determinism, validation") {
  const ParameterSet p;
  const GridSpec g = GridSpec::unit_square(9);
  const StateSnapshot s0 = build_initial_state(g, p);
  StepProblem pb = make_model_problem(g, p);
  ModelReactions rx(p, nullptr);
  pb.reactions = &rx;
  StepperConfig cfg;
  cfg.dt = 0.025;

  SUBCASE("single step horizon") {
    const double times[] = {0.025};
    RunResult rr = run(pb, s0, 0.025, cfg, times);
    CHECK(rr.snapshots.size() == 1);
    CHECK(rr.reports.size() == 1);
    auto [one, rep] = cnbe_step(pb, s0, 0.0, cfg);
    CHECK(rr.snapshots[0].T().values == one.T().values);
  }

  SUBCASE("snapshot cadence and repeatability") {
    const double times[] = {0.0, 0.1, 0.2};
    RunResult a = run(pb, s0, 0.2, cfg, times);
    RunResult b = run(pb, s0, 0.2, cfg, times);
    CHECK(a.snapshots.size() == 3);
    CHECK(a.snapshots[0].time == 0.0);
    CHECK(a.snapshots[2].time == Approx(0.2).epsilon(1e-14));
    for (std::size_t s = 0; s < a.snapshots.size(); ++s)
      for (int k = 0; k < 4; ++k)
        CHECK(a.snapshots[s].fields[k].values ==
              b.snapshots[s].fields[k].values);
  }

  SUBCASE("snapshot times must sit on the dt ladder") {
    const double times[] = {0.03};
    CHECK_THROWS_AS(run(pb, s0, 0.2, cfg, times), ConfigError);
    const double beyond[] = {0.3};
    CHECK_THROWS_AS(run(pb, s0, 0.2, cfg, beyond), ConfigError);
  }
}

TEST_CASE("stepper config validation") {
  StepperConfig cfg;
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = StepperConfig{};
  cfg.picard_tol = 0.1;  // above the 1e-3 cap
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = StepperConfig{};
  cfg.picard_max = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_NOTHROW(StepperConfig{}.validate());
}
