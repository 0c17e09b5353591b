#include <doctest.h>

#include <cmath>
#include <random>

#include "ntiu/errors.hpp"
#include "ntiu/reactions.hpp"
#include "ntiu/scenarios.hpp"

using namespace ntiu;
using doctest::Approx;

TEST_CASE("dosing cases and total-dose arithmetic") {
  const DosingSchedule c1 = make_case(1);
  const DosingSchedule c2 = make_case(2);
  const DosingSchedule c3 = make_case(3);
  const DosingSchedule c4 = make_case(4);
  CHECK(c1.V0 == 1.00);
  CHECK(c1.tau == 0.30);
  CHECK(c1.n_pulses == 7);
  CHECK(c2.V0 == 0.60);
  CHECK(c2.tau == 0.50);
  CHECK(c3.V0 == 3.00);
  CHECK(c3.tau == 0.35);
  CHECK(c4.n_pulses == 10);
  CHECK(c1.period == 2.0);

  CHECK(c1.total_dose() == Approx(2.10).epsilon(1e-14));
  CHECK(c2.total_dose() == Approx(2.10).epsilon(1e-14));
  CHECK(c3.total_dose() == Approx(7.35).epsilon(1e-14));
  CHECK(c4.total_dose() == Approx(7.35).epsilon(1e-14));
  CHECK(c1.total_dose() == Approx(c2.total_dose()).epsilon(1e-15));
  CHECK(c3.total_dose() == Approx(c4.total_dose()).epsilon(1e-15));

  // case 4's last pulse starts at day 18, inside a 28-day horizon
  CHECK((c4.n_pulses - 1) * c4.period == 18.0);

  CHECK_THROWS_AS(make_case(5), ConfigError);
  CHECK_THROWS_AS(make_case(0), ConfigError);
}

TEST_CASE("tumor front area") {
  const ParameterSet p;
  const GridSpec g = GridSpec::unit_square(101);
  Field T(g, Species::T, 0.0);
  CHECK(tumor_front_area(T, p.K_T(), 0.5) == 0.0);

  std::fill(T.values.begin(), T.values.end(), p.K_T());
  CHECK(tumor_front_area(T, p.K_T(), 0.5) ==
        Approx(1.01 * 1.01).epsilon(1e-12));

  const StateSnapshot s0 = build_initial_state(g, p);
  // initial tumor tops out at 0.25 K_T, below the 0.5 K_T front level
  CHECK(tumor_front_area(s0.T(), p.K_T(), 0.5) == 0.0);
  CHECK(tumor_front_area(s0.T(), p.K_T(), 0.04) > 1.0);

  CHECK_THROWS_AS(tumor_front_area(T, p.K_T(), 1.5), ConfigError);
}

TEST_CASE("envelopes from the paper initial data") {
  const ParameterSet p;
  const GridSpec g = GridSpec::unit_square(101);
  const StateSnapshot s0 = build_initial_state(g, p);
  const DosingSchedule c1 = make_case(1);
  const Envelopes env = envelopes_from_initial(s0, p, &c1);
  CHECK(env.M1 == Approx(8e8).epsilon(1e-12));   // 1/b2 dominates
  CHECK(env.M2 == Approx(5e8).epsilon(1e-12));   // 1/b1 dominates
  CHECK(env.M3 == Approx(1.0 / 0.35).epsilon(1e-12));  // v_max/k2 ~ 2.857

  const EnvelopeReport rep = bounds_monitor(s0, env);
  CHECK(rep.all_ok);
  for (int k = 0; k < 4; ++k) {
    CHECK(rep.fields[k].nonneg_ok);
    CHECK(rep.fields[k].upper_ok);
  }
  CHECK_FALSE(rep.fields[2].has_bound);  // immune has no closed-form envelope

  // zero state passes every check
  const StateSnapshot zero(g);
  CHECK(bounds_monitor(zero, p, nullptr).all_ok);

  // a violation is flagged
  StateSnapshot bad = s0;
  bad.N().at(3, 3) = 2.0 * env.M1;
  CHECK_FALSE(bounds_monitor(bad, env).all_ok);
}

TEST_CASE("NT and NTI share the N-equation right-hand side") {
  const ParameterSet p;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double N = 0.8e9 * uni(rng), T = 0.5e9 * uni(rng);
    const double I = 1e6 * uni(rng);
    const auto nt = reactions(N, T, 0.0, 0.0, p, 0.0);
    const auto nti = reactions(N, T, I, 0.0, p, 0.0);
    CHECK(nt[0] == nti[0]);  // F_N identical in both subsystems
    // immune presence strictly reduces instantaneous tumor growth
    const double diff = nti[1] - nt[1];
    CHECK(diff == Approx(-p.c2 * I * T).epsilon(1e-12));
    if (I > 0.0 && T > 0.0) CHECK(diff < 0.0);
  }
}

TEST_CASE("scenario validation") {
  ScenarioConfig sc;
  sc.grid = GridSpec::unit_square(11);
  sc.scheme = Scheme::NTIU;
  sc.schedule.reset();
  try {
    sc.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "schedule");
  }
  sc.scheme = Scheme::NT;
  CHECK_NOTHROW(sc.validate());

  CHECK(scheme_from_name("NT") == Scheme::NT);
  CHECK_THROWS_AS(scheme_from_name("ntiu"), ConfigError);
}

TEST_CASE("compare verdicts: degenerate tie gives all-false") {
  MetricsSeries same;
  same.rows.push_back({14.0, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  same.rows.push_back({28.0, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  CompareInputs in;
  in.nt = same;
  in.nti = same;
  for (auto& c : in.cases) c = same;
  const CompareVerdicts v = compare_cases(in);
  CHECK_FALSE(v.case3_min_peak_T_mid);
  CHECK_FALSE(v.case4_min_front_both);
  CHECK_FALSE(v.ntiu_front_below_baselines);
  CHECK_FALSE(v.case3_lowest_peak_N_end);
  // the verdict report is a pure function of its inputs
  CHECK(format_verdict_report(in, v) == format_verdict_report(in, v));
}

TEST_CASE("compare verdicts: constructed orderings are recognized") {
  auto series = [](double peak_T14, double front14, double front28,
                   double peak_N28) {
    MetricsSeries m;
    m.rows.push_back({14.0, 5, peak_T14, 1, 1, front14, 1, 1, 1, 1});
    m.rows.push_back({28.0, peak_N28, peak_T14, 1, 1, front28, 1, 1, 1, 1});
    return m;
  };
  CompareInputs in;
  in.nt = series(10, 1.00, 1.02, 9.0);
  in.nti = series(9.5, 0.98, 1.00, 9.0);
  in.cases[0] = series(9.0, 0.80, 0.90, 8.0);
  in.cases[1] = series(9.1, 0.81, 0.91, 7.9);
  in.cases[2] = series(7.0, 0.70, 0.80, 6.0);  // case 3: lowest peaks
  in.cases[3] = series(8.0, 0.60, 0.70, 6.5);  // case 4: smallest front
  const CompareVerdicts v = compare_cases(in);
  CHECK(v.case3_min_peak_T_mid);
  CHECK(v.case4_min_front_both);
  CHECK(v.ntiu_front_below_baselines);
  CHECK(v.case3_lowest_peak_N_end);
}

TEST_CASE("short NT run: tumor sup grows toward carrying capacity") {
  ScenarioConfig sc;
  sc.scheme = Scheme::NT;
  sc.schedule.reset();
  sc.grid = GridSpec::unit_square(51);
  sc.horizon = 1.0;
  sc.snapshot_times = {0.0, 0.5, 1.0};
  const ScenarioResult res = run_scenario(sc);
  REQUIRE(res.metrics.rows.size() == 3);
  CHECK(res.metrics.rows[1].peak_T > res.metrics.rows[0].peak_T);
  CHECK(res.metrics.rows[2].peak_T > res.metrics.rows[1].peak_T);
  // immune and drug stay inert under NT
  CHECK(res.snapshots.back().I().max_value() == 0.0);
  CHECK(res.snapshots.back().U().max_value() == 0.0);
  for (const auto& rep : res.reports) {
    CHECK(rep.picard_iterations <= 25);
    for (bool b : rep.bound_flags) CHECK_FALSE(b);
  }
}
