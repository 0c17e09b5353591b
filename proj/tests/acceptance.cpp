// Acceptance suite: end-to-end checks of the simulator against its pinned
// quantitative contracts. Prints one PASS/FAIL line per criterion and exits
// with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ntiu/csv.hpp"
#include "ntiu/scenarios.hpp"
#include "ntiu/verification.hpp"

using namespace ntiu;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("[%d] %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

ScenarioConfig base_scenario(Scheme scheme, int case_id, int grid_nodes) {
  ScenarioConfig sc;
  sc.scheme = scheme;
  sc.grid = GridSpec::unit_square(grid_nodes);
  sc.horizon = 28.0;
  sc.snapshot_times = {0.0, 14.0, 28.0};
  if (scheme == Scheme::NTIU)
    sc.schedule = make_case(case_id, 2.0);
  else
    sc.schedule.reset();
  return sc;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const ParameterSet params;

  // ----- criterion 1: bounds on the full NTIU case-1 run -------------------
  ScenarioResult case1_result;
  {
    const auto t0 = clock::now();
    const ScenarioConfig sc = base_scenario(Scheme::NTIU, 1, 101);
    case1_result = run_scenario(sc);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();

    const double envN = 8e8, envT = 5e8, envU = 1.0 / 0.35;
    bool nonneg = true, envelopes = true;
    double worst_min = 0.0;
    for (const auto& rep : case1_result.reports) {
      for (int k = 0; k < 4; ++k) {
        const double scale = std::max(std::fabs(rep.max_value[k]), 1.0);
        if (rep.preclamp_min[k] < -1e-9 * scale) nonneg = false;
        worst_min = std::min(worst_min, rep.preclamp_min[k] / scale);
      }
      if (rep.max_value[0] > envN * (1.0 + 1e-9)) envelopes = false;
      if (rep.max_value[1] > envT * (1.0 + 1e-9)) envelopes = false;
      if (rep.max_value[3] > envU * (1.0 + 1e-9)) envelopes = false;
      for (bool b : rep.bound_flags)
        if (b) envelopes = false;
    }
    const bool fast_enough = secs <= 120.0;
    std::ostringstream os;
    os << "bounds: NTIU case 1, 28 day, 101x101: nonnegativity "
       << (nonneg ? "held" : "violated") << " (worst pre-clamp min/scale "
       << worst_min << "), envelopes N<=8e8, T<=5e8, U<=2.857 "
       << (envelopes ? "held" : "violated") << ", runtime " << secs
       << " s (limit 120)";
    report(1, nonneg && envelopes && fast_enough, os.str());
  }

  // ----- criterion 2: conservation ------------------------------------------
  {
    const ConservationAudit audit = conservation_audit(1000);
    std::ostringstream os;
    os << "conservation over 1000 steps: diffusion drift "
       << audit.diffusion_drift << " (<= 1e-8), advection flux mismatch "
       << audit.advection_mismatch << " (<= 1e-6)";
    report(2,
           audit.diffusion_drift <= verify_limits::kDiffusionDriftMax &&
               audit.advection_mismatch <=
                   verify_limits::kAdvectionFluxMismatchMax,
           os.str());
  }

  // ----- criterion 3: convergence orders ------------------------------------
  {
    const int levels[] = {26, 51, 101};
    const ConvergenceReport spatial = mms_spatial_study(levels);
    const double dts[] = {0.05, 0.025, 0.0125};
    const TemporalStudies temporal = mms_temporal_study(dts);
    std::ostringstream os;
    os << "convergence orders: spatial L2 " << spatial.min_order_l2()
       << " (>= 1.9), temporal full " << temporal.reaction_full.min_order_l2()
       << " (>= 0.9), temporal linear CN "
       << temporal.linear_cn.min_order_l2() << " (>= 1.9)";
    report(3,
           spatial.min_order_l2() >= verify_limits::kSpatialOrderMin &&
               temporal.reaction_full.min_order_l2() >=
                   verify_limits::kTemporalFullOrderMin &&
               temporal.linear_cn.min_order_l2() >=
                   verify_limits::kTemporalLinearOrderMin,
           os.str());
  }

  // ----- criterion 4: dense-oracle equivalence and mutation detection -------
  {
    const OracleCheck oc = small_grid_oracle(3);
    std::ostringstream os;
    os << "oracle: 3x3 step discrepancy " << oc.discrepancy
       << " (<= 1e-8), 1% c2 mutation discrepancy " << oc.mutated_discrepancy
       << " (detected: " << (oc.mutation_detected ? "yes" : "no") << ")";
    report(4,
           oc.discrepancy <= verify_limits::kOracleMaxDiscrepancy &&
               oc.mutation_detected,
           os.str());
  }

  // ----- criterion 5: dose accounting ----------------------------------------
  {
    const double d1 = make_case(1).total_dose();
    const double d2 = make_case(2).total_dose();
    const double d3 = make_case(3).total_dose();
    const double d4 = make_case(4).total_dose();
    const bool ok = std::fabs(d1 - 2.10) <= 1e-14 * 2.10 &&
                    std::fabs(d2 - 2.10) <= 1e-14 * 2.10 &&
                    std::fabs(d3 - 7.35) <= 1e-14 * 7.35 &&
                    std::fabs(d4 - 7.35) <= 1e-14 * 7.35;
    std::ostringstream os;
    os.precision(17);
    os << "total doses: case1 " << d1 << ", case2 " << d2 << " (= 2.10); case3 "
       << d3 << ", case4 " << d4 << " (= 7.35), machine precision";
    report(5, ok, os.str());
  }

  // ----- criterion 6: qualitative reproduction at desk scale (P = 2) --------
  {
    CompareInputs in;
    in.period = 2.0;
    in.cases[0] = case1_result.metrics;  // reuse the criterion-1 run

    const ScenarioResult nt = run_scenario(base_scenario(Scheme::NT, 0, 101));
    in.nt = nt.metrics;
    in.nti = run_scenario(base_scenario(Scheme::NTI, 0, 101)).metrics;
    for (int c = 2; c <= 4; ++c)
      in.cases[c - 1] =
          run_scenario(base_scenario(Scheme::NTIU, c, 101)).metrics;

    const CompareVerdicts v = compare_cases(in);
    const double KT = params.K_T();
    const double nt_peak14 = in.nt.at_time(14.0).peak_T;
    const bool a = nt_peak14 >= 0.95 * KT;
    // tumor sup stays nondecreasing while approaching carrying capacity
    bool nondecreasing = true;
    {
      double prev = 0.0;
      for (const auto& rep : nt.reports) {
        if (rep.max_value[1] < prev * (1.0 - 1e-12) &&
            prev < 0.95 * KT) nondecreasing = false;
        prev = rep.max_value[1];
      }
    }
    std::ostringstream os;
    os << "qualitative (P=2): NT peak_T(14d)/K_T = " << nt_peak14 / KT
       << " (>= 0.95, sup nondecreasing: " << (nondecreasing ? "yes" : "no")
       << "); fronts below NT/NTI: " << (v.ntiu_front_below_baselines ? "yes" : "no")
       << "; case3 min peak_T(14d): " << (v.case3_min_peak_T_mid ? "yes" : "no")
       << "; case4 min front(14d,28d): " << (v.case4_min_front_both ? "yes" : "no")
       << "; peak_N(28d) case3 lowest: " << (v.case3_lowest_peak_N_end ? "yes" : "no");
    report(6,
           a && nondecreasing && v.ntiu_front_below_baselines &&
               v.case3_min_peak_T_mid && v.case4_min_front_both &&
               v.case3_lowest_peak_N_end,
           os.str());
  }

  // ----- criterion 7: pointwise Backward-Euler exactness --------------------
  {
    const GridSpec g = GridSpec::unit_square(3);
    StateSnapshot state(g);
    std::fill(state.U().values.begin(), state.U().values.end(), 1.0);
    StepProblem pb;
    pb.grid = g;
    ModelReactions rx(params, nullptr);
    pb.reactions = &rx;
    StepperConfig cfg;
    cfg.dt = 0.025;
    cfg.picard_tol = 1e-13;
    cfg.picard_max = 200;
    cfg.krylov_tol = 1e-13;
    cfg.krylov_max = 500;

    const double ratio = 1.0 / (1.0 + params.k2 * cfg.dt);
    double expected = 1.0, worst = 0.0;
    bool ok = true;
    for (int step = 0; step < 100; ++step) {
      auto [next, rep] = cnbe_step(pb, state, state.time, cfg);
      state = std::move(next);
      expected *= ratio;
      const double err = std::fabs(state.U().values[0] - expected) / expected;
      worst = std::max(worst, err);
      if (err > 1e-12) ok = false;
    }
    std::ostringstream os;
    os << "pointwise BE drug decay: 100 steps of 1/(1+k2*dt), worst relative "
          "deviation " << worst << " (<= 1e-12)";
    report(7, ok, os.str());
  }

  // ----- criterion 8: determinism of the compare pipeline -------------------
  {
    auto run_compare_to = [&](const fs::path& dir) {
      fs::create_directories(dir);
      std::vector<fs::path> written;
      auto emit = [&](const std::string& name, const ScenarioResult& res) {
        write_metrics_csv(res.metrics, (dir / (name + "_metrics.csv")).string());
        written.push_back(dir / (name + "_metrics.csv"));
        for (const auto& snap : res.snapshots) {
          std::ostringstream nm;
          nm << name << "_snapshot_d" << snap.time << ".csv";
          write_snapshot_csv(snap, (dir / nm.str()).string());
          written.push_back(dir / nm.str());
        }
      };
      emit("nt", run_scenario(base_scenario(Scheme::NT, 0, 51)));
      emit("nti", run_scenario(base_scenario(Scheme::NTI, 0, 51)));
      for (int c = 1; c <= 4; ++c)
        emit("case" + std::to_string(c),
             run_scenario(base_scenario(Scheme::NTIU, c, 51)));
      return written;
    };
    const fs::path dir_a = "acceptance_compare_a";
    const fs::path dir_b = "acceptance_compare_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    const auto files_a = run_compare_to(dir_a);
    const auto files_b = run_compare_to(dir_b);
    bool identical = files_a.size() == files_b.size();
    std::size_t bytes = 0;
    for (std::size_t i = 0; identical && i < files_a.size(); ++i) {
      const std::string a = read_file(files_a[i]);
      const std::string b = read_file(files_b[i]);
      bytes += a.size();
      identical = !a.empty() && a == b;
    }
    std::ostringstream os;
    os << "determinism: two compare pipelines wrote " << files_a.size()
       << " CSV files (" << bytes << " bytes), bit-identical: "
       << (identical ? "yes" : "no");
    report(8, identical, os.str());
  }

  std::printf("%s: %d criterion failure(s)\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures;
}
