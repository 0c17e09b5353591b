#include "ntiu/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ntiu/errors.hpp"

namespace ntiu {

double ConvergenceReport::min_order_inf() const {
  double m = orders_inf.empty() ? 0.0 : orders_inf.front();
  for (double o : orders_inf) m = std::min(m, o);
  return m;
}

double ConvergenceReport::min_order_l2() const {
  double m = orders_l2.empty() ? 0.0 : orders_l2.front();
  for (double o : orders_l2) m = std::min(m, o);
  return m;
}

namespace {

void finish_orders(ConvergenceReport& rep) {
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    const double hr = rep.levels[i - 1].h / rep.levels[i].h;
    rep.orders_inf.push_back(
        std::log(rep.levels[i - 1].err_inf / rep.levels[i].err_inf) /
        std::log(hr));
    rep.orders_l2.push_back(
        std::log(rep.levels[i - 1].err_l2 / rep.levels[i].err_l2) /
        std::log(hr));
  }
}

// Manufactured forcing for u* = cos(pi x~)cos(pi y~)e^{-t} with
// u_t = D lap u + f, sampled at cell-centered coordinates x~ = x + h/2.
// The trapezoidal time average keeps the temporal pollution at O(dt^2).
class MmsForcing : public ReactionSource {
public:
  MmsForcing(double D, double half_h) : amp_(2.0 * M_PI * M_PI * D - 1.0),
                                        shift_(half_h) {}
  void eval(const double*, double x, double y, double t0, double t1,
            double F[4]) const override {
    const double space = std::cos(M_PI * (x + shift_)) *
                         std::cos(M_PI * (y + shift_));
    F[0] = amp_ * space * 0.5 * (std::exp(-t0) + std::exp(-t1));
    F[1] = F[2] = F[3] = 0.0;
  }
  bool state_independent() const override { return true; }

private:
  double amp_;
  double shift_;
};

}  // namespace

ConvergenceReport mms_spatial_study(std::span<const int> levels, double t_end,
                                    double dt) {
  if (levels.size() < 3)
    throw ConfigError("levels", "spatial study needs at least 3 levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 3)
      throw ConfigError("levels", "each level needs at least 3 nodes");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw ConfigError("levels", "levels must be strictly increasing");
  }

  constexpr double D = 1.0;
  ConvergenceReport rep;
  for (int nodes : levels) {
    const double h = 1.0 / nodes;  // nodes act as centers of `nodes` cells
    const GridSpec grid(h * (nodes - 1), h * (nodes - 1), nodes, nodes);
    StateSnapshot init(grid);
    for (int j = 0; j < nodes; ++j)
      for (int i = 0; i < nodes; ++i)
        init.N().at(i, j) = std::cos(M_PI * (i + 0.5) * h) *
                            std::cos(M_PI * (j + 0.5) * h);

    StepProblem pb;
    pb.grid = grid;
    pb.D = {D, 0.0, 0.0, 0.0};
    pb.active = {true, false, false, false};
    MmsForcing forcing(D, 0.5 * h);
    pb.reactions = &forcing;

    StepperConfig cfg;
    cfg.dt = dt;
    cfg.krylov_tol = 1e-12;
    cfg.krylov_max = 2000;

    const double times[] = {t_end};
    RunResult rr = run(pb, init, t_end, cfg, times);
    const Field& u = rr.snapshots.back().N();

    const double decay = std::exp(-t_end);
    double einf = 0.0, e2 = 0.0;
    for (int j = 0; j < nodes; ++j) {
      for (int i = 0; i < nodes; ++i) {
        const double exact = std::cos(M_PI * (i + 0.5) * h) *
                             std::cos(M_PI * (j + 0.5) * h) * decay;
        const double e = u.at(i, j) - exact;
        einf = std::max(einf, std::fabs(e));
        e2 += e * e;
      }
    }
    rep.levels.push_back({h, einf, std::sqrt(e2 * h * h)});
  }
  finish_orders(rep);
  return rep;
}

namespace {

void require_halving(std::span<const double> dts) {
  if (dts.size() < 3)
    throw ConfigError("dts", "temporal study needs at least 3 time steps");
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (std::fabs(dts[i] - 0.5 * dts[i - 1]) > 1e-12 * dts[i - 1])
      throw ConfigError("dts", "time steps must form a halving sequence");
  }
}

// Spatially constant state on a tiny grid: the CNBE step reduces to the
// coupled reaction ODE system.
StateSnapshot constant_state(const GridSpec& g, const ParameterSet& p) {
  StateSnapshot s(g);
  const double vals[4] = {0.65 * p.K_N(), 0.25 * p.K_T(), 1.0e5, 0.5};
  for (int k = 0; k < 4; ++k)
    std::fill(s.fields[k].values.begin(), s.fields[k].values.end(), vals[k]);
  return s;
}

std::array<double, 4> endpoint_values(const StateSnapshot& s) {
  return {s.N().values[0], s.T().values[0], s.I().values[0], s.U().values[0]};
}

}  // namespace

TemporalStudies mms_temporal_study(std::span<const double> dts) {
  require_halving(dts);
  TemporalStudies out;

  // Full CNBE on a constant state, dosing held on throughout the horizon
  // (tau = period, single pulse) so the reference problem is smooth in time.
  {
    const double t_end = 0.5;
    const GridSpec grid = GridSpec::unit_square(3);
    ParameterSet params;
    DosingSchedule sched;
    sched.V0 = 1.0;
    sched.tau = 2.0;
    sched.period = 2.0;
    sched.n_pulses = 1;

    auto solve_at = [&](double dt) {
      StepProblem pb = make_model_problem(grid, params);
      ModelReactions rx(params, &sched);
      pb.reactions = &rx;
      StepperConfig cfg;
      cfg.dt = dt;
      cfg.picard_tol = 1e-12;
      cfg.picard_max = 60;
      cfg.krylov_tol = 1e-13;
      cfg.krylov_max = 2000;
      const double times[] = {t_end};
      RunResult rr = run(pb, constant_state(grid, params), t_end, cfg, times);
      return endpoint_values(rr.snapshots.back());
    };

    const auto ref = solve_at(dts.back() / 1024.0);
    for (double dt : dts) {
      const auto v = solve_at(dt);
      double err = 0.0;
      for (int k = 0; k < 4; ++k)
        err = std::max(err,
                       std::fabs(v[k] - ref[k]) / std::max(std::fabs(ref[k]), 1.0));
      out.reaction_full.levels.push_back({dt, err, err});
    }
    finish_orders(out.reaction_full);
  }

  // Linear Crank-Nicolson study: diffusion + advection of smooth data,
  // reactions off; same-grid comparison isolates the temporal error.
  {
    const double t_end = 1.0;
    const GridSpec grid = GridSpec::unit_square(17);
    StateSnapshot init(grid);
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i)
        init.N().at(i, j) =
            1.0 + std::cos(M_PI * grid.x(i)) * std::cos(M_PI * grid.y(j));

    StepProblem pb;
    pb.grid = grid;
    pb.D = {0.086, 0.0, 0.0, 0.0};
    pb.adv = {AdvectionVector{0.0864, 0.0864}, {}, {}, {}};
    pb.active = {true, false, false, false};

    auto solve_at = [&](double dt) {
      StepperConfig cfg;
      cfg.dt = dt;
      cfg.krylov_tol = 1e-13;
      cfg.krylov_max = 2000;
      const double times[] = {t_end};
      RunResult rr = run(pb, init, t_end, cfg, times);
      return rr.snapshots.back().N();
    };

    const Field ref = solve_at(dts.back() / 1024.0);
    for (double dt : dts) {
      const Field u = solve_at(dt);
      double einf = 0.0, e2 = 0.0;
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double e = u.values[i] - ref.values[i];
        einf = std::max(einf, std::fabs(e));
        e2 += e * e;
      }
      out.linear_cn.levels.push_back(
          {dt, einf, std::sqrt(e2 * grid.dx * grid.dy)});
    }
    finish_orders(out.linear_cn);
  }

  return out;
}

// ---------------------------------------------------------------------------
// Dense oracle. Everything below re-derives the discretization from scratch:
// own ghost indexing, own dense operator assembly, own reaction formulas,
// own gate and pulse evaluation, dense LU solves. No stencil or reaction
// code is shared with the production path.

namespace {

struct DenseLU {
  int n{0};
  std::vector<double> a;  // row-major, factored in place
  std::vector<int> piv;

  explicit DenseLU(std::vector<double> m, int size) : n(size), a(std::move(m)),
                                                      piv(size) {
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int c = 0; c < n; ++c) {
      int best = c;
      for (int r = c + 1; r < n; ++r)
        if (std::fabs(a[r * n + c]) > std::fabs(a[best * n + c])) best = r;
      if (best != c) {
        for (int cc = 0; cc < n; ++cc) std::swap(a[c * n + cc], a[best * n + cc]);
        std::swap(piv[c], piv[best]);
      }
      const double d = a[c * n + c];
      for (int r = c + 1; r < n; ++r) {
        const double f = a[r * n + c] / d;
        a[r * n + c] = f;
        for (int cc = c + 1; cc < n; ++cc) a[r * n + cc] -= f * a[c * n + cc];
      }
    }
  }

  std::vector<double> solve(const std::vector<double>& b) const {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
    for (int r = 1; r < n; ++r) {
      double acc = x[r];
      for (int c = 0; c < r; ++c) acc -= a[r * n + c] * x[c];
      x[r] = acc;
    }
    for (int r = n - 1; r >= 0; --r) {
      double acc = x[r];
      for (int c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
      x[r] = acc / a[r * n + r];
    }
    return x;
  }
};

struct OracleModel {
  double r1, r2, b1, b2, A1, A2, c1, c2, c3, c4, a0, a1, a2, a3;
  double s, rho, alpha, k1, k2, delta;

  explicit OracleModel(const ParameterSet& p, double c2_scale)
      : r1(p.r1), r2(p.r2), b1(p.b1), b2(p.b2), A1(p.A1), A2(p.A2), c1(p.c1),
        c2(p.c2 * c2_scale), c3(p.c3), c4(p.c4), a0(p.a0), a1(p.a1), a2(p.a2),
        a3(p.a3), s(p.s), rho(p.rho), alpha(p.alpha), k1(p.k1), k2(p.k2),
        delta(p.delta) {}

  double gate(double xi) const {
    if (xi <= 0.0) return 0.0;
    if (xi >= delta) return 1.0;
    return (1.0 - std::cos(M_PI * xi / delta)) / 2.0;
  }

  void rates(double N, double T, double I, double U, double v,
             double F[4]) const {
    const double kill = 1.0 - std::exp(-U);
    F[0] = r2 * N * (1.0 - b2 * N) * (N / A2 - 1.0) - c4 * T * N -
           a3 * kill * N;
    F[1] = r1 * T * (1.0 - b1 * T) * (T / A1 - 1.0) - c2 * I * T -
           c3 * T * N - a2 * kill * T;
    F[2] = s + rho * I * T / (alpha + T) - c1 * I * T - k1 * I - a1 * kill * I;
    F[3] = v * gate(N - a0) - k2 * U;
  }
};

}  // namespace

double small_grid_oracle_discrepancy(int n, unsigned seed, double c2_scale) {
  if (n < 3 || n > 6)
    throw ConfigError("grid", "oracle grid must be tiny (3..6 nodes per side)");
  const GridSpec grid = GridSpec::unit_square(n);
  ParameterSet params;
  DosingSchedule sched;  // defaults: case-1 pulse train

  // Random nonnegative state; one node sits inside the gate band.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  StateSnapshot state(grid);
  for (std::size_t id = 0; id < grid.size(); ++id) {
    state.N().values[id] = (0.3 + 0.45 * uni(rng)) * params.K_N();
    state.T().values[id] = 0.25 * params.K_T() * uni(rng);
    state.I().values[id] = 1.0e5 * uni(rng);
    state.U().values[id] = 2.0 * uni(rng);
  }
  state.N().values[grid.index(n / 2, n / 2)] = params.a0 + params.delta / 3.0;

  StepperConfig cfg;
  cfg.dt = 0.025;
  cfg.picard_tol = 1e-12;
  cfg.picard_max = 200;
  cfg.krylov_tol = 1e-13;
  cfg.krylov_max = 2000;

  auto [prod, rep] = cnbe_step(state, 0.0, params, &sched, cfg);
  (void)rep;

  // --- independent dense route ---
  const int nn = n * n;
  const double dx = grid.dx, dy = grid.dy;
  const double dt = cfg.dt;
  auto id2 = [n](int i, int j) { return j * n + i; };
  auto mir = [n](int i) { return i < 0 ? 0 : (i >= n ? n - 1 : i); };

  const double Dk[4] = {params.D1, params.D2, params.D3, params.D4};
  const double hxk[4] = {0.0, 0.0, 0.0, params.h4.hx};
  const double hyk[4] = {0.0, 0.0, 0.0, params.h4.hy};

  std::vector<DenseLU> lus;
  std::vector<std::vector<double>> Bmats;
  for (int k = 0; k < 4; ++k) {
    std::vector<double> L(nn * nn, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const int row = id2(i, j);
        // D * five-point Laplacian through mirrored neighbors
        const int nb[4] = {id2(mir(i - 1), j), id2(mir(i + 1), j),
                           id2(i, mir(j - 1)), id2(i, mir(j + 1))};
        const double wgt[4] = {Dk[k] / (dx * dx), Dk[k] / (dx * dx),
                               Dk[k] / (dy * dy), Dk[k] / (dy * dy)};
        for (int q = 0; q < 4; ++q) {
          L[row * nn + nb[q]] += wgt[q];
          L[row * nn + row] -= wgt[q];
        }
        // minus upwind advection
        L[row * nn + row] -= hxk[k] / dx + hyk[k] / dy;
        L[row * nn + id2(mir(i - 1), j)] += hxk[k] / dx;
        L[row * nn + id2(i, mir(j - 1))] += hyk[k] / dy;
      }
    }
    std::vector<double> A(nn * nn, 0.0), B(nn * nn, 0.0);
    for (int r = 0; r < nn; ++r) {
      for (int c = 0; c < nn; ++c) {
        A[r * nn + c] = ((r == c) ? 1.0 : 0.0) - 0.5 * dt * L[r * nn + c];
        B[r * nn + c] = ((r == c) ? 1.0 : 0.0) + 0.5 * dt * L[r * nn + c];
      }
    }
    lus.emplace_back(std::move(A), nn);
    Bmats.push_back(std::move(B));
  }

  OracleModel model(params, c2_scale);
  const double t1 = dt;
  // pulse 1 covers [0, tau)
  const double v1 = (t1 >= 0.0 && t1 < sched.tau) ? sched.V0 : 0.0;

  std::array<std::vector<double>, 4> u0, base, w;
  for (int k = 0; k < 4; ++k) {
    u0[k] = state.fields[k].values;
    base[k].assign(nn, 0.0);
    for (int r = 0; r < nn; ++r) {
      double acc = 0.0;
      for (int c = 0; c < nn; ++c) acc += Bmats[k][r * nn + c] * u0[k][c];
      base[k][r] = acc;
    }
    w[k] = u0[k];
  }

  for (int it = 0; it < 2000; ++it) {
    double change = 0.0;
    std::array<std::vector<double>, 4> rhs;
    for (int k = 0; k < 4; ++k) rhs[k] = base[k];
    for (int r = 0; r < nn; ++r) {
      double F[4];
      model.rates(w[0][r], w[1][r], w[2][r], w[3][r], v1, F);
      for (int k = 0; k < 4; ++k) rhs[k][r] += dt * F[k];
    }
    for (int k = 0; k < 4; ++k) {
      std::vector<double> next = lus[k].solve(rhs[k]);
      double scale = 1.0;
      for (double v : next) scale = std::max(scale, std::fabs(v));
      for (int r = 0; r < nn; ++r)
        change = std::max(change, std::fabs(next[r] - w[k][r]) / scale);
      w[k] = std::move(next);
    }
    if (change <= 1e-13) break;
  }

  double disc = 0.0;
  for (int k = 0; k < 4; ++k) {
    double scale = 1.0;
    for (double v : w[k]) scale = std::max(scale, std::fabs(v));
    for (int r = 0; r < nn; ++r)
      disc = std::max(disc,
                      std::fabs(prod.fields[k].values[r] - w[k][r]) / scale);
  }
  return disc;
}

OracleCheck small_grid_oracle(int n, unsigned seed) {
  OracleCheck c;
  c.discrepancy = small_grid_oracle_discrepancy(n, seed, 1.0);
  c.mutated_discrepancy = small_grid_oracle_discrepancy(n, seed, 1.01);
  c.mutation_detected =
      c.mutated_discrepancy > verify_limits::kOracleMaxDiscrepancy &&
      c.mutated_discrepancy > 10.0 * c.discrepancy;
  return c;
}

// ---------------------------------------------------------------------------

namespace {

// Independent boundary-flux rate of the upwind operator (the telescoped
// row/column sums), in mass units per day.
double boundary_flux_rate(const Field& u, const AdvectionVector& h) {
  const GridSpec& g = u.grid;
  double fx = 0.0, fy = 0.0;
  for (int j = 0; j < g.ny; ++j)
    fx += u.at(g.nx - 1, j) - u.at(0, j);
  for (int i = 0; i < g.nx; ++i)
    fy += u.at(i, g.ny - 1) - u.at(i, 0);
  return (h.hx / g.dx * fx + h.hy / g.dy * fy) * g.dx * g.dy;
}

}  // namespace

ConservationAudit conservation_audit(int steps) {
  if (steps < 0) throw ConfigError("steps", "steps must be >= 0");
  ConservationAudit audit;
  audit.steps = steps;

  ParameterSet params;
  const GridSpec grid = GridSpec::unit_square(101);
  const StateSnapshot initial = build_initial_state(grid, params);

  StepperConfig cfg;
  cfg.dt = 0.025;
  cfg.krylov_tol = 1e-10;
  cfg.krylov_max = 2000;

  {
    StepProblem pb = make_model_problem(grid, params);
    pb.adv = {};       // diffusion only
    pb.reactions = nullptr;
    double m0[4], drift = 0.0;
    for (int k = 0; k < 4; ++k) m0[k] = integrate(initial.fields[k]);
    StateSnapshot state = initial;
    for (int step = 0; step < steps; ++step) {
      auto [next, rep] = cnbe_step(pb, state, state.time, cfg);
      state = std::move(next);
      for (int k = 0; k < 4; ++k) {
        const double m = integrate(state.fields[k]);
        if (m0[k] != 0.0)
          drift = std::max(drift, std::fabs(m - m0[k]) / std::fabs(m0[k]));
        else
          drift = std::max(drift, std::fabs(m));
      }
    }
    audit.diffusion_drift = drift;
  }

  {
    // Drug-like transported field: the tumor bump profile under D4 and h4.
    StepProblem pb;
    pb.grid = grid;
    pb.D = {params.D4, 0.0, 0.0, 0.0};
    pb.adv = {params.h4, AdvectionVector{}, AdvectionVector{}, AdvectionVector{}};
    pb.active = {true, false, false, false};

    StateSnapshot state(grid);
    state.N().values = initial.T().values;
    const double m0 = integrate(state.N());
    double flux_total = 0.0;
    for (int step = 0; step < steps; ++step) {
      const double phi_old = boundary_flux_rate(state.N(), params.h4);
      auto [next, rep] = cnbe_step(pb, state, state.time, cfg);
      state = std::move(next);
      const double phi_new = boundary_flux_rate(state.N(), params.h4);
      flux_total += 0.5 * cfg.dt * (phi_old + phi_new);
    }
    const double m_end = integrate(state.N());
    audit.advection_mismatch =
        std::fabs(m_end - (m0 - flux_total)) / std::fabs(m0);
  }

  return audit;
}

VerificationSummary run_verification_suite() {
  VerificationSummary s;
  const int levels[] = {26, 51, 101};
  s.spatial = mms_spatial_study(levels);
  const double dts[] = {0.05, 0.025, 0.0125};
  s.temporal = mms_temporal_study(dts);
  s.oracle = small_grid_oracle();
  s.conservation = conservation_audit(1000);

  namespace lim = verify_limits;
  const bool spatial_ok = s.spatial.min_order_l2() >= lim::kSpatialOrderMin;
  const bool temporal_full_ok =
      s.temporal.reaction_full.min_order_l2() >= lim::kTemporalFullOrderMin;
  const bool temporal_lin_ok =
      s.temporal.linear_cn.min_order_l2() >= lim::kTemporalLinearOrderMin;
  const bool oracle_ok = s.oracle.discrepancy <= lim::kOracleMaxDiscrepancy &&
                         s.oracle.mutation_detected;
  const bool cons_ok =
      s.conservation.diffusion_drift <= lim::kDiffusionDriftMax &&
      s.conservation.advection_mismatch <= lim::kAdvectionFluxMismatchMax;
  s.all_pass = spatial_ok && temporal_full_ok && temporal_lin_ok && oracle_ok &&
               cons_ok;

  std::ostringstream os;
  auto line = [&os](bool ok, const std::string& what) {
    os << (ok ? "PASS" : "FAIL") << "  " << what << "\n";
  };
  {
    std::ostringstream w;
    w << "spatial order (L2, cell-centered MMS) >= " << lim::kSpatialOrderMin
      << ": min observed " << s.spatial.min_order_l2();
    line(spatial_ok, w.str());
  }
  {
    std::ostringstream w;
    w << "temporal order, full scheme >= " << lim::kTemporalFullOrderMin
      << ": min observed " << s.temporal.reaction_full.min_order_l2();
    line(temporal_full_ok, w.str());
  }
  {
    std::ostringstream w;
    w << "temporal order, linear CN >= " << lim::kTemporalLinearOrderMin
      << ": min observed " << s.temporal.linear_cn.min_order_l2();
    line(temporal_lin_ok, w.str());
  }
  {
    std::ostringstream w;
    w << "dense-oracle step discrepancy <= " << lim::kOracleMaxDiscrepancy
      << ": " << s.oracle.discrepancy << "; c2 mutation detected: "
      << (s.oracle.mutation_detected ? "yes" : "no") << " ("
      << s.oracle.mutated_discrepancy << ")";
    line(oracle_ok, w.str());
  }
  {
    std::ostringstream w;
    w << "mass conservation: diffusion drift " << s.conservation.diffusion_drift
      << " <= " << lim::kDiffusionDriftMax << ", advection flux mismatch "
      << s.conservation.advection_mismatch << " <= "
      << lim::kAdvectionFluxMismatchMax << " over " << s.conservation.steps
      << " steps";
    line(cons_ok, w.str());
  }
  s.text = os.str();
  return s;
}

}  // namespace ntiu
