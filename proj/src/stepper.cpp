#include "ntiu/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "ntiu/errors.hpp"
#include "ntiu/kernels.hpp"
#include "ntiu/krylov.hpp"
#include "ntiu/reactions.hpp"

namespace ntiu {

void StepperConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt", "dt must be positive");
  if (!(picard_tol > 0.0) || picard_tol > 1e-3)
    throw ConfigError("picard_tol", "picard_tol must lie in (0, 1e-3]");
  if (!(krylov_tol > 0.0) || krylov_tol > 1e-3)
    throw ConfigError("krylov_tol", "krylov_tol must lie in (0, 1e-3]");
  if (picard_max < 1) throw ConfigError("picard_max", "picard_max must be >= 1");
  if (krylov_max < 1) throw ConfigError("krylov_max", "krylov_max must be >= 1");
}

void ReactionSource::jacobian(const double*, double, double, double, double,
                              double J[4][4]) const {
  std::memset(J, 0, 16 * sizeof(double));
}

void ModelReactions::eval(const double u[4], double, double, double, double t1,
                          double F[4]) const {
  const double v_t = sched_ ? dose_rate(*sched_, t1) : 0.0;
  const auto f = reactions(u[0], u[1], u[2], u[3], params_, v_t);
  F[0] = f[0];
  F[1] = f[1];
  F[2] = f[2];
  F[3] = f[3];
}

void ModelReactions::jacobian(const double u[4], double, double, double,
                              double t1, double J[4][4]) const {
  const double v_t = sched_ ? dose_rate(*sched_, t1) : 0.0;
  const auto j = reaction_jacobian(u[0], u[1], u[2], u[3], params_, v_t);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) J[r][c] = j[r][c];
}

StepProblem make_model_problem(const GridSpec& grid, const ParameterSet& p) {
  StepProblem pb;
  pb.grid = grid;
  pb.D = {p.D1, p.D2, p.D3, p.D4};
  pb.adv = {AdvectionVector{}, AdvectionVector{}, AdvectionVector{}, p.h4};
  return pb;
}

namespace {

double max_abs(const double* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(v[i]));
  return m;
}

// Solve the 4x4 system M z = b in place (partial pivoting).
void solve4(double M[4][4], double b[4]) {
  int piv[4] = {0, 1, 2, 3};
  for (int c = 0; c < 4; ++c) {
    int best = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::fabs(M[piv[r]][c]) > std::fabs(M[piv[best]][c])) best = r;
    std::swap(piv[c], piv[best]);
    const double d = M[piv[c]][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = M[piv[r]][c] / d;
      for (int cc = c; cc < 4; ++cc) M[piv[r]][cc] -= f * M[piv[c]][cc];
      b[piv[r]] -= f * b[piv[c]];
    }
  }
  double z[4];
  for (int c = 3; c >= 0; --c) {
    double acc = b[piv[c]];
    for (int cc = c + 1; cc < 4; ++cc) acc -= M[piv[c]][cc] * z[cc];
    z[c] = acc / M[piv[c]][c];
  }
  for (int c = 0; c < 4; ++c) b[c] = z[c];
}

// Node-local Backward-Euler reaction predictor: solves z = u0 + dt*F(z) by
// Newton at every node, giving the Picard loop a better starting iterate.
void newton_predict(const StepProblem& pb, const StateSnapshot& state,
                    double t0, double t1, double dt,
                    std::array<std::vector<double>, 4>& w) {
  const GridSpec& g = pb.grid;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t id = g.index(i, j);
      double z[4], u0[4];
      for (int k = 0; k < 4; ++k) z[k] = u0[k] = state.fields[k].values[id];
      double scale = 1.0;
      for (int k = 0; k < 4; ++k) scale = std::max(scale, std::fabs(u0[k]));
      const double x = g.x(i), y = g.y(j);
      for (int it = 0; it < 8; ++it) {
        double F[4], J[4][4];
        pb.reactions->eval(z, x, y, t0, t1, F);
        pb.reactions->jacobian(z, x, y, t0, t1, J);
        double M[4][4], rhs[4];
        for (int r = 0; r < 4; ++r) {
          for (int c = 0; c < 4; ++c) M[r][c] = -dt * J[r][c];
          M[r][r] += 1.0;
          rhs[r] = u0[r] + dt * F[r] - z[r];
          if (!pb.active[r]) {
            for (int c = 0; c < 4; ++c) M[r][c] = (c == r) ? 1.0 : 0.0;
            rhs[r] = 0.0;
          }
        }
        solve4(M, rhs);
        double dz = 0.0;
        for (int k = 0; k < 4; ++k) {
          z[k] += rhs[k];
          dz = std::max(dz, std::fabs(rhs[k]));
        }
        if (dz <= 1e-12 * scale) break;
      }
      for (int k = 0; k < 4; ++k)
        if (pb.active[k]) w[k][id] = z[k];
    }
  }
}

}  // namespace

std::pair<StateSnapshot, StepReport> cnbe_step(const StepProblem& problem,
                                               const StateSnapshot& state,
                                               double t,
                                               const StepperConfig& cfg) {
  const GridSpec& g = problem.grid;
  const std::size_t n = g.size();
  const double dt = cfg.dt;
  const double t1 = t + dt;
  const auto& kb = kern::active();

  for (int k = 0; k < 4; ++k) {
    if (!state.fields[k].finite())
      throw StepError("cnbe_step: non-finite input field", t);
  }

  // b_k = u^n + (dt/2) L_k u^n = 2 u^n - (I - (dt/2) L_k) u^n
  std::array<CnOperator, 4> ops;
  std::array<std::vector<double>, 4> b, w;
  std::vector<double> tmp(n), rhs(n), xsol(n);
  for (int k = 0; k < 4; ++k) {
    ops[k] = CnOperator{g, problem.D[k], problem.adv[k], dt};
    w[k] = state.fields[k].values;
    if (!problem.active[k]) continue;
    b[k].resize(n);
    ops[k].apply(state.fields[k].values.data(), tmp.data());
    kb.axpby(2.0, state.fields[k].values.data(), -1.0, tmp.data(), b[k].data(),
             n);
  }

  StepReport rep;
  const bool have_reactions = problem.reactions != nullptr;
  const bool one_sweep =
      !have_reactions || problem.reactions->state_independent();

  if (cfg.newton_accel && have_reactions &&
      !problem.reactions->state_independent()) {
    newton_predict(problem, state, t, t1, dt, w);
  }

  std::array<std::vector<double>, 4> F;
  if (have_reactions)
    for (int k = 0; k < 4; ++k) F[k].assign(n, 0.0);

  bool converged = false;
  double residual = 0.0;
  for (int sweep = 1; sweep <= cfg.picard_max; ++sweep) {
    if (have_reactions) {
      for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        for (int i = 0; i < g.nx; ++i) {
          const std::size_t id = g.index(i, j);
          const double u[4] = {w[0][id], w[1][id], w[2][id], w[3][id]};
          double Fn[4];
          problem.reactions->eval(u, g.x(i), y, t, t1, Fn);
          for (int k = 0; k < 4; ++k)
            if (problem.active[k]) F[k][id] = Fn[k];
        }
      }
    }

    residual = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (!problem.active[k]) continue;
      if (have_reactions)
        kb.axpby(dt, F[k].data(), 1.0, b[k].data(), rhs.data(), n);
      else
        std::copy(b[k].begin(), b[k].end(), rhs.begin());
      xsol = w[k];
      KrylovResult kr;
      try {
        kr = solve_cn(ops[k], rhs.data(), xsol.data(), cfg.krylov_tol,
                      cfg.krylov_max);
      } catch (const SolverError& e) {
        throw StepError(std::string("linear solve failed for field ") +
                            species_name(static_cast<Species>(k)) + ": " +
                            e.what() + " at t=" + std::to_string(t1),
                        t1);
      }
      rep.krylov_iterations_per_field[k] += kr.iterations;
      kb.axpby(1.0, xsol.data(), -1.0, w[k].data(), tmp.data(), n);
      const double denom = std::max(max_abs(xsol.data(), n),
                                    max_abs(w[k].data(), n));
      const double delta =
          (denom > 0.0) ? max_abs(tmp.data(), n) / denom : 0.0;
      rep.field_residual[k] = delta;
      residual = std::max(residual, delta);
      w[k].swap(xsol);
    }

    rep.picard_iterations = sweep;
    if (residual <= cfg.picard_tol || one_sweep) {
      converged = true;
      break;
    }
  }
  rep.final_picard_residual = residual;
  if (!converged)
    throw StepError("cnbe_step: Picard iteration did not converge (residual " +
                        std::to_string(residual) + ") at t=" +
                        std::to_string(t1),
                    t1);

  // Round-off negative undershoots are clamped and audited; larger
  // violations are only flagged.
  StateSnapshot next(g, t1);
  for (int k = 0; k < 4; ++k) {
    next.fields[k].name = static_cast<Species>(k);
    rep.preclamp_min[k] = *std::min_element(w[k].begin(), w[k].end());
    if (problem.active[k]) {
      const double scale = std::max(max_abs(w[k].data(), n), 1.0);
      const double clip = 1e-12 * scale;
      int clamped = 0;
      for (double& v : w[k]) {
        if (v < 0.0 && v > -clip) {
          v = 0.0;
          ++clamped;
        }
      }
      rep.clamped_nodes[k] = clamped;
      bool flag = rep.preclamp_min[k] < -1e-9 * scale;
      if (problem.bounds && problem.bounds->has_upper[k]) {
        const double top = *std::max_element(w[k].begin(), w[k].end());
        if (top > problem.bounds->upper[k] * (1.0 + 1e-9)) flag = true;
      }
      rep.bound_flags[k] = flag;
    }
    rep.min_value[k] = *std::min_element(w[k].begin(), w[k].end());
    rep.max_value[k] = *std::max_element(w[k].begin(), w[k].end());
    next.fields[k].values = std::move(w[k]);
  }
  rep.valid = true;
  next.report = rep;
  return {std::move(next), rep};
}

std::pair<StateSnapshot, StepReport> cnbe_step(const StateSnapshot& state,
                                               double t,
                                               const ParameterSet& params,
                                               const DosingSchedule* sched,
                                               const StepperConfig& cfg) {
  StepProblem pb = make_model_problem(state.grid(), params);
  ModelReactions rx(params, sched);
  pb.reactions = &rx;
  return cnbe_step(pb, state, t, cfg);
}

Field solve_cn_linear(const Field& rhs, double D, const AdvectionVector& h,
                      double dt, const StepperConfig& cfg) {
  Field x = rhs;  // initial guess; exact for constant right-hand sides
  const CnOperator A{rhs.grid, D, h, dt};
  solve_cn(A, rhs.data(), x.data(), cfg.krylov_tol, cfg.krylov_max);
  return x;
}

namespace {

// Maps a time to a step index on the ladder t0 + m*dt; throws when the
// time is not a step multiple.
long step_index(double t, double t0, double dt, const char* what) {
  const double m = (t - t0) / dt;
  const long r = std::lround(m);
  if (std::fabs(m - static_cast<double>(r)) > 1e-8 * std::max(1.0, std::fabs(m)) ||
      r < 0)
    throw ConfigError(what, std::string(what) +
                                " must be a nonnegative multiple of dt");
  return r;
}

}  // namespace

RunResult run(const StepProblem& problem, const StateSnapshot& initial,
              double t_end, const StepperConfig& cfg,
              std::span<const double> snapshot_times) {
  cfg.validate();
  const double t0 = initial.time;
  if (!(t_end > t0)) throw ConfigError("horizon", "t_end must exceed the start time");
  const long steps = step_index(t_end, t0, cfg.dt, "horizon");

  std::vector<long> want;
  want.reserve(snapshot_times.size());
  for (double ts : snapshot_times) {
    const long m = step_index(ts, t0, cfg.dt, "snapshot time");
    if (m > steps)
      throw ConfigError("snapshot time", "snapshot time beyond the horizon");
    want.push_back(m);
  }
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());

  RunResult out;
  out.reports.reserve(steps);
  std::size_t wi = 0;
  if (wi < want.size() && want[wi] == 0) {
    out.snapshots.push_back(initial);
    ++wi;
  }

  StateSnapshot state = initial;
  for (long m = 0; m < steps; ++m) {
    const double t = t0 + static_cast<double>(m) * cfg.dt;
    auto [next, rep] = cnbe_step(problem, state, t, cfg);
    state = std::move(next);
    state.time = t0 + static_cast<double>(m + 1) * cfg.dt;  // stay on the ladder
    out.reports.push_back(rep);
    out.report_times.push_back(state.time);
    if (wi < want.size() && want[wi] == m + 1) {
      out.snapshots.push_back(state);
      ++wi;
    }
  }
  return out;
}

}  // namespace ntiu
