#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "ntiu/params.hpp"
#include "ntiu/state.hpp"

namespace ntiu {

struct StepperConfig {
  double dt{0.025};         // day
  double picard_tol{1e-8};  // relative Linf tolerance of the outer iteration
  int picard_max{25};
  double krylov_tol{1e-10};  // relative residual of the linear solves
  int krylov_max{400};
  bool newton_accel{false};  // node-local BE reaction predictor

  void validate() const;  // dt > 0, tolerances in (0, 1e-3], max iters >= 1
};

// Reaction interface used by the stepper. The model implementation
// evaluates the coupled terms at the end of the step interval (Backward
// Euler); verification sources may use both endpoints.
class ReactionSource {
public:
  virtual ~ReactionSource() = default;

  // F_k at one node; u = (N,T,I,U) there, (x,y) node coordinates,
  // [t0,t1] the step interval.
  virtual void eval(const double u[4], double x, double y, double t0,
                    double t1, double F[4]) const = 0;

  // dF_k/du_l for the optional Newton predictor; defaults to zero
  // (valid for state-independent sources).
  virtual void jacobian(const double u[4], double x, double y, double t0,
                        double t1, double J[4][4]) const;

  // True when F does not depend on u; the Picard loop then needs one sweep.
  virtual bool state_independent() const { return false; }
};

// The four coupled reaction terms with pulsed dosing; v is evaluated at t1.
class ModelReactions : public ReactionSource {
public:
  ModelReactions(const ParameterSet& p, const DosingSchedule* sched)
      : params_(p), sched_(sched) {}

  void eval(const double u[4], double x, double y, double t0, double t1,
            double F[4]) const override;
  void jacobian(const double u[4], double x, double y, double t0, double t1,
                double J[4][4]) const override;

private:
  ParameterSet params_;
  const DosingSchedule* sched_;  // null: no dosing (v = 0)
};

// Per-field envelope bounds used for flagging (not enforcement).
struct FieldBounds {
  std::array<double, 4> upper{};
  std::array<bool, 4> has_upper{};
};

// One CNBE step problem: per-field transport coefficients, which fields
// evolve, the reaction source, and optional envelopes for flagging.
struct StepProblem {
  GridSpec grid;
  std::array<double, 4> D{};
  std::array<AdvectionVector, 4> adv{};
  std::array<bool, 4> active{true, true, true, true};
  const ReactionSource* reactions{nullptr};
  const FieldBounds* bounds{nullptr};
};

// Full model problem: D1..D4, advection on U only, all fields active.
StepProblem make_model_problem(const GridSpec& grid, const ParameterSet& p);

// One CNBE step from `state` at time t to t + cfg.dt: Crank-Nicolson for
// the transport operators, Backward Euler for the reactions, outer Picard
// iteration with frozen reactions, per-field Krylov solves. Throws
// StepError on Picard non-convergence; SolverError propagates.
std::pair<StateSnapshot, StepReport> cnbe_step(const StepProblem& problem,
                                               const StateSnapshot& state,
                                               double t,
                                               const StepperConfig& cfg);

// Convenience wrapper for the full model.
std::pair<StateSnapshot, StepReport> cnbe_step(const StateSnapshot& state,
                                               double t,
                                               const ParameterSet& params,
                                               const DosingSchedule* sched,
                                               const StepperConfig& cfg);

// Crank-Nicolson linear solve (I - (dt/2)L) u = rhs with initial guess rhs;
// CG when h = 0, BiCGStab otherwise.
Field solve_cn_linear(const Field& rhs, double D, const AdvectionVector& h,
                      double dt, const StepperConfig& cfg);

struct RunResult {
  std::vector<StateSnapshot> snapshots;
  std::vector<StepReport> reports;      // one per step
  std::vector<double> report_times;     // step end times
};

// Advances with fixed dt to t_end, recording snapshots at the requested
// times (which must be multiples of dt inside [state.time, t_end]).
RunResult run(const StepProblem& problem, const StateSnapshot& initial,
              double t_end, const StepperConfig& cfg,
              std::span<const double> snapshot_times);

}  // namespace ntiu
