#pragma once

#include <string>
#include <vector>

#include "ntiu/scenarios.hpp"
#include "ntiu/verification.hpp"

namespace ntiu {

// Snapshot as `x,y,N,T,I,U`, row-major node order, 17 significant digits.
void write_snapshot_csv(const StateSnapshot& s, const std::string& path);

// `t,peak_N,peak_T,peak_I,peak_U,front_area,mass_N,mass_T,mass_I,mass_U`.
void write_metrics_csv(const MetricsSeries& m, const std::string& path);

// Per-step log, one row per (step, field):
// `t,field,picard_iters,krylov_iters,residual,min_value,max_value,clamped_nodes`.
void write_diagnostics_csv(const std::vector<double>& times,
                           const std::vector<StepReport>& reports,
                           const std::string& path);

// `h,err_inf,err_l2,order_inf,order_l2` (orders blank on the first row).
void write_convergence_csv(const ConvergenceReport& rep,
                           const std::string& path);

// Gate curve `xi,H` over xi in [-delta, 2*delta].
void write_gate_curve_csv(double delta, const std::string& path);

// Pulse train `t,v` sampled every `dt_plot` on [0, t_end].
void write_dose_curve_csv(const DosingSchedule& sched, double t_end,
                          double dt_plot, const std::string& path);

}  // namespace ntiu
