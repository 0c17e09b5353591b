#pragma once

#include <span>
#include <string>
#include <vector>

#include "ntiu/scenarios.hpp"

namespace ntiu {

// Pinned verification thresholds.
namespace verify_limits {
inline constexpr double kSpatialOrderMin = 1.9;
inline constexpr double kTemporalFullOrderMin = 0.9;
inline constexpr double kTemporalLinearOrderMin = 1.9;
inline constexpr double kOracleMaxDiscrepancy = 1e-8;
inline constexpr double kDiffusionDriftMax = 1e-8;
inline constexpr double kAdvectionFluxMismatchMax = 1e-6;
}  // namespace verify_limits

struct ConvergenceLevel {
  double h{0.0};  // mesh spacing or time step
  double err_inf{0.0};
  double err_l2{0.0};
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  std::vector<double> orders_inf;  // successive-pair estimates
  std::vector<double> orders_l2;
  double min_order_inf() const;
  double min_order_l2() const;
};

// Spatial accuracy of the diffusion discretization via manufactured
// solution u* = cos(pi x)cos(pi y) e^{-t}. The manufactured solution and
// forcing are sampled at cell-centered coordinates x_i = (i+1/2)h, the
// geometry in which the mirror ghost closure is second-order consistent;
// the operator kernels are the production ones. Levels are node counts,
// at least three, strictly increasing.
ConvergenceReport mms_spatial_study(std::span<const int> levels,
                                    double t_end = 0.1, double dt = 1e-3);

struct TemporalStudies {
  ConvergenceReport reaction_full;  // full CNBE on a spatially constant state
  ConvergenceReport linear_cn;      // diffusion+advection only, no reactions
};

// Temporal accuracy: full CNBE against a dt/1024 reference (first order,
// Backward-Euler reactions dominate) and the linear Crank-Nicolson update
// alone (second order). dts must be at least three in a halving sequence.
TemporalStudies mms_temporal_study(std::span<const double> dts);

struct OracleCheck {
  double discrepancy{0.0};          // production step vs dense oracle
  double mutated_discrepancy{0.0};  // oracle run with c2 perturbed by 1%
  bool mutation_detected{false};
};

// One production cnbe_step on a tiny grid versus an independent dense
// fixed-point implementation (own stencil assembly, own reaction formulas,
// own gate/dose evaluation, dense LU). c2_scale perturbs the oracle's c2.
double small_grid_oracle_discrepancy(int n, unsigned seed, double c2_scale);
OracleCheck small_grid_oracle(int n = 3, unsigned seed = 20240817u);

struct ConservationAudit {
  int steps{0};
  double diffusion_drift{0.0};      // max relative mass drift over all fields
  double advection_mismatch{0.0};   // drift vs boundary-flux bookkeeping
};

// Diffusion-only mass conservation from the model initial data, and a
// drug-like advected field checked against an independent boundary-flux
// integral.
ConservationAudit conservation_audit(int steps);

struct VerificationSummary {
  ConvergenceReport spatial;
  TemporalStudies temporal;
  OracleCheck oracle;
  ConservationAudit conservation;
  bool all_pass{false};
  std::string text;
};

VerificationSummary run_verification_suite();

}  // namespace ntiu
