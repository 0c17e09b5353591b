#pragma once

namespace ntiu {

// Advection speeds in cm/day; the upwind discretization requires
// nonnegative components.
struct AdvectionVector {
  double hx{0.0};
  double hy{0.0};
  bool zero() const { return hx == 0.0 && hy == 0.0; }
};

// Every model constant, in day/cm/cell units. Defaults are the simulation
// values (growth and interaction rates, fractional-kill coefficients,
// transport coefficients, gate threshold/width).
struct ParameterSet {
  // logistic growth with Allee thresholds; b are inverse carrying capacities
  double r1{0.18};                 // tumor growth rate, 1/day
  double r2{0.06};                 // normal-tissue growth rate, 1/day
  double b1{2.0e-9};               // 1/cells; K_T = 1/b1
  double b2{1.25e-9};              // 1/cells; K_N = 1/b2
  double A1{0.1 / 2.0e-9};         // tumor Allee threshold, cells
  double A2{0.3 / 1.25e-9};        // normal Allee threshold, cells
  // interaction rates, 1/(day*cell)
  double c1{3.422e-10};            // immune loss to tumor
  double c2{1.101e-7};             // tumor kill by immune
  double c3{1.0e-11};              // tumor loss to normal competition
  double c4{2.0e-11};              // normal damage by tumor
  // fractional-kill coefficients (dimensionless factors on 1 - e^{-U})
  double a1{0.2};                  // immune
  double a2{0.6};                  // tumor
  double a3{0.1};                  // normal
  // immune source/proliferation/decay
  double s{1.3e4};                 // influx, cells/day
  double rho{0.1245};              // proliferation rate, 1/day
  double alpha{2.019e7};           // half-saturation, cells
  double k1{0.0412};               // immune decay, 1/day
  // drug decay and delivery gate
  double k2{0.35};                 // drug decay, 1/day
  double a0{5.0e7};                // normal-density safety threshold, cells
  double delta{1.0e-6 / 1.25e-9};  // gate smoothing width, cells (1e-6 * K_N)
  // diffusion, cm^2/day
  double D1{1.0e-6};
  double D2{8.6e-5};
  double D3{1.0e-4};
  double D4{0.086};
  // drug advection, cm/day (1e-6 cm/s converted once at load)
  AdvectionVector h4{1.0e-6 * 86400.0, 1.0e-6 * 86400.0};

  double K_N() const { return 1.0 / b2; }
  double K_T() const { return 1.0 / b1; }

  // Enforces the positivity hypotheses and the Allee-below-capacity shape
  // constraints; throws ConfigError naming the offending key.
  void validate() const;
};

// Pulsed dosing: v(t) = V0 on [t_n, t_n + tau) with t_n = (n-1)*period,
// n = 1..n_pulses; 0 elsewhere.
struct DosingSchedule {
  double V0{1.0};      // per-pulse injection rate, concentration/day
  double tau{0.3};     // pulse width, day
  int n_pulses{7};     // N*
  double period{2.0};  // P, day

  double total_dose() const { return V0 * tau * n_pulses; }
  void validate() const;  // tau <= period, positive entries
};

// Pulse-train evaluation with half-open membership, exactly as written.
double dose_rate(const DosingSchedule& sched, double t);

}  // namespace ntiu
