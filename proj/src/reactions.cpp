#include "ntiu/reactions.hpp"

#include <cmath>

namespace ntiu {

double smooth_gate(double xi, double delta) {
  if (xi <= 0.0) return 0.0;
  if (xi >= delta) return 1.0;
  return 0.5 * (1.0 - std::cos(M_PI * xi / delta));
}

double smooth_gate_deriv(double xi, double delta) {
  if (xi <= 0.0 || xi >= delta) return 0.0;
  return (M_PI / (2.0 * delta)) * std::sin(M_PI * xi / delta);
}

std::array<double, 4> reactions(double N, double T, double I, double U,
                                const ParameterSet& p, double v_t) {
  const double kill = -std::expm1(-U);  // 1 - e^{-U}, accurate for small U
  const double FN = p.r2 * N * (1.0 - p.b2 * N) * (N / p.A2 - 1.0) -
                    p.c4 * T * N - p.a3 * kill * N;
  const double FT = p.r1 * T * (1.0 - p.b1 * T) * (T / p.A1 - 1.0) -
                    p.c2 * I * T - p.c3 * T * N - p.a2 * kill * T;
  const double FI = p.s + p.rho * I * T / (p.alpha + T) - p.c1 * I * T -
                    p.k1 * I - p.a1 * kill * I;
  const double FU = v_t * smooth_gate(N - p.a0, p.delta) - p.k2 * U;
  return {FN, FT, FI, FU};
}

Jacobian4 reaction_jacobian(double N, double T, double I, double U,
                            const ParameterSet& p, double v_t) {
  const double eU = std::exp(-U);
  const double kill = -std::expm1(-U);
  Jacobian4 J{};

  // d/dN of r2*N*(1-b2*N)*(N/A2-1) = r2*(2N/A2 - 1 - 3*b2*N^2/A2 + 2*b2*N)
  J[0][0] = p.r2 * (2.0 * N / p.A2 - 1.0 - 3.0 * p.b2 * N * N / p.A2 +
                    2.0 * p.b2 * N) -
            p.c4 * T - p.a3 * kill;
  J[0][1] = -p.c4 * N;
  J[0][2] = 0.0;
  J[0][3] = -p.a3 * eU * N;

  J[1][0] = -p.c3 * T;
  J[1][1] = p.r1 * (2.0 * T / p.A1 - 1.0 - 3.0 * p.b1 * T * T / p.A1 +
                    2.0 * p.b1 * T) -
            p.c2 * I - p.c3 * N - p.a2 * kill;
  J[1][2] = -p.c2 * T;
  J[1][3] = -p.a2 * eU * T;

  const double sat = p.alpha + T;
  J[2][0] = 0.0;
  J[2][1] = p.rho * I * p.alpha / (sat * sat) - p.c1 * I;
  J[2][2] = p.rho * T / sat - p.c1 * T - p.k1 - p.a1 * kill;
  J[2][3] = -p.a1 * eU * I;

  J[3][0] = v_t * smooth_gate_deriv(N - p.a0, p.delta);
  J[3][1] = 0.0;
  J[3][2] = 0.0;
  J[3][3] = -p.k2;

  return J;
}

}  // namespace ntiu
