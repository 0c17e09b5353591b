#pragma once

#include <array>

#include "ntiu/params.hpp"

namespace ntiu {

// C^1 cosine smooth-step: 0 for xi <= 0, (1 - cos(pi*xi/delta))/2 inside
// the band, 1 for xi >= delta.
double smooth_gate(double xi, double delta);

// Analytic derivative of smooth_gate: (pi/(2*delta))*sin(pi*xi/delta) in
// the open band, 0 outside.
double smooth_gate_deriv(double xi, double delta);

// Reaction terms (F_N, F_T, F_I, F_U) at one node given the local field
// values and the instantaneous dose rate v_t.
std::array<double, 4> reactions(double N, double T, double I, double U,
                                const ParameterSet& p, double v_t);

// Exact partial derivatives dF_k/d(N,T,I,U); row k differentiates F_k.
using Jacobian4 = std::array<std::array<double, 4>, 4>;
Jacobian4 reaction_jacobian(double N, double T, double I, double U,
                            const ParameterSet& p, double v_t);

}  // namespace ntiu
