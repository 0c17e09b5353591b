#pragma once

#include "ntiu/grid.hpp"
#include "ntiu/params.hpp"

namespace ntiu {

// D * five-point Laplacian with mirrored ghosts. Requires D >= 0.
Field apply_laplacian(const Field& f, double D);

// Conservative first-order upwind advection
//   (A_h u)(i,j) = hx/dx*(u_ij - u_{i-1,j}) + hy/dy*(u_ij - u_{i,j-1})
// with mirrored ghosts at the inflow boundaries. Negative components are
// rejected (the one-sided formula does not cover them).
Field apply_upwind_advection(const Field& f, const AdvectionVector& h);

// Courant number |hx|*dt/dx + |hy|*dt/dy.
double courant_number(const AdvectionVector& h, const GridSpec& grid, double dt);

// Crank-Nicolson left-hand side mat-vec: (I - (dt/2) L) u with
// L = D*laplacian - upwind(h). This is the operator the linear solves invert.
Field cn_system_apply(const Field& f, double D, const AdvectionVector& h,
                      double dt);

}  // namespace ntiu
