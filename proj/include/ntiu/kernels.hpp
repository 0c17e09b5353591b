#pragma once

#include <cstddef>

namespace ntiu::kern {

// Inner arithmetic kernels over row-major nx*ny node arrays (x fastest).
// Stencil kernels close the single ghost layer with the mirror
//   u(-1,j) = u(0,j),  u(nx,j) = u(nx-1,j)   (and likewise in y),
// so no ghost storage exists; boundary columns/rows are special-cased.
//
// Two implementations are provided: a scalar reference and an AVX2 variant.
// The elementwise kernels (laplacian, upwind, cn_apply, axpby) follow the
// same expression tree in both, and the project is compiled with
// -ffp-contract=off, so their outputs are bit-identical; the equivalence
// test asserts this. dot uses lane accumulators under AVX2 and is compared
// at round-off tolerance instead.

struct Backend {
  const char* name;

  // out = ax*(W - 2C + E) + ay*(S - 2C + N)
  // For D*Laplacian pass ax = D/dx^2, ay = D/dy^2.
  void (*laplacian)(const double* u, double* out, int nx, int ny,
                    double ax, double ay);

  // out = bx*(C - W) + by*(C - S) with bx, by >= 0 (upwind for positive
  // advection speeds); mirrored inflow ghosts make the boundary terms zero.
  // For the advection operator pass bx = hx/dx, by = hy/dy.
  void (*upwind)(const double* u, double* out, int nx, int ny,
                 double bx, double by);

  // Fused Crank-Nicolson left-hand side
  //   out = C - [ax*(W - 2C + E) + ay*(S - 2C + N)]
  //           + [bx*(C - W) + by*(C - S)]
  // with ax = (dt/2)*D/dx^2, bx = (dt/2)*hx/dx, etc.
  void (*cn_apply)(const double* u, double* out, int nx, int ny,
                   double ax, double ay, double bx, double by);

  // out = a*x + b*y. out may alias x or y exactly.
  void (*axpby)(double a, const double* x, double b, const double* y,
                double* out, std::size_t n);

  double (*dot)(const double* x, const double* y, std::size_t n);
};

const Backend& scalar_backend();

// True when the AVX2 variant is compiled in and this CPU supports it.
bool avx2_available();
const Backend& avx2_backend();

// Runtime-selected backend: AVX2 when available, else scalar. The
// NTIU_KERNELS environment variable ("scalar" or "avx2") overrides.
const Backend& active();

// Force a backend by name ("scalar"/"avx2"); throws std::invalid_argument
// on unknown or unavailable names. Intended for tests.
void set_active(const char* name);

// Drop any forced choice and re-run the default selection (env + CPU).
void reset_active();

}  // namespace ntiu::kern
