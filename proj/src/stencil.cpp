#include "ntiu/stencil.hpp"

#include <stdexcept>

#include "ntiu/kernels.hpp"

namespace ntiu {

Field apply_laplacian(const Field& f, double D) {
  if (D < 0.0) throw std::invalid_argument("apply_laplacian: D must be >= 0");
  Field out(f.grid, f.name);
  const double ax = D / (f.grid.dx * f.grid.dx);
  const double ay = D / (f.grid.dy * f.grid.dy);
  kern::active().laplacian(f.data(), out.data(), f.grid.nx, f.grid.ny, ax, ay);
  return out;
}

Field apply_upwind_advection(const Field& f, const AdvectionVector& h) {
  if (h.hx < 0.0 || h.hy < 0.0)
    throw std::invalid_argument(
        "apply_upwind_advection: negative advection components are not "
        "supported by the one-sided upwind formula");
  Field out(f.grid, f.name);
  kern::active().upwind(f.data(), out.data(), f.grid.nx, f.grid.ny,
                        h.hx / f.grid.dx, h.hy / f.grid.dy);
  return out;
}

double courant_number(const AdvectionVector& h, const GridSpec& grid,
                      double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("courant_number: dt must be > 0");
  const double hx = h.hx < 0.0 ? -h.hx : h.hx;
  const double hy = h.hy < 0.0 ? -h.hy : h.hy;
  return hx * dt / grid.dx + hy * dt / grid.dy;
}

Field cn_system_apply(const Field& f, double D, const AdvectionVector& h,
                      double dt) {
  if (D < 0.0 || h.hx < 0.0 || h.hy < 0.0)
    throw std::invalid_argument("cn_system_apply: invalid operator inputs");
  Field out(f.grid, f.name);
  const double half = 0.5 * dt;
  kern::active().cn_apply(f.data(), out.data(), f.grid.nx, f.grid.ny,
                          half * D / (f.grid.dx * f.grid.dx),
                          half * D / (f.grid.dy * f.grid.dy),
                          half * h.hx / f.grid.dx, half * h.hy / f.grid.dy);
  return out;
}

}  // namespace ntiu
