#pragma once

#include "ntiu/grid.hpp"
#include "ntiu/params.hpp"

namespace ntiu {

// Matrix-free Crank-Nicolson system operator y = (I - (dt/2)(D*lap - adv)) x.
struct CnOperator {
  GridSpec grid;
  double D{0.0};
  AdvectionVector h{};
  double dt{0.0};

  void apply(const double* x, double* y) const;
  bool symmetric() const { return h.zero(); }
};

struct KrylovResult {
  int iterations{0};
  double rel_residual{0.0};  // ||r||_2 / ||rhs||_2 at exit
};

// Unpreconditioned conjugate gradient; x carries the initial guess on entry
// and the solution on exit. Throws SolverError on non-convergence.
KrylovResult cg(const CnOperator& A, const double* rhs, double* x, double tol,
                int max_iter);

// Unpreconditioned BiCGStab for the nonsymmetric (advective) system.
KrylovResult bicgstab(const CnOperator& A, const double* rhs, double* x,
                      double tol, int max_iter);

// Dispatch on symmetry: CG when h = 0, BiCGStab otherwise.
KrylovResult solve_cn(const CnOperator& A, const double* rhs, double* x,
                      double tol, int max_iter);

}  // namespace ntiu
