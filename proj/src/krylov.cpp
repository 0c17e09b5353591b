#include "ntiu/krylov.hpp"

#include <cmath>
#include <vector>

#include "ntiu/errors.hpp"
#include "ntiu/kernels.hpp"

namespace ntiu {

void CnOperator::apply(const double* x, double* y) const {
  const double half = 0.5 * dt;
  kern::active().cn_apply(x, y, grid.nx, grid.ny,
                          half * D / (grid.dx * grid.dx),
                          half * D / (grid.dy * grid.dy),
                          half * h.hx / grid.dx, half * h.hy / grid.dy);
}

namespace {

double nrm2(const double* v, std::size_t n) {
  return std::sqrt(kern::active().dot(v, v, n));
}

}  // namespace

KrylovResult cg(const CnOperator& A, const double* rhs, double* x, double tol,
                int max_iter) {
  const std::size_t n = A.grid.size();
  const auto& k = kern::active();

  const double nrhs = nrm2(rhs, n);
  if (nrhs == 0.0) {
    for (std::size_t i = 0; i < n; ++i) x[i] = 0.0;
    return {0, 0.0};
  }

  std::vector<double> r(n), p(n), Ap(n);
  A.apply(x, Ap.data());
  k.axpby(1.0, rhs, -1.0, Ap.data(), r.data(), n);

  double rs = k.dot(r.data(), r.data(), n);
  if (std::sqrt(rs) <= tol * nrhs) return {0, std::sqrt(rs) / nrhs};

  p = r;
  for (int it = 1; it <= max_iter; ++it) {
    A.apply(p.data(), Ap.data());
    const double pAp = k.dot(p.data(), Ap.data(), n);
    const double alpha = rs / pAp;
    k.axpby(alpha, p.data(), 1.0, x, x, n);
    k.axpby(-alpha, Ap.data(), 1.0, r.data(), r.data(), n);
    const double rs2 = k.dot(r.data(), r.data(), n);
    if (std::sqrt(rs2) <= tol * nrhs) return {it, std::sqrt(rs2) / nrhs};
    k.axpby(1.0, r.data(), rs2 / rs, p.data(), p.data(), n);
    rs = rs2;
  }
  throw SolverError("cg: no convergence", std::sqrt(rs) / nrhs, max_iter);
}

KrylovResult bicgstab(const CnOperator& A, const double* rhs, double* x,
                      double tol, int max_iter) {
  const std::size_t n = A.grid.size();
  const auto& k = kern::active();

  const double nrhs = nrm2(rhs, n);
  if (nrhs == 0.0) {
    for (std::size_t i = 0; i < n; ++i) x[i] = 0.0;
    return {0, 0.0};
  }

  std::vector<double> r(n), rt(n), p(n, 0.0), v(n, 0.0), t(n);
  A.apply(x, t.data());
  k.axpby(1.0, rhs, -1.0, t.data(), r.data(), n);
  rt = r;

  double rn = nrm2(r.data(), n);
  if (rn <= tol * nrhs) return {0, rn / nrhs};

  double rho = 1.0, alpha = 1.0, omega = 1.0;
  for (int it = 1; it <= max_iter; ++it) {
    const double rho1 = k.dot(rt.data(), r.data(), n);
    if (rho1 == 0.0)
      throw SolverError("bicgstab: rho breakdown", rn / nrhs, it);
    if (it == 1) {
      p = r;
    } else {
      const double beta = (rho1 / rho) * (alpha / omega);
      k.axpby(-omega, v.data(), 1.0, p.data(), p.data(), n);
      k.axpby(1.0, r.data(), beta, p.data(), p.data(), n);
    }
    A.apply(p.data(), v.data());
    alpha = rho1 / k.dot(rt.data(), v.data(), n);
    k.axpby(-alpha, v.data(), 1.0, r.data(), r.data(), n);  // r <- s
    rn = nrm2(r.data(), n);
    if (rn <= tol * nrhs) {
      k.axpby(alpha, p.data(), 1.0, x, x, n);
      return {it, rn / nrhs};
    }
    A.apply(r.data(), t.data());
    const double tt = k.dot(t.data(), t.data(), n);
    if (tt == 0.0)
      throw SolverError("bicgstab: t breakdown", rn / nrhs, it);
    omega = k.dot(t.data(), r.data(), n) / tt;
    if (omega == 0.0)
      throw SolverError("bicgstab: omega breakdown", rn / nrhs, it);
    k.axpby(alpha, p.data(), 1.0, x, x, n);
    k.axpby(omega, r.data(), 1.0, x, x, n);
    k.axpby(-omega, t.data(), 1.0, r.data(), r.data(), n);
    rho = rho1;
    rn = nrm2(r.data(), n);
    if (rn <= tol * nrhs) return {it, rn / nrhs};
  }
  throw SolverError("bicgstab: no convergence", rn / nrhs, max_iter);
}

KrylovResult solve_cn(const CnOperator& A, const double* rhs, double* x,
                      double tol, int max_iter) {
  return A.symmetric() ? cg(A, rhs, x, tol, max_iter)
                       : bicgstab(A, rhs, x, tol, max_iter);
}

}  // namespace ntiu
