#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ntiu/errors.hpp"
#include "ntiu/krylov.hpp"
#include "ntiu/stepper.hpp"

using namespace ntiu;
using doctest::Approx;

namespace {

// Dense assembly of (I - dt/2 (D lap - adv)) through ghost_value, written
// against the operator definition rather than the kernel code.
std::vector<double> assemble_dense(const GridSpec& g, double D,
                                   const AdvectionVector& h, double dt) {
  const int n = g.nx * g.ny;
  std::vector<double> A(static_cast<std::size_t>(n) * n, 0.0);
  Field probe(g, Species::N, 0.0);
  for (int col = 0; col < n; ++col) {
    std::fill(probe.values.begin(), probe.values.end(), 0.0);
    probe.values[col] = 1.0;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double lap =
            D * ((ghost_value(probe, i - 1, j) - 2.0 * probe.at(i, j) +
                  ghost_value(probe, i + 1, j)) /
                     (g.dx * g.dx) +
                 (ghost_value(probe, i, j - 1) - 2.0 * probe.at(i, j) +
                  ghost_value(probe, i, j + 1)) /
                     (g.dy * g.dy));
        const double adv =
            h.hx / g.dx * (probe.at(i, j) - ghost_value(probe, i - 1, j)) +
            h.hy / g.dy * (probe.at(i, j) - ghost_value(probe, i, j - 1));
        const double Lij = lap - adv;
        const int row = static_cast<int>(g.index(i, j));
        A[static_cast<std::size_t>(row) * n + col] +=
            ((row == col) ? 1.0 : 0.0) - 0.5 * dt * Lij;
      }
    }
  }
  return A;
}

std::vector<double> dense_solve(std::vector<double> A, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int best = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(A[r * n + c]) > std::fabs(A[best * n + c])) best = r;
    for (int cc = 0; cc < n; ++cc) std::swap(A[c * n + cc], A[best * n + cc]);
    std::swap(b[c], b[best]);
    for (int r = c + 1; r < n; ++r) {
      const double f = A[r * n + c] / A[c * n + c];
      for (int cc = c; cc < n; ++cc) A[r * n + cc] -= f * A[c * n + cc];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= A[r * n + c] * x[c];
    x[r] = acc / A[r * n + r];
  }
  return x;
}

}  // namespace

TEST_CASE("cn solves match a dense elimination on a 3x3 grid") {
  const GridSpec g = GridSpec::unit_square(3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  StepperConfig cfg;
  cfg.krylov_tol = 1e-12;
  cfg.krylov_max = 500;

  SUBCASE("symmetric (CG)") {
    const double D = 1.0, dt = 0.01;
    Field rhs(g, Species::N);
    for (auto& v : rhs.values) v = uni(rng);
    cfg.dt = dt;
    const Field x = solve_cn_linear(rhs, D, {}, dt, cfg);
    const auto dx = dense_solve(assemble_dense(g, D, {}, dt), rhs.values);
    for (std::size_t i = 0; i < dx.size(); ++i)
      CHECK(x.values[i] == Approx(dx[i]).epsilon(1e-8));
  }

  SUBCASE("nonsymmetric (BiCGStab)") {
    const double D = 0.086, dt = 0.025;
    const AdvectionVector h{0.0864, 0.0864};
    Field rhs(g, Species::U);
    for (auto& v : rhs.values) v = uni(rng);
    const Field x = solve_cn_linear(rhs, D, h, dt, cfg);
    const auto dx = dense_solve(assemble_dense(g, D, h, dt), rhs.values);
    for (std::size_t i = 0; i < dx.size(); ++i)
      CHECK(x.values[i] == Approx(dx[i]).epsilon(1e-8));
  }
}

TEST_CASE("constants are eigenvectors with eigenvalue one") {
  const GridSpec g = GridSpec::unit_square(11);
  Field rhs(g, Species::N, 3.14);
  StepperConfig cfg;
  const Field x = solve_cn_linear(rhs, 0.086, {0.0864, 0.0864}, 0.025, cfg);
  for (double v : x.values) CHECK(v == 3.14);

  const CnOperator A{g, 0.086, {0.0864, 0.0864}, 0.025};
  std::vector<double> sol(rhs.values);
  const KrylovResult r = cg({g, 1.0, {}, 0.5}, rhs.data(), sol.data(), 1e-10, 100);
  CHECK(r.iterations == 0);  // initial guess = rhs is already exact
}

TEST_CASE("dt = 0 reduces to the identity") {
  const GridSpec g = GridSpec::unit_square(7);
  Field rhs(g, Species::N);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs.values[i] = 0.1 * i;
  StepperConfig cfg;
  const Field x = solve_cn_linear(rhs, 1.0, {}, 0.0, cfg);
  CHECK(x.values == rhs.values);
}

TEST_CASE("zero rhs yields the zero solution") {
  const GridSpec g = GridSpec::unit_square(5);
  Field rhs(g, Species::N, 0.0);
  StepperConfig cfg;
  const Field x = solve_cn_linear(rhs, 0.086, {0.0864, 0.0}, 0.025, cfg);
  for (double v : x.values) CHECK(v == 0.0);
}

TEST_CASE("non-convergence raises a solver error carrying the residual") {
  const GridSpec g = GridSpec::unit_square(33);
  Field rhs(g, Species::N);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (auto& v : rhs.values) v = uni(rng);
  std::vector<double> x(rhs.values);
  const CnOperator A{g, 1.0, {}, 10.0};  // stiff system
  try {
    cg(A, rhs.data(), x.data(), 1e-14, 1);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.rel_residual() > 0.0);
    CHECK(e.iterations() == 1);
  }
}
