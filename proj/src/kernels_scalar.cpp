#include "ntiu/kernels.hpp"

namespace ntiu::kern {
namespace {

// Row pointers with the y-mirror applied: row -1 aliases row 0 and row ny
// aliases row ny-1.
inline const double* row_south(const double* u, int j, int nx) {
  return (j > 0) ? u + static_cast<std::size_t>(j - 1) * nx
                 : u + static_cast<std::size_t>(j) * nx;
}
inline const double* row_north(const double* u, int j, int nx, int ny) {
  return (j < ny - 1) ? u + static_cast<std::size_t>(j + 1) * nx
                      : u + static_cast<std::size_t>(j) * nx;
}

void laplacian_scalar(const double* u, double* out, int nx, int ny,
                      double ax, double ay) {
  for (int j = 0; j < ny; ++j) {
    const double* c = u + static_cast<std::size_t>(j) * nx;
    const double* s = row_south(u, j, nx);
    const double* n = row_north(u, j, nx, ny);
    double* o = out + static_cast<std::size_t>(j) * nx;
    o[0] = ax * (c[0] - 2.0 * c[0] + c[1]) + ay * (s[0] - 2.0 * c[0] + n[0]);
    for (int i = 1; i < nx - 1; ++i) {
      o[i] = ax * (c[i - 1] - 2.0 * c[i] + c[i + 1]) +
             ay * (s[i] - 2.0 * c[i] + n[i]);
    }
    const int l = nx - 1;
    o[l] = ax * (c[l - 1] - 2.0 * c[l] + c[l]) + ay * (s[l] - 2.0 * c[l] + n[l]);
  }
}

void upwind_scalar(const double* u, double* out, int nx, int ny,
                   double bx, double by) {
  for (int j = 0; j < ny; ++j) {
    const double* c = u + static_cast<std::size_t>(j) * nx;
    const double* s = row_south(u, j, nx);
    double* o = out + static_cast<std::size_t>(j) * nx;
    o[0] = bx * (c[0] - c[0]) + by * (c[0] - s[0]);
    for (int i = 1; i < nx; ++i) {
      o[i] = bx * (c[i] - c[i - 1]) + by * (c[i] - s[i]);
    }
  }
}

void cn_apply_scalar(const double* u, double* out, int nx, int ny,
                     double ax, double ay, double bx, double by) {
  for (int j = 0; j < ny; ++j) {
    const double* c = u + static_cast<std::size_t>(j) * nx;
    const double* s = row_south(u, j, nx);
    const double* n = row_north(u, j, nx, ny);
    double* o = out + static_cast<std::size_t>(j) * nx;
    {
      const double lap =
          ax * (c[0] - 2.0 * c[0] + c[1]) + ay * (s[0] - 2.0 * c[0] + n[0]);
      const double adv = bx * (c[0] - c[0]) + by * (c[0] - s[0]);
      o[0] = c[0] - lap + adv;
    }
    for (int i = 1; i < nx - 1; ++i) {
      const double lap = ax * (c[i - 1] - 2.0 * c[i] + c[i + 1]) +
                         ay * (s[i] - 2.0 * c[i] + n[i]);
      const double adv = bx * (c[i] - c[i - 1]) + by * (c[i] - s[i]);
      o[i] = c[i] - lap + adv;
    }
    {
      const int l = nx - 1;
      const double lap =
          ax * (c[l - 1] - 2.0 * c[l] + c[l]) + ay * (s[l] - 2.0 * c[l] + n[l]);
      const double adv = bx * (c[l] - c[l - 1]) + by * (c[l] - s[l]);
      o[l] = c[l] - lap + adv;
    }
  }
}

void axpby_scalar(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a * x[i] + b * y[i];
  }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i] * y[i];
  }
  return acc;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", laplacian_scalar, upwind_scalar,
                         cn_apply_scalar, axpby_scalar, dot_scalar};
  return b;
}

}  // namespace ntiu::kern
