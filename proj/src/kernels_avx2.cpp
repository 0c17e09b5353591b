#include "ntiu/kernels.hpp"

#if defined(NTIU_HAVE_AVX2)

#include <immintrin.h>

// The vector bodies replicate the scalar expression trees exactly (no FMA,
// same association), so results are bit-identical to the scalar backend.

namespace ntiu::kern {
namespace {

inline const double* row_south(const double* u, int j, int nx) {
  return (j > 0) ? u + static_cast<std::size_t>(j - 1) * nx
                 : u + static_cast<std::size_t>(j) * nx;
}
inline const double* row_north(const double* u, int j, int nx, int ny) {
  return (j < ny - 1) ? u + static_cast<std::size_t>(j + 1) * nx
                      : u + static_cast<std::size_t>(j) * nx;
}

void laplacian_avx2(const double* u, double* out, int nx, int ny,
                    double ax, double ay) {
  const __m256d axv = _mm256_set1_pd(ax);
  const __m256d ayv = _mm256_set1_pd(ay);
  const __m256d two = _mm256_set1_pd(2.0);
  for (int j = 0; j < ny; ++j) {
    const double* c = u + static_cast<std::size_t>(j) * nx;
    const double* s = row_south(u, j, nx);
    const double* n = row_north(u, j, nx, ny);
    double* o = out + static_cast<std::size_t>(j) * nx;
    o[0] = ax * (c[0] - 2.0 * c[0] + c[1]) + ay * (s[0] - 2.0 * c[0] + n[0]);
    int i = 1;
    for (; i + 4 <= nx - 1; i += 4) {
      const __m256d cc = _mm256_loadu_pd(c + i);
      const __m256d lx = _mm256_add_pd(
          _mm256_sub_pd(_mm256_loadu_pd(c + i - 1), _mm256_mul_pd(two, cc)),
          _mm256_loadu_pd(c + i + 1));
      const __m256d ly = _mm256_add_pd(
          _mm256_sub_pd(_mm256_loadu_pd(s + i), _mm256_mul_pd(two, cc)),
          _mm256_loadu_pd(n + i));
      _mm256_storeu_pd(
          o + i, _mm256_add_pd(_mm256_mul_pd(axv, lx), _mm256_mul_pd(ayv, ly)));
    }
    for (; i < nx - 1; ++i) {
      o[i] = ax * (c[i - 1] - 2.0 * c[i] + c[i + 1]) +
             ay * (s[i] - 2.0 * c[i] + n[i]);
    }
    const int l = nx - 1;
    o[l] = ax * (c[l - 1] - 2.0 * c[l] + c[l]) + ay * (s[l] - 2.0 * c[l] + n[l]);
  }
}

void upwind_avx2(const double* u, double* out, int nx, int ny, double bx,
                 double by) {
  const __m256d bxv = _mm256_set1_pd(bx);
  const __m256d byv = _mm256_set1_pd(by);
  for (int j = 0; j < ny; ++j) {
    const double* c = u + static_cast<std::size_t>(j) * nx;
    const double* s = row_south(u, j, nx);
    double* o = out + static_cast<std::size_t>(j) * nx;
    o[0] = bx * (c[0] - c[0]) + by * (c[0] - s[0]);
    int i = 1;
    for (; i + 4 <= nx; i += 4) {
      const __m256d cc = _mm256_loadu_pd(c + i);
      const __m256d dx = _mm256_sub_pd(cc, _mm256_loadu_pd(c + i - 1));
      const __m256d dy = _mm256_sub_pd(cc, _mm256_loadu_pd(s + i));
      _mm256_storeu_pd(
          o + i, _mm256_add_pd(_mm256_mul_pd(bxv, dx), _mm256_mul_pd(byv, dy)));
    }
    for (; i < nx; ++i) {
      o[i] = bx * (c[i] - c[i - 1]) + by * (c[i] - s[i]);
    }
  }
}

void cn_apply_avx2(const double* u, double* out, int nx, int ny, double ax,
                   double ay, double bx, double by) {
  const __m256d axv = _mm256_set1_pd(ax);
  const __m256d ayv = _mm256_set1_pd(ay);
  const __m256d bxv = _mm256_set1_pd(bx);
  const __m256d byv = _mm256_set1_pd(by);
  const __m256d two = _mm256_set1_pd(2.0);
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
    int i = 1;
    for (; i + 4 <= nx - 1; i += 4) {
      const __m256d cc = _mm256_loadu_pd(c + i);
      const __m256d w = _mm256_loadu_pd(c + i - 1);
      const __m256d sv = _mm256_loadu_pd(s + i);
      const __m256d lx = _mm256_add_pd(_mm256_sub_pd(w, _mm256_mul_pd(two, cc)),
                                       _mm256_loadu_pd(c + i + 1));
      const __m256d ly = _mm256_add_pd(_mm256_sub_pd(sv, _mm256_mul_pd(two, cc)),
                                       _mm256_loadu_pd(n + i));
      const __m256d lap =
          _mm256_add_pd(_mm256_mul_pd(axv, lx), _mm256_mul_pd(ayv, ly));
      const __m256d adv =
          _mm256_add_pd(_mm256_mul_pd(bxv, _mm256_sub_pd(cc, w)),
                        _mm256_mul_pd(byv, _mm256_sub_pd(cc, sv)));
      _mm256_storeu_pd(o + i, _mm256_add_pd(_mm256_sub_pd(cc, lap), adv));
    }
    for (; i < nx - 1; ++i) {
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

void axpby_avx2(double a, const double* x, double b, const double* y,
                double* out, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  const __m256d bv = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(
        out + i, _mm256_add_pd(_mm256_mul_pd(av, xv), _mm256_mul_pd(bv, yv)));
  }
  for (; i < n; ++i) {
    out[i] = a * x[i] + b * y[i];
  }
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc,
                        _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                      _mm256_loadu_pd(y + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double sum = ((lane[0] + lane[1]) + lane[2]) + lane[3];
  for (; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend b{"avx2", laplacian_avx2, upwind_avx2, cn_apply_avx2,
                         axpby_avx2, dot_avx2};
  return b;
}

}  // namespace ntiu::kern

#else  // !NTIU_HAVE_AVX2

namespace ntiu::kern {
const Backend& avx2_backend() { return scalar_backend(); }
}  // namespace ntiu::kern

#endif
