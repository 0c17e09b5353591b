#include <cmath>

#include "ntiu/state.hpp"

namespace ntiu {
namespace {

constexpr double kFociX[3] = {0.35, 0.65, 0.50};
constexpr double kFociY[3] = {0.35, 0.35, 0.60};
constexpr double kFocusRadius = 0.25;

// Sum of cosine bumps, one per focus.
double bump(double x, double y) {
  double b = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double r = std::hypot(x - kFociX[k], y - kFociY[k]);
    if (r <= kFocusRadius)
      b += 0.5 * (1.0 + std::cos(M_PI * r / kFocusRadius));
  }
  return b;
}

double sech(double z) { return 1.0 / std::cosh(z); }

}  // namespace

StateSnapshot build_initial_state(const GridSpec& grid, const ParameterSet& p) {
  StateSnapshot s(grid, 0.0);
  const double KT = p.K_T();
  const double KN = p.K_N();
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const double y = grid.y(j);
      const double B = bump(x, y);
      const std::size_t id = grid.index(i, j);
      s.T().values[id] = std::min(0.05 * KT + 0.20 * KT * B, 0.25 * KT);
      s.N().values[id] = std::min(0.65 * KN * (1.0 - 0.10 * B), 0.75 * KN);
      const double rI = std::hypot(x - 0.50, y - 0.43);
      const double sh = sech(rI);
      s.I().values[id] =
          std::max(3.16e5 * (0.375 - 0.235 * sh * sh), 0.0);
      // U starts at zero: no drug before treatment.
    }
  }
  return s;
}

}  // namespace ntiu
