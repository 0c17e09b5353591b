#include "ntiu/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ntiu/errors.hpp"

namespace ntiu {

const char* species_name(Species s) {
  switch (s) {
    case Species::N: return "N";
    case Species::T: return "T";
    case Species::I: return "I";
    case Species::U: return "U";
  }
  return "?";
}

GridSpec::GridSpec(double lx, double ly, int nx_, int ny_)
    : Lx(lx), Ly(ly), nx(nx_), ny(ny_) {
  if (nx < 3 || ny < 3)
    throw ConfigError("Nx", "grid needs at least 3 nodes per direction");
  if (!(Lx > 0.0) || !(Ly > 0.0))
    throw ConfigError("Lx", "domain lengths must be positive");
  dx = Lx / (nx - 1);
  dy = Ly / (ny - 1);
}

double Field::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

double Field::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

bool Field::finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double ghost_value(const Field& f, int i, int j) {
  const int nx = f.grid.nx;
  const int ny = f.grid.ny;
  if (i < -1 || i > nx || j < -1 || j > ny)
    throw std::out_of_range("ghost_value: index outside one ghost layer");
  const int ii = (i < 0) ? 0 : (i >= nx ? nx - 1 : i);
  const int jj = (j < 0) ? 0 : (j >= ny ? ny - 1 : j);
  return f.at(ii, jj);
}

namespace {

// Pairwise reduction with a fixed sequential base block.
double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 32) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

double integrate(const Field& f) {
  return pairwise_sum(f.values.data(), f.values.size()) * f.grid.dx * f.grid.dy;
}

}  // namespace ntiu
