#pragma once

#include <string>
#include <vector>

namespace ntiu {

enum class Species { N = 0, T = 1, I = 2, U = 3 };
const char* species_name(Species s);

// Uniform Cartesian node-centered grid on [0,Lx]x[0,Ly]:
// x_i = i*dx, y_j = j*dy with dx = Lx/(nx-1), dy = Ly/(ny-1).
struct GridSpec {
  double Lx{1.0};
  double Ly{1.0};
  int nx{101};
  int ny{101};
  double dx{0.01};
  double dy{0.01};

  GridSpec() = default;
  GridSpec(double lx, double ly, int nx_, int ny_);
  static GridSpec unit_square(int n) { return GridSpec(1.0, 1.0, n, n); }

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  double x(int i) const { return i * dx; }
  double y(int j) const { return j * dy; }

  bool same_layout(const GridSpec& o) const {
    return nx == o.nx && ny == o.ny && Lx == o.Lx && Ly == o.Ly;
  }
};

// One scalar unknown sampled on the grid nodes, row-major with x fastest.
struct Field {
  GridSpec grid;
  Species name{Species::N};
  std::vector<double> values;

  Field() = default;
  Field(const GridSpec& g, Species s, double fill = 0.0)
      : grid(g), name(s), values(g.size(), fill) {}

  double& at(int i, int j) { return values[grid.index(i, j)]; }
  double at(int i, int j) const { return values[grid.index(i, j)]; }
  double* data() { return values.data(); }
  const double* data() const { return values.data(); }
  std::size_t size() const { return values.size(); }

  double max_value() const;
  double min_value() const;
  bool finite() const;
};

// Mirrored ghost access: index -1 maps to 0 and nx (resp. ny) maps to
// nx-1 (ny-1); interior indices return the stored value. Indices outside
// the single ghost layer throw std::out_of_range.
double ghost_value(const Field& f, int i, int j);

// Sum of values * dx*dy with uniform node weights. Summation is a fixed
// row-major pairwise reduction, so the result is reproducible regardless
// of kernel backend or threading.
double integrate(const Field& f);

}  // namespace ntiu
