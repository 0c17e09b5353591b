#include "ntiu/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "ntiu/errors.hpp"
#include "ntiu/reactions.hpp"

namespace ntiu {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // \n endings on every platform
  if (!out) throw ConfigError("output", "cannot open output file: " + path);
  return out;
}

// Locale-independent, 17 significant digits.
void put(std::ofstream& out, double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  out.write(buf, res.ptr - buf);
}

}  // namespace

void write_snapshot_csv(const StateSnapshot& s, const std::string& path) {
  auto out = open_out(path);
  out << "x,y,N,T,I,U\n";
  const GridSpec& g = s.grid();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t id = g.index(i, j);
      put(out, g.x(i));
      out << ',';
      put(out, g.y(j));
      for (int k = 0; k < 4; ++k) {
        out << ',';
        put(out, s.fields[k].values[id]);
      }
      out << '\n';
    }
  }
}

void write_metrics_csv(const MetricsSeries& m, const std::string& path) {
  auto out = open_out(path);
  out << "t,peak_N,peak_T,peak_I,peak_U,front_area,mass_N,mass_T,mass_I,mass_U\n";
  for (const auto& r : m.rows) {
    const double cols[] = {r.t,      r.peak_N, r.peak_T, r.peak_I, r.peak_U,
                           r.front_area, r.mass_N, r.mass_T, r.mass_I, r.mass_U};
    for (int c = 0; c < 10; ++c) {
      if (c) out << ',';
      put(out, cols[c]);
    }
    out << '\n';
  }
}

void write_diagnostics_csv(const std::vector<double>& times,
                           const std::vector<StepReport>& reports,
                           const std::string& path) {
  auto out = open_out(path);
  out << "t,field,picard_iters,krylov_iters,residual,min_value,max_value,"
         "clamped_nodes\n";
  for (std::size_t n = 0; n < reports.size(); ++n) {
    const StepReport& r = reports[n];
    for (int k = 0; k < 4; ++k) {
      put(out, times[n]);
      out << ',' << species_name(static_cast<Species>(k)) << ','
          << r.picard_iterations << ',' << r.krylov_iterations_per_field[k]
          << ',';
      put(out, r.field_residual[k]);
      out << ',';
      put(out, r.min_value[k]);
      out << ',';
      put(out, r.max_value[k]);
      out << ',' << r.clamped_nodes[k] << '\n';
    }
  }
}

void write_convergence_csv(const ConvergenceReport& rep,
                           const std::string& path) {
  auto out = open_out(path);
  out << "h,err_inf,err_l2,order_inf,order_l2\n";
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    put(out, rep.levels[i].h);
    out << ',';
    put(out, rep.levels[i].err_inf);
    out << ',';
    put(out, rep.levels[i].err_l2);
    out << ',';
    if (i > 0) put(out, rep.orders_inf[i - 1]);
    out << ',';
    if (i > 0) put(out, rep.orders_l2[i - 1]);
    out << '\n';
  }
}

void write_gate_curve_csv(double delta, const std::string& path) {
  auto out = open_out(path);
  out << "xi,H\n";
  const int samples = 601;
  for (int k = 0; k < samples; ++k) {
    const double xi = -delta + 3.0 * delta * k / (samples - 1);
    put(out, xi);
    out << ',';
    put(out, smooth_gate(xi, delta));
    out << '\n';
  }
}

void write_dose_curve_csv(const DosingSchedule& sched, double t_end,
                          double dt_plot, const std::string& path) {
  auto out = open_out(path);
  out << "t,v\n";
  const long n = std::lround(t_end / dt_plot);
  for (long k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * dt_plot;
    put(out, t);
    out << ',';
    put(out, dose_rate(sched, t));
    out << '\n';
  }
}

}  // namespace ntiu
