#include "ntiu/params.hpp"

#include <cmath>

#include "ntiu/errors.hpp"

namespace ntiu {

namespace {
void require_positive(double v, const char* key) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError(key, std::string(key) + " must be a positive finite number");
}
}  // namespace

void ParameterSet::validate() const {
  require_positive(r1, "r1");
  require_positive(r2, "r2");
  require_positive(b1, "b1");
  require_positive(b2, "b2");
  require_positive(A1, "A1");
  require_positive(A2, "A2");
  require_positive(c1, "c1");
  require_positive(c2, "c2");
  require_positive(c3, "c3");
  require_positive(c4, "c4");
  require_positive(a0, "a0");
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  require_positive(a3, "a3");
  require_positive(s, "s");
  require_positive(rho, "rho");
  require_positive(alpha, "alpha");
  require_positive(k1, "k1");
  require_positive(k2, "k2");
  require_positive(delta, "delta");
  require_positive(D1, "D1");
  require_positive(D2, "D2");
  require_positive(D3, "D3");
  require_positive(D4, "D4");
  if (h4.hx < 0.0 || h4.hy < 0.0)
    throw ConfigError("h4x", "advection components must be nonnegative");
  if (!(A1 < 1.0 / b1))
    throw ConfigError("A1", "Allee threshold A1 must lie below 1/b1");
  if (!(A2 < 1.0 / b2))
    throw ConfigError("A2", "Allee threshold A2 must lie below 1/b2");
}

void DosingSchedule::validate() const {
  require_positive(V0, "V0");
  require_positive(tau, "tau");
  require_positive(period, "period");
  if (n_pulses < 1)
    throw ConfigError("n_pulses", "n_pulses must be at least 1");
  if (tau > period)
    throw ConfigError("tau", "pulse width tau must not exceed the period");
}

double dose_rate(const DosingSchedule& sched, double t) {
  if (t < 0.0) return 0.0;
  // Pulse n covers [(n-1)P, (n-1)P + tau); only the enclosing period can
  // match. Membership compares against the computed right endpoint so that
  // t = t_n + tau lands exactly on the open side.
  const double k = std::floor(t / sched.period);
  if (k >= static_cast<double>(sched.n_pulses)) return 0.0;
  const double t_n = k * sched.period;
  return (t >= t_n && t < t_n + sched.tau) ? sched.V0 : 0.0;
}

}  // namespace ntiu
