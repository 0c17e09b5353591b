#include "ntiu/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ntiu/errors.hpp"

namespace ntiu {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::NT: return "NT";
    case Scheme::NTI: return "NTI";
    case Scheme::NTIU: return "NTIU";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "NT") return Scheme::NT;
  if (name == "NTI") return Scheme::NTI;
  if (name == "NTIU") return Scheme::NTIU;
  throw ConfigError("scheme", "scheme must be one of NT, NTI, NTIU");
}

void ScenarioConfig::validate() const {
  params.validate();
  stepper.validate();
  if (scheme == Scheme::NTIU) {
    if (!schedule)
      throw ConfigError("schedule", "NTIU scheme requires a dosing schedule");
    schedule->validate();
  }
  if (!(horizon > 0.0)) throw ConfigError("horizon", "horizon must be positive");
  if (!(theta_front > 0.0 && theta_front < 1.0))
    throw ConfigError("theta_front", "theta_front must lie in (0,1)");
}

const MetricsRow& MetricsSeries::at_time(double t) const {
  for (const auto& r : rows) {
    if (std::fabs(r.t - t) <= 1e-9 * std::max(1.0, std::fabs(t))) return r;
  }
  throw std::out_of_range("metrics: no row at requested time");
}

DosingSchedule make_case(int case_id, double period) {
  DosingSchedule d;
  d.period = period;
  switch (case_id) {
    case 1: d.V0 = 1.00; d.tau = 0.30; d.n_pulses = 7; break;
    case 2: d.V0 = 0.60; d.tau = 0.50; d.n_pulses = 7; break;
    case 3: d.V0 = 3.00; d.tau = 0.35; d.n_pulses = 7; break;
    case 4: d.V0 = 2.10; d.tau = 0.35; d.n_pulses = 10; break;
    default:
      throw ConfigError("case", "dosing case must be 1, 2, 3, or 4");
  }
  d.validate();
  return d;
}

double tumor_front_area(const Field& T, double K_T, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw ConfigError("theta_front", "theta must lie in (0,1)");
  const double level = theta * K_T;
  std::size_t count = 0;
  for (double v : T.values)
    if (v >= level) ++count;
  return static_cast<double>(count) * T.grid.dx * T.grid.dy;
}

MetricsRow compute_metrics(const StateSnapshot& s, const ParameterSet& p,
                           double theta_front) {
  MetricsRow r;
  r.t = s.time;
  r.peak_N = s.N().max_value();
  r.peak_T = s.T().max_value();
  r.peak_I = s.I().max_value();
  r.peak_U = s.U().max_value();
  r.front_area = tumor_front_area(s.T(), p.K_T(), theta_front);
  r.mass_N = integrate(s.N());
  r.mass_T = integrate(s.T());
  r.mass_I = integrate(s.I());
  r.mass_U = integrate(s.U());
  return r;
}

Envelopes envelopes_from_initial(const StateSnapshot& initial,
                                 const ParameterSet& p,
                                 const DosingSchedule* sched) {
  Envelopes e;
  e.M1 = std::max({1.0 / p.b2, p.A2, initial.N().max_value()});
  e.M2 = std::max({1.0 / p.b1, p.A1, initial.T().max_value()});
  const double v_max = sched ? sched->V0 : 0.0;
  e.M3 = std::max(initial.U().max_value(), v_max / p.k2);
  return e;
}

FieldBounds to_field_bounds(const Envelopes& env) {
  FieldBounds b;
  b.upper = {env.M1, env.M2, 0.0, env.M3};
  b.has_upper = {true, true, false, env.M3 > 0.0};
  return b;
}

namespace {

FieldEnvelopeCheck check_field(const Field& f, double bound, bool has_bound) {
  FieldEnvelopeCheck c;
  c.min = f.min_value();
  c.max = f.max_value();
  c.bound = bound;
  c.has_bound = has_bound;
  const double scale = std::max(has_bound ? bound : c.max, 1.0);
  c.nonneg_ok = c.min >= -1e-9 * scale && f.finite();
  c.upper_ok = !has_bound || c.max <= bound * (1.0 + 1e-9);
  return c;
}

}  // namespace

EnvelopeReport bounds_monitor(const StateSnapshot& s, const Envelopes& env) {
  EnvelopeReport rep;
  rep.fields[0] = check_field(s.N(), env.M1, true);
  rep.fields[1] = check_field(s.T(), env.M2, true);
  rep.fields[2] = check_field(s.I(), 0.0, false);
  rep.fields[3] = check_field(s.U(), env.M3, env.M3 > 0.0);
  rep.all_ok = true;
  for (const auto& c : rep.fields)
    rep.all_ok = rep.all_ok && c.nonneg_ok && c.upper_ok;
  return rep;
}

EnvelopeReport bounds_monitor(const StateSnapshot& s, const ParameterSet& p,
                              const DosingSchedule* sched) {
  return bounds_monitor(s, envelopes_from_initial(s, p, sched));
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  StateSnapshot initial = build_initial_state(cfg.grid, cfg.params);

  StepProblem pb = make_model_problem(cfg.grid, cfg.params);
  switch (cfg.scheme) {
    case Scheme::NT: pb.active = {true, true, false, false}; break;
    case Scheme::NTI: pb.active = {true, true, true, false}; break;
    case Scheme::NTIU: pb.active = {true, true, true, true}; break;
  }
  // Disabled species are held at zero for the whole run.
  for (int k = 0; k < 4; ++k)
    if (!pb.active[k])
      std::fill(initial.fields[k].values.begin(),
                initial.fields[k].values.end(), 0.0);
  const DosingSchedule* sched =
      (cfg.scheme == Scheme::NTIU && cfg.schedule) ? &*cfg.schedule : nullptr;
  ModelReactions rx(cfg.params, sched);
  pb.reactions = &rx;
  const FieldBounds bounds =
      to_field_bounds(envelopes_from_initial(initial, cfg.params, sched));
  pb.bounds = &bounds;

  ScenarioResult out;
  RunResult rr = run(pb, initial, cfg.horizon, cfg.stepper, cfg.snapshot_times);
  out.snapshots = std::move(rr.snapshots);
  out.reports = std::move(rr.reports);
  out.report_times = std::move(rr.report_times);
  out.metrics.rows.reserve(out.snapshots.size());
  for (const auto& s : out.snapshots)
    out.metrics.rows.push_back(compute_metrics(s, cfg.params, cfg.theta_front));
  return out;
}

namespace {

bool strictly_min(double candidate, std::initializer_list<double> others) {
  for (double o : others)
    if (!(candidate < o)) return false;
  return true;
}

}  // namespace

CompareVerdicts compare_cases(const CompareInputs& in) {
  CompareVerdicts v;
  const double d1 = in.day_mid, d2 = in.day_end;

  const auto& c1m = in.cases[0].at_time(d1);
  const auto& c2m = in.cases[1].at_time(d1);
  const auto& c3m = in.cases[2].at_time(d1);
  const auto& c4m = in.cases[3].at_time(d1);
  const auto& c1e = in.cases[0].at_time(d2);
  const auto& c2e = in.cases[1].at_time(d2);
  const auto& c3e = in.cases[2].at_time(d2);
  const auto& c4e = in.cases[3].at_time(d2);

  v.case3_min_peak_T_mid =
      strictly_min(c3m.peak_T, {c1m.peak_T, c2m.peak_T, c4m.peak_T});

  v.case4_min_front_both =
      strictly_min(c4m.front_area, {c1m.front_area, c2m.front_area, c3m.front_area}) &&
      strictly_min(c4e.front_area, {c1e.front_area, c2e.front_area, c3e.front_area});

  const auto& ntm = in.nt.at_time(d1);
  const auto& nte = in.nt.at_time(d2);
  const auto& ntim = in.nti.at_time(d1);
  const auto& ntie = in.nti.at_time(d2);
  v.ntiu_front_below_baselines = true;
  for (const MetricsRow* r : {&c1m, &c2m, &c3m, &c4m}) {
    v.ntiu_front_below_baselines = v.ntiu_front_below_baselines &&
                                   r->front_area < ntm.front_area &&
                                   r->front_area < ntim.front_area;
  }
  for (const MetricsRow* r : {&c1e, &c2e, &c3e, &c4e}) {
    v.ntiu_front_below_baselines = v.ntiu_front_below_baselines &&
                                   r->front_area < nte.front_area &&
                                   r->front_area < ntie.front_area;
  }

  v.case3_lowest_peak_N_end = c3e.peak_N < c4e.peak_N &&
                              c4e.peak_N < c1e.peak_N &&
                              c4e.peak_N < c2e.peak_N;
  return v;
}

std::string format_verdict_report(const CompareInputs& in,
                                  const CompareVerdicts& v) {
  std::ostringstream os;
  auto line = [&os](const char* what, bool ok) {
    os << (ok ? "PASS" : "FAIL") << "  " << what << "\n";
  };
  os << "dosing-case ordering verdicts (pulse period P=" << in.period
     << " day; orderings are conditional on this period)\n";
  line("case 3 has the minimal tumor peak at day 14", v.case3_min_peak_T_mid);
  line("case 4 has the minimal invasive-front area at days 14 and 28",
       v.case4_min_front_both);
  line("every dosing case keeps the front smaller than NT and NTI at days 14 and 28",
       v.ntiu_front_below_baselines);
  line("normal-tissue peak at day 28: case 3 lowest, then case 4, below cases 1 and 2",
       v.case3_lowest_peak_N_end);

  os << "\n            day14.peak_T    day28.peak_T  day14.front  day28.front"
        "    day28.peak_N\n";
  auto row = [&os](const char* name, const MetricsRow& m, const MetricsRow& e) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-8s %15.6e %15.6e %12.6f %12.6f %15.6e\n",
                  name, m.peak_T, e.peak_T, m.front_area, e.front_area,
                  e.peak_N);
    os << buf;
  };
  row("NT", in.nt.at_time(in.day_mid), in.nt.at_time(in.day_end));
  row("NTI", in.nti.at_time(in.day_mid), in.nti.at_time(in.day_end));
  for (int c = 0; c < 4; ++c) {
    const std::string name = "case" + std::to_string(c + 1);
    row(name.c_str(), in.cases[c].at_time(in.day_mid),
        in.cases[c].at_time(in.day_end));
  }
  return os.str();
}

}  // namespace ntiu
