#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ntiu/stepper.hpp"

namespace ntiu {

enum class Scheme { NT, NTI, NTIU };
const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // throws ConfigError

struct ScenarioConfig {
  Scheme scheme{Scheme::NTIU};
  ParameterSet params{};
  std::optional<DosingSchedule> schedule{DosingSchedule{}};
  GridSpec grid{};
  StepperConfig stepper{};
  double horizon{28.0};
  std::vector<double> snapshot_times{0.0, 14.0, 28.0};
  double theta_front{0.5};  // front threshold as a fraction of K_T

  void validate() const;  // NTIU requires a schedule; parameters validated
};

struct MetricsRow {
  double t{0.0};
  double peak_N{0.0}, peak_T{0.0}, peak_I{0.0}, peak_U{0.0};
  double front_area{0.0};
  double mass_N{0.0}, mass_T{0.0}, mass_I{0.0}, mass_U{0.0};
};

struct MetricsSeries {
  std::vector<MetricsRow> rows;
  // Row at time t (1e-9 relative tolerance); throws when absent.
  const MetricsRow& at_time(double t) const;
};

struct ScenarioResult {
  std::vector<StateSnapshot> snapshots;
  MetricsSeries metrics;
  std::vector<StepReport> reports;
  std::vector<double> report_times;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

MetricsRow compute_metrics(const StateSnapshot& s, const ParameterSet& p,
                           double theta_front);

// Dosing cases: 1:(1.00,0.30,7) 2:(0.60,0.50,7) 3:(3.00,0.35,7)
// 4:(2.10,0.35,10), all with the given pulse period.
DosingSchedule make_case(int case_id, double period = 2.0);

// dx*dy * #{nodes with T >= theta*K_T}.
double tumor_front_area(const Field& T, double K_T, double theta);

// Closed-form per-field envelopes from the initial data:
// M1 = max(1/b2, A2, sup N0), M2 = max(1/b1, A1, sup T0),
// M3 = max(sup U0, v_max/k2). I has no closed-form envelope.
struct Envelopes {
  double M1{0.0}, M2{0.0}, M3{0.0};
};
Envelopes envelopes_from_initial(const StateSnapshot& initial,
                                 const ParameterSet& p,
                                 const DosingSchedule* sched);
FieldBounds to_field_bounds(const Envelopes& env);

struct FieldEnvelopeCheck {
  double min{0.0}, max{0.0};
  double bound{0.0};
  bool has_bound{false};
  bool nonneg_ok{true};
  bool upper_ok{true};
};

struct EnvelopeReport {
  std::array<FieldEnvelopeCheck, 4> fields{};
  bool all_ok{true};
};

EnvelopeReport bounds_monitor(const StateSnapshot& s, const Envelopes& env);
// Envelopes derived from the given state treated as initial data.
EnvelopeReport bounds_monitor(const StateSnapshot& s, const ParameterSet& p,
                              const DosingSchedule* sched);

// Ordering verdicts for the four dosing cases against the NT/NTI baselines.
struct CompareInputs {
  MetricsSeries nt, nti;
  std::array<MetricsSeries, 4> cases;
  double day_mid{14.0}, day_end{28.0};
  double period{2.0};
};

struct CompareVerdicts {
  bool case3_min_peak_T_mid{false};       // case 3 minimal peak_T at day 14
  bool case4_min_front_both{false};       // case 4 minimal front at days 14, 28
  bool ntiu_front_below_baselines{false};  // every case below NT and NTI
  bool case3_lowest_peak_N_end{false};    // peak_N: 3 < 4 < {1,2} at day 28
};

CompareVerdicts compare_cases(const CompareInputs& in);
std::string format_verdict_report(const CompareInputs& in,
                                  const CompareVerdicts& v);

}  // namespace ntiu
