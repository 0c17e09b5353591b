#pragma once

#include <string>

#include "ntiu/scenarios.hpp"

namespace ntiu {

// Everything the tools read from a declarative config file. Defaults are
// the simulation table values, dosing case 1, dt = 0.025 day on a
// 101x101 grid over [0,1]^2.
struct RunConfig {
  ParameterSet params{};
  DosingSchedule schedule{};
  StepperConfig stepper{};
  double Lx{1.0}, Ly{1.0};
  int Nx{101}, Ny{101};
  double theta_front{0.5};
  // scenario selection (CLI flags override; NTIU_OUTPUT_DIR overrides out_dir)
  std::string scheme{"NTIU"};
  std::string case_id{"1"};  // 1-4, "config" (use V0/tau/n_pulses keys), "none"
  double horizon{28.0};
  std::string snapshots{"0,14,28"};
  std::string out_dir{"out"};

  GridSpec grid() const { return GridSpec(Lx, Ly, Nx, Ny); }
  void validate() const;
};

// Flat `key = value` format, one entry per line, '#' comments. Unknown keys
// raise ConfigError naming the key. Values use day/cm/cell units throughout
// (see README for the schema).
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

// Canonical emission: fixed key order, shortest round-trip number format.
// parse_config(emit_config(c)) reproduces c exactly, and re-emission is
// byte-identical.
std::string emit_config(const RunConfig& c);

// FNV-1a 64-bit hash of the canonical emission, as fixed-width hex.
std::string config_hash(const RunConfig& c);

std::string format_double(double v);  // shortest round-trip representation

}  // namespace ntiu
