#include "ntiu/config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "ntiu/errors.hpp"

namespace ntiu {

void RunConfig::validate() const {
  params.validate();
  schedule.validate();
  stepper.validate();
  (void)grid();  // node-count/extent checks
  if (!(theta_front > 0.0 && theta_front < 1.0))
    throw ConfigError("theta_front", "theta_front must lie in (0,1)");
  scheme_from_name(scheme);
  if (case_id != "1" && case_id != "2" && case_id != "3" && case_id != "4" &&
      case_id != "config" && case_id != "none" && case_id != "fig2")
    throw ConfigError("case", "case must be 1-4, 'config', 'none', or 'fig2'");
  if (!(horizon > 0.0))
    throw ConfigError("horizon", "horizon must be positive");
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

struct KeyBinding {
  const char* key;
  enum Kind { Double, Int, Bool, Str } kind;
  void* ptr;
};

// Fixed emission order; doubles carry their unit in the trailing comment of
// the README schema, not here.
std::vector<KeyBinding> bindings(RunConfig& c) {
  return {
      {"r1", KeyBinding::Double, &c.params.r1},
      {"r2", KeyBinding::Double, &c.params.r2},
      {"b1", KeyBinding::Double, &c.params.b1},
      {"b2", KeyBinding::Double, &c.params.b2},
      {"A1", KeyBinding::Double, &c.params.A1},
      {"A2", KeyBinding::Double, &c.params.A2},
      {"c1", KeyBinding::Double, &c.params.c1},
      {"c2", KeyBinding::Double, &c.params.c2},
      {"c3", KeyBinding::Double, &c.params.c3},
      {"c4", KeyBinding::Double, &c.params.c4},
      {"a0", KeyBinding::Double, &c.params.a0},
      {"a1", KeyBinding::Double, &c.params.a1},
      {"a2", KeyBinding::Double, &c.params.a2},
      {"a3", KeyBinding::Double, &c.params.a3},
      {"s", KeyBinding::Double, &c.params.s},
      {"rho", KeyBinding::Double, &c.params.rho},
      {"alpha", KeyBinding::Double, &c.params.alpha},
      {"k1", KeyBinding::Double, &c.params.k1},
      {"k2", KeyBinding::Double, &c.params.k2},
      {"delta", KeyBinding::Double, &c.params.delta},
      {"D1", KeyBinding::Double, &c.params.D1},
      {"D2", KeyBinding::Double, &c.params.D2},
      {"D3", KeyBinding::Double, &c.params.D3},
      {"D4", KeyBinding::Double, &c.params.D4},
      {"h4x", KeyBinding::Double, &c.params.h4.hx},
      {"h4y", KeyBinding::Double, &c.params.h4.hy},
      {"V0", KeyBinding::Double, &c.schedule.V0},
      {"tau", KeyBinding::Double, &c.schedule.tau},
      {"n_pulses", KeyBinding::Int, &c.schedule.n_pulses},
      {"period", KeyBinding::Double, &c.schedule.period},
      {"dt", KeyBinding::Double, &c.stepper.dt},
      {"picard_tol", KeyBinding::Double, &c.stepper.picard_tol},
      {"picard_max", KeyBinding::Int, &c.stepper.picard_max},
      {"krylov_tol", KeyBinding::Double, &c.stepper.krylov_tol},
      {"krylov_max", KeyBinding::Int, &c.stepper.krylov_max},
      {"newton_accel", KeyBinding::Bool, &c.stepper.newton_accel},
      {"Lx", KeyBinding::Double, &c.Lx},
      {"Ly", KeyBinding::Double, &c.Ly},
      {"Nx", KeyBinding::Int, &c.Nx},
      {"Ny", KeyBinding::Int, &c.Ny},
      {"theta_front", KeyBinding::Double, &c.theta_front},
      {"scheme", KeyBinding::Str, &c.scheme},
      {"case", KeyBinding::Str, &c.case_id},
      {"horizon", KeyBinding::Double, &c.horizon},
      {"snapshots", KeyBinding::Str, &c.snapshots},
      {"out_dir", KeyBinding::Str, &c.out_dir},
  };
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void assign(const KeyBinding& b, const std::string& value) {
  switch (b.kind) {
    case KeyBinding::Double: {
      char* end = nullptr;
      const double v = std::strtod(value.c_str(), &end);
      if (end == value.c_str() || *end != '\0')
        throw ConfigError(b.key, std::string(b.key) + ": not a number: " + value);
      *static_cast<double*>(b.ptr) = v;
      return;
    }
    case KeyBinding::Int: {
      int v = 0;
      const auto res =
          std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ConfigError(b.key, std::string(b.key) + ": not an integer: " + value);
      *static_cast<int*>(b.ptr) = v;
      return;
    }
    case KeyBinding::Bool: {
      if (value == "true" || value == "1")
        *static_cast<bool*>(b.ptr) = true;
      else if (value == "false" || value == "0")
        *static_cast<bool*>(b.ptr) = false;
      else
        throw ConfigError(b.key, std::string(b.key) + ": not a boolean: " + value);
      return;
    }
    case KeyBinding::Str: {
      *static_cast<std::string*>(b.ptr) = value;
      return;
    }
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  auto binds = bindings(c);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "config line " + std::to_string(lineno) +
                                ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool found = false;
    for (const auto& b : binds) {
      if (key == b.key) {
        assign(b, value);
        found = true;
        break;
      }
    }
    if (!found)
      throw ConfigError(key, "unknown config key: " + key);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config", "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& c) {
  RunConfig copy = c;
  auto binds = bindings(copy);
  std::ostringstream os;
  for (const auto& b : binds) {
    os << b.key << " = ";
    switch (b.kind) {
      case KeyBinding::Double:
        os << format_double(*static_cast<double*>(b.ptr));
        break;
      case KeyBinding::Int:
        os << *static_cast<int*>(b.ptr);
        break;
      case KeyBinding::Bool:
        os << (*static_cast<bool*>(b.ptr) ? "true" : "false");
        break;
      case KeyBinding::Str:
        os << *static_cast<std::string*>(b.ptr);
        break;
    }
    os << "\n";
  }
  return os.str();
}

std::string config_hash(const RunConfig& c) {
  const std::string text = emit_config(c);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace ntiu
