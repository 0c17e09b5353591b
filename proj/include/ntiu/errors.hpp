#pragma once

#include <stdexcept>
#include <string>

namespace ntiu {

// Bad or inconsistent configuration; `key` names the offending entry when known.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

// Krylov solver failed to reach the requested residual.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double rel_residual, int iterations)
      : std::runtime_error(what), rel_residual_(rel_residual), iterations_(iterations) {}
  double rel_residual() const { return rel_residual_; }
  int iterations() const { return iterations_; }

private:
  double rel_residual_;
  int iterations_;
};

// Time step failed (Picard non-convergence or propagated solver failure).
class StepError : public std::runtime_error {
public:
  StepError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

private:
  double time_;
};

}  // namespace ntiu
