#pragma once

#include <array>

#include "ntiu/grid.hpp"
#include "ntiu/params.hpp"

namespace ntiu {

// Diagnostics of one accepted step.
struct StepReport {
  int picard_iterations{0};
  double final_picard_residual{0.0};
  std::array<int, 4> krylov_iterations_per_field{};  // summed over sweeps
  std::array<bool, 4> bound_flags{};                 // envelope/negativity hit
  std::array<double, 4> field_residual{};            // last per-field rel change
  std::array<double, 4> preclamp_min{};
  std::array<double, 4> min_value{};                 // post-clamp
  std::array<double, 4> max_value{};
  std::array<int, 4> clamped_nodes{};
  bool valid{false};  // false for the initial snapshot (no producing step)
};

// The four fields at one time level plus the diagnostics of the step that
// produced them. Snapshots are immutable once handed out; the stepper
// mutates only private working copies.
struct StateSnapshot {
  double time{0.0};
  std::array<Field, 4> fields;
  StepReport report;

  StateSnapshot() = default;
  explicit StateSnapshot(const GridSpec& g, double t = 0.0)
      : time(t),
        fields{Field(g, Species::N), Field(g, Species::T), Field(g, Species::I),
               Field(g, Species::U)} {}

  Field& field(Species s) { return fields[static_cast<int>(s)]; }
  const Field& field(Species s) const { return fields[static_cast<int>(s)]; }
  Field& N() { return fields[0]; }
  Field& T() { return fields[1]; }
  Field& I() { return fields[2]; }
  Field& U() { return fields[3]; }
  const Field& N() const { return fields[0]; }
  const Field& T() const { return fields[1]; }
  const Field& I() const { return fields[2]; }
  const Field& U() const { return fields[3]; }

  const GridSpec& grid() const { return fields[0].grid; }
};

// Initial data: three smooth tumor foci, a complementary normal-tissue
// profile, an immune ring around the foci, and no drug.
StateSnapshot build_initial_state(const GridSpec& grid, const ParameterSet& p);

}  // namespace ntiu
