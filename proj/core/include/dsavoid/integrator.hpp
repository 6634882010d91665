#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dsavoid/error.hpp"
#include "dsavoid/flow.hpp"
#include "dsavoid/geometry.hpp"
#include "dsavoid/modulation.hpp"

namespace dsavoid {

struct IntegratorConfig {
  double dt = 1e-3;
  std::size_t max_steps = 200000;
  double goal_tol = 1e-3;
  bool guard = true;
  std::size_t record_stride = 1;

  void validate() const;
};

struct GridSpec {
  Vec3 min = Vec3(-1.0, -1.0, 0.0);
  Vec3 max = Vec3(1.0, 1.0, 0.0);
  std::array<std::size_t, 3> resolution{21, 21, 1};

  void validate() const;
};

/// Everything a simulation needs: geometry, original DS, parameters, starts.
struct Scenario {
  Superquadric workspace;
  std::optional<Superquadric> obstacle;
  OriginalDs ds{ScaledRadial{}};
  FlowParams flow;
  ModulationParams modulation;
  IntegratorConfig integrator;
  std::vector<Vec3> starts;
  /// Sampling grid for sweep_field; only read by the sweep workflow.
  std::optional<GridSpec> grid;
};

struct TrajectorySample {
  double t;
  Vec3 xi;
  Vec3 v;
  Mode mode;
  std::optional<double> gamma_o;
  double gamma_w;
};

enum class Outcome { ReachedTarget, MaxSteps, Error };

std::string_view to_token(Outcome outcome);

/// Statistics over every visited state, recorded or not.
struct TrajectoryStats {
  std::optional<double> min_gamma_o;
  double max_gamma_w = 0.0;
  std::size_t steps = 0;
  std::size_t mode_transitions = 0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Outcome outcome = Outcome::MaxSteps;
  std::optional<ErrorCode> error;
  std::string error_message;
  TrajectoryStats stats;
};

/// Explicit Euler update ξ + v·dt.
Vec3 step(const Vec3& xi, const Vec3& v, double dt);

/**
 * @brief Post-step projection back into the admissible set.
 *
 * Radially pulls ξ back onto the workspace when Γ_w > 1, then pushes it out of
 * the obstacle when Γ_o < 1, alternating up to 8 times. If that leaves a
 * conflict, a nearby point of the intersection curve is tried instead. Throws
 * GuardConflict if Γ_w <= 1 + 1e-12 and Γ_o >= 1 - 1e-12 still do not both hold.
 */
Vec3 containment_guard(const Superquadric& ws, const std::optional<Superquadric>& ob,
                       const Vec3& xi);

/// Runs one trajectory from @p start. Evaluation errors end the run with
/// Outcome::Error; an inadmissible start throws InvalidStart.
Trajectory simulate(const Scenario& scenario, const Vec3& start);

/// Runs every start of the scenario.
std::vector<Trajectory> simulate(const Scenario& scenario);

struct FieldSample {
  Vec3 xi;
  Vec3 v;
  /// Empty for grid points outside the admissible domain.
  std::optional<Mode> mode;
  /// Velocity before direction selection and flooring.
  Vec3 raw;
};

/// Evaluates the modulated field on a rectilinear grid, x fastest.
std::vector<FieldSample> sweep_field(const Scenario& scenario, const GridSpec& grid);

}  // namespace dsavoid
