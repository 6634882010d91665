#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dsavoid/flow.hpp"
#include "dsavoid/integrator.hpp"
#include "dsavoid/modulation.hpp"

namespace dsavoid {

using Rng = std::mt19937_64;

struct CheckResult {
  std::string name;
  bool passed;
  /// Largest normalised residual seen; compared against tolerance.
  double worst;
  double tolerance;
  std::size_t samples;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  ModulationParams modulation;
  FlowParams flow;
  std::size_t containment_scenarios = 20;
  std::size_t containment_steps = 5000;
};

/// Axes in [axis_lo, axis_hi], power in [1, max_power], center in the cube
/// of half-width center_box.
Superquadric random_superquadric(Rng& rng, double axis_lo, double axis_hi, int max_power,
                                 double center_box);

/// Uniform random direction from the body center, rescaled onto Γ = target_gamma.
Vec3 random_point_at_gamma(Rng& rng, const Superquadric& body, double target_gamma);

/// Workspace centered at the origin plus an obstacle centered near its boundary.
std::pair<Superquadric, Superquadric> random_intersecting_pair(Rng& rng);

/**
 * @brief Samples a point on the intersection curve of @p ws and @p ob.
 *
 * Rejects points where the surfaces meet at less than min_angle (radians) so
 * the pseudo-inverse stays well conditioned. Returns false if no point was
 * accepted after 64 tries.
 */
bool random_intersection_point(Rng& rng, const Superquadric& ws, const Superquadric& ob,
                               Vec3& out, double min_angle = 0.1);

/**
 * @brief Random scene for containment testing.
 *
 * Non-intersecting scenes keep the obstacle at least a band's width away from
 * the wall; intersecting scenes center the obstacle on the wall. Start and
 * target lie inside the workspace and outside the obstacle.
 */
Scenario random_containment_scenario(Rng& rng, bool intersecting, const FlowParams& flow,
                                     const ModulationParams& modulation);

/// Runs every invariant check with the given seed. Output order is fixed.
std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options);

}  // namespace dsavoid
