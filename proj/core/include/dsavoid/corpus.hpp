#pragma once

#include <string_view>
#include <vector>

#include "dsavoid/integrator.hpp"

namespace dsavoid {

/// A bundled scenario in the text scenario format.
struct DemoCase {
  std::string_view name;
  std::string_view text;
};

/**
 * @brief The bundled demonstration scenes.
 *
 * Two groups share geometry within the group:
 *  - wall_original / wall_obstacle_only / wall_full: a box-like p = 4 obstacle
 *    close to the wall of a unit-sphere workspace, run with the unmodulated
 *    field, the obstacle-only baseline and the full method.
 *  - corner_along / corner_opposite: a sphere obstacle cutting through the
 *    workspace wall, run with both direction preferences on the
 *    intersection line.
 */
const std::vector<DemoCase>& demo_corpus();

/// Looks up a bundled case by name; throws InvalidInput if unknown.
const DemoCase& demo_case(std::string_view name);

/**
 * @brief Total signed angle [rad] swept by the trajectory around an axis.
 *
 * The axis passes through @p origin along @p axis; positive is counter-
 * clockwise when looking down the axis. Successive samples are assumed to
 * be less than half a turn apart.
 */
double winding_angle(const std::vector<TrajectorySample>& samples, const Vec3& origin,
                     const Vec3& axis);

}  // namespace dsavoid
