#include "dsavoid/corpus.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dsavoid/error.hpp"

namespace dsavoid {

namespace {

// p = 4 makes a superquadric look like a box with rounded edges; raise it
// further for sharper corners.
constexpr std::string_view kWallScene = R"([workspace]
center = (0, 0, 0)
axes = (1, 1, 1)
power = 1

[obstacle]
center = (0, 0.62, 0)
axes = (0.24, 0.28, 0.25)
power = 4

# slow rotation about z on top of the attraction
[ds]
type = linear
row0 = (1, -0.6, 0)
row1 = (0.6, 1, 0)
row2 = (0, 0, 1)
target = (0.68, 0.66, -0.02)

[starts]
(-0.68, 0.645, 0.05)
)";

constexpr std::string_view kCornerScene = R"([workspace]
center = (0, 0, 0)
axes = (1, 1, 1)
power = 1

[obstacle]
center = (0.8, 0, 0)
axes = (0.35, 0.35, 0.35)
power = 1

[ds]
type = radial
gain = 1
target = (0.9, -0.4, 0)

[starts]
(0.9, 0.4, 0.1)
)";

std::vector<DemoCase> build_corpus() {
  static const std::string wall_original = std::string(kWallScene) + "\n[flow]\nmethod = original\n";
  static const std::string wall_baseline =
      std::string(kWallScene) + "\n[flow]\nmethod = obstacle_only\n";
  static const std::string wall_full = std::string(kWallScene) + "\n[flow]\nmethod = full\n";
  static const std::string corner_along =
      std::string(kCornerScene) + "\n[flow]\nsign_pref = along\n";
  static const std::string corner_opposite =
      std::string(kCornerScene) + "\n[flow]\nsign_pref = opposite\n";
  return {
      {"wall_original", wall_original},
      {"wall_obstacle_only", wall_baseline},
      {"wall_full", wall_full},
      {"corner_along", corner_along},
      {"corner_opposite", corner_opposite},
  };
}

}  // namespace

const std::vector<DemoCase>& demo_corpus() {
  static const std::vector<DemoCase> corpus = build_corpus();
  return corpus;
}

const DemoCase& demo_case(std::string_view name) {
  for (const DemoCase& c : demo_corpus()) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidInput, "unknown demo case: " + std::string(name));
}

double winding_angle(const std::vector<TrajectorySample>& samples, const Vec3& origin,
                     const Vec3& axis) {
  const Vec3 a = axis.normalized();
  const Vec3 u = a.unitOrthogonal();
  const Vec3 w = a.cross(u);
  double total = 0.0;
  double previous = 0.0;
  bool first = true;
  for (const auto& s : samples) {
    const Vec3 r = s.xi - origin;
    const double angle = std::atan2(r.dot(w), r.dot(u));
    if (!first) {
      double d = angle - previous;
      if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
      if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
      total += d;
    }
    previous = angle;
    first = false;
  }
  return total;
}

}  // namespace dsavoid
