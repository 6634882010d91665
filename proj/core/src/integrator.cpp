#include "dsavoid/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace dsavoid {

namespace {

constexpr double kGuardTol = 1e-12;
constexpr double kStartTol = 1e-12;
constexpr int kGuardAlternations = 8;

// Guard over whichever constraints the active method enforces; a null body is skipped.
Vec3 guard_impl(const Superquadric* ws, const Superquadric* ob, Vec3 xi) {
  auto satisfied = [&](const Vec3& x) {
    return (!ws || gamma(*ws, x) <= 1.0 + kGuardTol) && (!ob || gamma(*ob, x) >= 1.0 - kGuardTol);
  };
  for (int i = 0; i < kGuardAlternations && !satisfied(xi); ++i) {
    if (ws && gamma(*ws, xi) > 1.0) xi = radial_rescale(*ws, xi, 1.0);
    if (ob && gamma(*ob, xi) < 1.0) xi = radial_rescale(*ob, xi, 1.0);
  }
  if (!satisfied(xi) && ws && ob) {
    // Alternation zig-zags slowly in narrow corners; both constraints hold with
    // equality on the intersection curve, so try landing there directly.
    const auto [on_line, converged] = project_to_intersection(*ws, *ob, xi, 1e-13);
    const double reach = 0.05 * ob->effective_axes().minCoeff();
    if (converged && satisfied(on_line) && (on_line - xi).norm() <= reach) return on_line;
  }
  if (!satisfied(xi)) {
    throw Error(ErrorCode::GuardConflict,
                "workspace and obstacle projections did not agree after 8 alternations");
  }
  return xi;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidInput, "dt must be positive");
  if (max_steps < 1) throw Error(ErrorCode::InvalidInput, "max_steps must be >= 1");
  if (!(goal_tol > 0.0) || !std::isfinite(goal_tol)) {
    throw Error(ErrorCode::InvalidInput, "goal_tol must be positive");
  }
  if (record_stride < 1) throw Error(ErrorCode::InvalidInput, "record_stride must be >= 1");
}

void GridSpec::validate() const {
  if (!min.allFinite() || !max.allFinite()) {
    throw Error(ErrorCode::InvalidInput, "grid bounds must be finite");
  }
  for (int i = 0; i < 3; ++i) {
    if (resolution[i] < 1) throw Error(ErrorCode::InvalidInput, "grid resolution must be >= 1");
    if (max[i] < min[i]) throw Error(ErrorCode::InvalidInput, "grid max must be >= min");
  }
}

std::string_view to_token(Outcome outcome) {
  switch (outcome) {
    case Outcome::ReachedTarget: return "reached_target";
    case Outcome::MaxSteps: return "max_steps";
    case Outcome::Error: return "error";
  }
  return "error";
}

Vec3 step(const Vec3& xi, const Vec3& v, double dt) { return xi + v * dt; }

Vec3 containment_guard(const Superquadric& ws, const std::optional<Superquadric>& ob,
                       const Vec3& xi) {
  return guard_impl(&ws, ob ? &*ob : nullptr, xi);
}

Trajectory simulate(const Scenario& scenario, const Vec3& start) {
  const auto& cfg = scenario.integrator;
  const auto& ws = scenario.workspace;
  const auto& ob = scenario.obstacle;

  if (!start.allFinite() || gamma(ws, start) > 1.0 + kStartTol) {
    throw Error(ErrorCode::InvalidStart, "start lies outside the workspace");
  }
  if (ob && gamma(*ob, start) < 1.0 - kStartTol) {
    throw Error(ErrorCode::InvalidStart, "start lies inside the obstacle");
  }

  // The guard only enforces constraints the active method is responsible for.
  const Superquadric* guard_ws = nullptr;
  const Superquadric* guard_ob = nullptr;
  if (cfg.guard) {
    switch (scenario.flow.method) {
      case Method::Full:
        guard_ws = &ws;
        guard_ob = ob ? &*ob : nullptr;
        break;
      case Method::ObstacleOnly:
        guard_ob = ob ? &*ob : nullptr;
        break;
      case Method::Original:
        break;
    }
  }

  Trajectory traj;
  const Vec3& target = scenario.ds.target();
  Vec3 xi = start;
  std::optional<Mode> previous_mode;

  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    ModulatedVelocity mv;
    try {
      mv = eval_modulated(ws, ob, scenario.ds, xi, scenario.flow, scenario.modulation);
    } catch (const Error& e) {
      traj.outcome = Outcome::Error;
      traj.error = e.code();
      traj.error_message = e.what();
      break;
    }

    auto& stats = traj.stats;
    stats.steps = k;
    stats.max_gamma_w = k == 0 ? mv.gamma_w : std::max(stats.max_gamma_w, mv.gamma_w);
    if (mv.gamma_o) {
      stats.min_gamma_o = stats.min_gamma_o ? std::min(*stats.min_gamma_o, *mv.gamma_o) : *mv.gamma_o;
    }
    if (previous_mode && *previous_mode != mv.mode) ++stats.mode_transitions;
    previous_mode = mv.mode;

    const bool reached = (xi - target).norm() <= cfg.goal_tol;
    const bool exhausted = k >= cfg.max_steps;
    if (k % cfg.record_stride == 0 || reached || exhausted) {
      traj.samples.push_back({t, xi, mv.velocity, mv.mode, mv.gamma_o, mv.gamma_w});
    }
    if (reached) {
      traj.outcome = Outcome::ReachedTarget;
      break;
    }
    if (exhausted) {
      traj.outcome = Outcome::MaxSteps;
      break;
    }

    xi = step(xi, mv.velocity, cfg.dt);
    if (guard_ws || guard_ob) {
      try {
        xi = guard_impl(guard_ws, guard_ob, xi);
      } catch (const Error& e) {
        traj.outcome = Outcome::Error;
        traj.error = e.code();
        traj.error_message = e.what();
        traj.stats.steps = k + 1;
        break;
      }
    }
  }
  return traj;
}

std::vector<Trajectory> simulate(const Scenario& scenario) {
  std::vector<Trajectory> out;
  out.reserve(scenario.starts.size());
  for (const Vec3& s : scenario.starts) out.push_back(simulate(scenario, s));
  return out;
}

std::vector<FieldSample> sweep_field(const Scenario& scenario, const GridSpec& grid) {
  grid.validate();
  const auto& ws = scenario.workspace;
  const auto& ob = scenario.obstacle;

  auto coord = [&](int axis, std::size_t i) {
    const std::size_t n = grid.resolution[axis];
    if (n == 1) return grid.min[axis];
    return grid.min[axis] +
           (grid.max[axis] - grid.min[axis]) * static_cast<double>(i) / static_cast<double>(n - 1);
  };

  std::vector<FieldSample> out;
  out.reserve(grid.resolution[0] * grid.resolution[1] * grid.resolution[2]);
  for (std::size_t iz = 0; iz < grid.resolution[2]; ++iz) {
    for (std::size_t iy = 0; iy < grid.resolution[1]; ++iy) {
      for (std::size_t ix = 0; ix < grid.resolution[0]; ++ix) {
        const Vec3 xi(coord(0, ix), coord(1, iy), coord(2, iz));
        FieldSample sample{xi, Vec3::Zero(), std::nullopt, Vec3::Zero()};
        const bool admissible = gamma(ws, xi) <= 1.0 && (!ob || gamma(*ob, xi) >= 1.0);
        if (admissible) {
          try {
            const ModulatedVelocity mv =
                eval_modulated(ws, ob, scenario.ds, xi, scenario.flow, scenario.modulation);
            sample.v = mv.velocity;
            sample.raw = mv.raw;
            sample.mode = mv.mode;
          } catch (const Error&) {
            // Singular points (e.g. tangential contact) are reported as invalid.
          }
        }
        out.push_back(sample);
      }
    }
  }
  return out;
}

}  // namespace dsavoid
