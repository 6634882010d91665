#include "dsavoid/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <Eigen/Geometry>

#include "dsavoid/error.hpp"

namespace dsavoid {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 random_direction(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Vec3 v(n(rng), n(rng), n(rng));
    const double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
}

Vec3 random_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Vec3(n(rng), n(rng), n(rng));
}

Vec3 random_in_box(Rng& rng, const Vec3& lo, const Vec3& hi) {
  return Vec3(uniform(rng, lo.x(), hi.x()), uniform(rng, lo.y(), hi.y()),
              uniform(rng, lo.z(), hi.z()));
}

struct Tally {
  double worst = 0.0;
  std::size_t samples = 0;
  void add(double r) {
    // NaN must fail the check, so it is kept as the worst value.
    if (std::isnan(r) || r > worst) worst = r;
    ++samples;
  }
  CheckResult result(std::string name, double tolerance) const {
    return {std::move(name), !std::isnan(worst) && worst <= tolerance, worst, tolerance, samples};
  }
};

CheckResult check_gradient(Rng& rng) {
  Tally t;
  for (int body_i = 0; body_i < 50; ++body_i) {
    const Superquadric body = random_superquadric(rng, 0.3, 2.0, 3, 1.0);
    for (int k = 0; k < 20; ++k) {
      const Vec3 xi = random_point_at_gamma(rng, body, uniform(rng, 0.2, 3.0));
      const Vec3 g = gamma_gradient(body, xi);
      const double h = 1e-6 * body.effective_axes().minCoeff();
      Vec3 fd;
      for (int i = 0; i < 3; ++i) {
        Vec3 step = Vec3::Zero();
        step[i] = h;
        fd[i] = (gamma(body, xi + step) - gamma(body, xi - step)) / (2.0 * h);
      }
      t.add((fd - g).norm() / g.norm());
    }
  }
  return t.result("gradient_finite_difference", 1e-6);
}

CheckResult check_workspace_boundary(Rng& rng, const ModulationParams& params) {
  Tally t;
  for (int ws_i = 0; ws_i < 50; ++ws_i) {
    const Superquadric ws = random_superquadric(rng, 0.5, 2.0, 3, 0.5);
    for (int k = 0; k < 20; ++k) {
      const Vec3 xi = random_point_at_gamma(rng, ws, 1.0);
      const Vec3 f = random_gaussian(rng);
      const Vec3 n = workspace_normal(ws, xi);
      const Vec3 v = workspace_modulation(ws, xi, params) * f;
      t.add(std::abs(n.dot(v)) / (n.norm() * f.norm()));
    }
  }
  return t.result("workspace_boundary_annihilation", 1e-9);
}

CheckResult check_intersection_line(Rng& rng, Tally& rank) {
  Tally t;
  for (int pair_i = 0; pair_i < 20; ++pair_i) {
    const auto [ws, ob] = random_intersecting_pair(rng);
    for (int k = 0; k < 50; ++k) {
      Vec3 xi;
      if (!random_intersection_point(rng, ws, ob, xi)) continue;
      const Mat3 m = intersection_modulation(ws, ob, xi);
      const Vec3 nw = workspace_normal(ws, xi);
      const Vec3 no = obstacle_normal(ob, xi);
      const Vec3 e = nw.cross(no);
      const Vec3 f = random_gaussian(rng);
      const Vec3 v = m * f;
      const double scale = f.norm() * std::max(1.0, m.norm());
      double r = std::max(std::abs(no.dot(v)) / (no.norm() * scale),
                          std::abs(nw.dot(v)) / (nw.norm() * scale));
      if (v.norm() > 1e-12) r = std::max(r, v.cross(e).norm() / (v.norm() * e.norm()));
      t.add(r);

      const Vec3 sv = Eigen::JacobiSVD<Mat3>(m).singularValues();
      // σ2/σ1 against 1e-9 and σ3/σ1 against 1e-12, reported as a fraction of the bound.
      rank.add(std::max(sv[1] / (1e-9 * sv[0]), sv[2] / (1e-12 * sv[0])));
    }
  }
  return t.result("intersection_line_annihilation", 1e-9);
}

CheckResult check_reconstruction(Rng& rng, const ModulationParams& params) {
  Tally t;
  auto residual = [](const Decomposition& d) {
    const Mat3 m = compose(d);
    const Mat3 lhs = m * d.basis;
    const Mat3 rhs = d.basis * d.eigenvalues.asDiagonal();
    return (lhs - rhs).norm() / (d.basis.norm() * d.eigenvalues.norm());
  };
  for (int i = 0; i < 200; ++i) {
    const Superquadric ws = random_superquadric(rng, 0.5, 2.0, 3, 0.5);
    const Vec3 xi = random_point_at_gamma(rng, ws, uniform(rng, params.lambda_w, 1.0));
    t.add(residual(workspace_decomposition(ws, xi, uniform(rng, 0.0, 1.0), params)));

    const Superquadric ob = random_superquadric(rng, 0.2, 1.0, 3, 0.5);
    const Vec3 xo = random_point_at_gamma(rng, ob, uniform(rng, 1.0, 4.0));
    t.add(residual(obstacle_decomposition(ob, xo, uniform(rng, 0.0, 1.0))));
  }
  return t.result("reconstruction", 1e-10);
}

CheckResult check_partition_of_unity(Rng& rng, const ModulationParams& params) {
  Tally t;
  const auto [ws, ob] = random_intersecting_pair(rng);
  const Vec3 lo = ws.center - ws.effective_axes();
  const Vec3 hi = ws.center + ws.effective_axes();
  std::size_t accepted = 0;
  while (accepted < 100000) {
    const Vec3 xi = random_in_box(rng, lo, hi);
    const double gw = gamma(ws, xi);
    const double go = gamma(ob, xi);
    if (gw > 1.0 || go < 1.0) continue;
    ++accepted;
    Weights w;
    try {
      w = weights(ws, ob, xi, params.eps_weight);
    } catch (const Error&) {
      continue;
    }
    double r = std::abs(w.obstacle + w.workspace - 1.0);
    if (w.obstacle < 0.0 || w.obstacle > 1.0 || w.workspace < 0.0 || w.workspace > 1.0) {
      r = std::max(r, 1.0);
    }
    t.add(r);
  }
  return t.result("partition_of_unity", 1e-12);
}

CheckResult check_identity_branch(Rng& rng, const ModulationParams& params) {
  Tally t;
  const Mat3 identity = Mat3::Identity();
  for (int i = 0; i < 1000; ++i) {
    const Superquadric ws = random_superquadric(rng, 0.5, 2.0, 3, 0.5);
    const Vec3 xi = random_point_at_gamma(rng, ws, uniform(rng, 1e-3, params.lambda_w));
    const Mat3 m = workspace_modulation(ws, xi, params);
    t.add(std::memcmp(m.data(), identity.data(), sizeof(double) * 9) == 0 ? 0.0 : 1.0);
  }
  return t.result("identity_branch", 0.0);
}

CheckResult check_containment(Rng& rng, const VerifyOptions& options) {
  Tally t;
  for (std::size_t i = 0; i < options.containment_scenarios; ++i) {
    Scenario sc = random_containment_scenario(rng, i % 2 == 1, options.flow, options.modulation);
    sc.integrator.max_steps = options.containment_steps;
    const Trajectory traj = simulate(sc, sc.starts.front());
    for (const auto& s : traj.samples) {
      double r = std::max(0.0, s.gamma_w - 1.0);
      if (s.gamma_o) r = std::max(r, 1.0 - *s.gamma_o);
      t.add(r);
    }
  }
  return t.result("monte_carlo_containment", 1e-9);
}

}  // namespace

Superquadric random_superquadric(Rng& rng, double axis_lo, double axis_hi, int max_power,
                                 double center_box) {
  Superquadric s;
  s.center = random_in_box(rng, Vec3::Constant(-center_box), Vec3::Constant(center_box));
  s.axes = random_in_box(rng, Vec3::Constant(axis_lo), Vec3::Constant(axis_hi));
  s.power = std::uniform_int_distribution<int>(1, max_power)(rng);
  return s;
}

Vec3 random_point_at_gamma(Rng& rng, const Superquadric& body, double target_gamma) {
  return radial_rescale(body, body.center + random_direction(rng), target_gamma);
}

std::pair<Superquadric, Superquadric> random_intersecting_pair(Rng& rng) {
  Superquadric ws = random_superquadric(rng, 0.8, 1.5, 2, 0.0);
  Superquadric ob = random_superquadric(rng, 0.25, 0.5, 2, 0.0);
  ob.center = random_point_at_gamma(rng, ws, uniform(rng, 0.9, 1.1));
  return {ws, ob};
}

bool random_intersection_point(Rng& rng, const Superquadric& ws, const Superquadric& ob,
                               Vec3& out, double min_angle) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Vec3 guess = ob.center + random_direction(rng).cwiseProduct(ob.effective_axes());
    const auto [xi, converged] = project_to_intersection(ws, ob, guess);
    if (!converged) continue;
    const Vec3 nw = gamma_gradient(ws, xi);
    const Vec3 no = gamma_gradient(ob, xi);
    if (nw.cross(no).norm() < std::sin(min_angle) * nw.norm() * no.norm()) continue;
    out = xi;
    return true;
  }
  return false;
}

Scenario random_containment_scenario(Rng& rng, bool intersecting, const FlowParams& flow,
                                     const ModulationParams& modulation) {
  Scenario sc;
  sc.flow = flow;
  sc.modulation = modulation;
  sc.workspace = random_superquadric(rng, 0.8, 1.5, 2, 0.0);
  const Superquadric& ws = sc.workspace;

  Superquadric ob;
  if (intersecting) {
    ob = random_superquadric(rng, 0.2, 0.4, 2, 0.0);
    ob.center = random_point_at_gamma(rng, ws, 1.0);
  } else {
    for (;;) {
      ob = random_superquadric(rng, 0.15, 0.35, 3, 0.0);
      ob.center = random_point_at_gamma(rng, ws, uniform(rng, 0.0, 0.4));
      // Keep every surface point well inside the band's inner edge.
      bool clear = true;
      for (int k = 0; k < 64 && clear; ++k) {
        clear = gamma(ws, random_point_at_gamma(rng, ob, 1.0)) < 0.8 * flow.beta1;
      }
      if (clear) break;
    }
  }
  sc.obstacle = ob;

  const Vec3 lo = ws.center - ws.effective_axes();
  const Vec3 hi = ws.center + ws.effective_axes();
  auto admissible_point = [&] {
    for (;;) {
      const Vec3 p = random_in_box(rng, lo, hi);
      if (gamma(ws, p) <= 0.9 && gamma(ob, p) >= 1.2) return p;
    }
  };
  Vec3 start = admissible_point();
  Vec3 target = admissible_point();
  if (intersecting && std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    // Start and target on either side of the obstacle, just inside the wall, so
    // the direct path runs into the corner between the two surfaces.
    const Vec3 n = gamma_gradient(ws, ob.center).normalized();
    const Vec3 g = random_direction(rng);
    const Vec3 d = (g - n * n.dot(g)).normalized();
    const double r = 1.6 * ob.effective_axes().maxCoeff();
    const Vec3 a = radial_rescale(ws, ob.center + r * d, uniform(rng, 0.93, 0.99));
    const Vec3 b = radial_rescale(ws, ob.center - r * d, uniform(rng, 0.93, 0.99));
    if (gamma(ob, a) >= 1.2 && gamma(ob, b) >= 1.2) {
      start = a;
      target = b;
    }
  }

  const int family = std::uniform_int_distribution<int>(0, 2)(rng);
  if (family == 0) {
    sc.ds = OriginalDs(ScaledRadial{uniform(rng, 0.5, 2.0), target});
  } else if (family == 1) {
    // kI plus a nilpotent shear: stable, but transient growth drives paths into the walls.
    const double k = uniform(rng, 0.5, 2.0);
    const Vec3 u = random_direction(rng);
    const Vec3 v = u.unitOrthogonal();
    const Vec3 w = Eigen::AngleAxisd(uniform(rng, 0.0, 6.283185307179586), u) * v;
    sc.ds = OriginalDs(LinearAttractor{
        k * Mat3::Identity() + uniform(rng, 5.0, 15.0) * k * u * w.transpose(), target});
  } else {
    const double k = uniform(rng, 0.5, 2.0);
    const Vec3 w = random_direction(rng) * uniform(rng, 0.0, 1.5);
    Mat3 skew;
    skew << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
    sc.ds = OriginalDs(LinearAttractor{k * Mat3::Identity() + skew, target});
  }
  sc.starts = {start};
  return sc;
}

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options) {
  options.modulation.validate();
  options.flow.validate();
  Rng rng(options.seed);
  std::vector<CheckResult> out;
  out.push_back(check_gradient(rng));
  out.push_back(check_workspace_boundary(rng, options.modulation));
  Tally rank;
  out.push_back(check_intersection_line(rng, rank));
  out.push_back(rank.result("intersection_rank_one", 1.0));
  out.push_back(check_reconstruction(rng, options.modulation));
  out.push_back(check_partition_of_unity(rng, options.modulation));
  out.push_back(check_identity_branch(rng, options.modulation));
  out.push_back(check_containment(rng, options));
  return out;
}

}  // namespace dsavoid
