#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include <Eigen/SVD>

#include "dsavoid/modulation.hpp"
#include "oracles.hpp"

using namespace dsavoid;

namespace {

const ModulationParams kParams{};

struct LinePoint {
  Superquadric ws;
  Superquadric ob;
  Vec3 xi;
};

// Intersecting pair with the obstacle centered on the workspace wall, and a
// point of their intersection curve where the surfaces are not near-tangent.
LinePoint sample_line_point(oracle::Sampler& s) {
  for (;;) {
    LinePoint p;
    p.ws = s.body(0.8, 1.5, 2, 0.0);
    p.ob = s.body(0.25, 0.5, 2, 0.0);
    p.ob.center = s.on_level(p.ws, 1.0);
    const auto [xi, ok] = project_to_intersection(p.ws, p.ob, p.ob.center + 0.4 * s.unit());
    if (!ok) continue;
    if (std::abs(gamma(p.ws, xi) - 1.0) > 1e-10 || std::abs(gamma(p.ob, xi) - 1.0) > 1e-10) continue;
    const Vec3 nw = workspace_normal(p.ws, xi).normalized();
    const Vec3 no = obstacle_normal(p.ob, xi).normalized();
    if (nw.cross(no).norm() < 0.1) continue;
    p.xi = xi;
    return p;
  }
}

double reconstruction_residual(const Decomposition& d) {
  const Mat3 lhs = compose(d) * d.basis;
  const Mat3 rhs = d.basis * d.eigenvalues.asDiagonal();
  const double scale = d.basis.norm() * d.eigenvalues.cwiseAbs().maxCoeff();
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

}  // namespace

TEST(ModulationProperty, Reconstruction) {
  oracle::Sampler s(201);
  for (int i = 0; i < 1000; ++i) {
    const Superquadric ws = s.body(0.5, 2.0, 3, 0.3);
    const Vec3 xi = s.on_level(ws, s.uniform(0.75, 1.0));
    EXPECT_LE(reconstruction_residual(workspace_decomposition(ws, xi, s.uniform(0, 1), kParams)), 1e-10);
    const Superquadric ob = s.body(0.2, 1.0, 3, 1.0);
    const Vec3 xo = s.on_level(ob, s.uniform(1.0, 4.0));
    EXPECT_LE(reconstruction_residual(obstacle_decomposition(ob, xo, s.uniform(0, 1))), 1e-10);
  }
}

TEST(ModulationProperty, WorkspaceBoundaryAnnihilation) {
  oracle::Sampler s(202);
  for (int i = 0; i < 1000; ++i) {
    const Superquadric ws = s.body(0.5, 2.0, 3, 0.3);
    const Vec3 xi = s.on_level(ws, 1.0);
    const Vec3 f = s.gaussian();
    const Vec3 n = workspace_normal(ws, xi);
    EXPECT_LE(std::abs(n.dot(workspace_modulation(ws, xi, kParams) * f)), 1e-9 * n.norm() * f.norm());
  }
}

TEST(ModulationProperty, IntersectionLineAnnihilation) {
  oracle::Sampler s(203);
  for (int i = 0; i < 1000; ++i) {
    const LinePoint p = sample_line_point(s);
    const Vec3 f = s.gaussian();
    const IntersectionFrame frame = intersection_frame(p.ws, p.ob, p.xi);
    const Vec3 v = frame.modulation * f;
    const Vec3 nw = workspace_normal(p.ws, p.xi);
    const Vec3 no = obstacle_normal(p.ob, p.xi);
    const double scale = frame.modulation.norm() * f.norm();
    EXPECT_LE(std::abs(nw.dot(v)), 1e-9 * nw.norm() * scale);
    EXPECT_LE(std::abs(no.dot(v)), 1e-9 * no.norm() * scale);
    if (v.norm() > 1e-12) {
      EXPECT_LE(v.cross(frame.tangent).norm() / (v.norm() * frame.tangent.norm()), 1e-9);
    }
  }
}

TEST(ModulationProperty, IntersectionMatrixIsRankOneOnLine) {
  oracle::Sampler s(204);
  for (int i = 0; i < 200; ++i) {
    const LinePoint p = sample_line_point(s);
    const Vec3 sv = Eigen::JacobiSVD<Mat3>(intersection_modulation(p.ws, p.ob, p.xi)).singularValues();
    EXPECT_LE(sv[1], 1e-9 * sv[0]);
    EXPECT_LE(sv[2], 1e-12 * sv[0]);
  }
}

TEST(ModulationProperty, WeightsPartitionUnity) {
  oracle::Sampler s(205);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double gw = s.uniform(0.0, 1.0);
    const double go = s.uniform(1.0, 10.0);
    if ((go - 1.0) + (1.0 - gw) < 1e-9) continue;
    const Weights w = weights_from_gammas(go, gw, 1e-9);
    ASSERT_GE(w.obstacle, 0.0);
    ASSERT_LE(w.obstacle, 1.0);
    ASSERT_GE(w.workspace, 0.0);
    ASSERT_LE(w.workspace, 1.0);
    worst = std::max(worst, std::abs(w.obstacle + w.workspace - 1.0));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(ModulationProperty, IdentityBranchIsBitExact) {
  oracle::Sampler s(206);
  const Mat3 identity = Mat3::Identity();
  for (int i = 0; i < 1000; ++i) {
    const Superquadric ws = s.body(0.5, 2.0, 3, 0.3);
    const Vec3 xi = s.on_level(ws, s.uniform(0.0, kParams.lambda_w));
    const Mat3 m = workspace_modulation(ws, xi, kParams);
    ASSERT_EQ(std::memcmp(m.data(), identity.data(), sizeof(double) * 9), 0);
  }
}
