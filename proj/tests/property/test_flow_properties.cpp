#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "dsavoid/flow.hpp"
#include "oracles.hpp"

using namespace dsavoid;

namespace {

const FlowParams kFlow{};
const ModulationParams kMod{};

OriginalDs random_ds(oracle::Sampler& s) {
  return OriginalDs(ScaledRadial{s.uniform(0.2, 3.0), 0.3 * s.unit()});
}

// A point in the β-band near the intersection curve of a random wall-centered pair.
struct BandPoint {
  Superquadric ws;
  Superquadric ob;
  Vec3 xi;
};

BandPoint sample_band_point(oracle::Sampler& s) {
  for (;;) {
    BandPoint p;
    p.ws = s.body(0.8, 1.5, 2, 0.0);
    p.ob = s.body(0.25, 0.5, 2, 0.0);
    p.ob.center = s.on_level(p.ws, 1.0);
    const auto [on_line, ok] = project_to_intersection(p.ws, p.ob, p.ob.center + 0.4 * s.unit());
    if (!ok) continue;
    const Vec3 nw = workspace_normal(p.ws, on_line).normalized();
    const Vec3 no = obstacle_normal(p.ob, on_line).normalized();
    if (nw.cross(no).norm() < 0.1) continue;
    p.xi = on_line + s.uniform(0.0, 0.01) * nw + s.uniform(0.0, 0.01) * no;
    if (detect_mode(p.ws, p.ob, p.xi, kFlow) != Mode::Intersection) continue;
    return p;
  }
}

}  // namespace

TEST(FlowProperty, WorkspaceBoundaryVelocityIsTangent) {
  oracle::Sampler s(301);
  for (int i = 0; i < 1000; ++i) {
    const Superquadric ws = s.body(0.5, 2.0, 3, 0.3);
    const Vec3 xi = s.on_level(ws, 1.0);
    const OriginalDs ds = random_ds(s);
    const ModulatedVelocity mv = eval_modulated(ws, std::nullopt, ds, xi, kFlow, kMod);
    ASSERT_EQ(mv.mode, Mode::Free);
    const Vec3 n = workspace_normal(ws, xi);
    EXPECT_LE(std::abs(n.dot(mv.velocity)), 1e-9 * n.norm() * ds(xi).norm());
  }
}

TEST(FlowProperty, IntersectionVelocityFollowsLineAboveFloor) {
  oracle::Sampler s(302);
  for (int i = 0; i < 1000; ++i) {
    const BandPoint p = sample_band_point(s);
    const OriginalDs ds = random_ds(s);
    const ModulatedVelocity mv = eval_modulated(p.ws, p.ob, ds, p.xi, kFlow, kMod);
    ASSERT_EQ(mv.mode, Mode::Intersection);
    const Vec3 e = intersection_tangent(p.ws, p.ob, p.xi);
    EXPECT_LE(mv.velocity.cross(e).norm(), 1e-9 * mv.velocity.norm() * e.norm());
    EXPECT_GE(mv.velocity.norm(), kFlow.v_th - 1e-15);
  }
}

TEST(FlowProperty, SignPreferenceNegatesIntersectionVelocity) {
  oracle::Sampler s(303);
  FlowParams opposite = kFlow;
  opposite.sign_pref = SignPref::Opposite;
  for (int i = 0; i < 500; ++i) {
    const BandPoint p = sample_band_point(s);
    const OriginalDs ds = random_ds(s);
    const Vec3 a = eval_modulated(p.ws, p.ob, ds, p.xi, kFlow, kMod).velocity;
    const Vec3 b = eval_modulated(p.ws, p.ob, ds, p.xi, opposite, kMod).velocity;
    EXPECT_EQ(b, Vec3(-a));
  }
}

TEST(FlowProperty, ModeDependsOnlyOnGammas) {
  oracle::Sampler s(304);
  for (int i = 0; i < 2000; ++i) {
    const Superquadric ws = s.body(0.8, 1.5, 2, 0.0);
    Superquadric ob = s.body(0.2, 0.5, 2, 0.0);
    ob.center = s.on_level(ws, s.uniform(0.5, 1.1));
    const Vec3 xi = s.on_level(ws, s.uniform(0.0, 1.0));
    EXPECT_EQ(detect_mode(ws, ob, xi, kFlow), mode_from_gammas(gamma(ws, xi), gamma(ob, xi), kFlow));
    EXPECT_EQ(detect_mode(ws, std::nullopt, xi, kFlow), Mode::Free);
  }
}

TEST(FlowProperty, NoObstacleIdentityRegionIsBitIdentical) {
  oracle::Sampler s(305);
  for (int i = 0; i < 1000; ++i) {
    const Superquadric ws = s.body(0.5, 2.0, 3, 0.3);
    const Vec3 xi = s.on_level(ws, s.uniform(0.0, kMod.lambda_w));
    const OriginalDs ds = random_ds(s);
    const Vec3 v = eval_modulated(ws, std::nullopt, ds, xi, kFlow, kMod).velocity;
    const Vec3 f = eval_original(ds, xi);
    ASSERT_EQ(std::memcmp(v.data(), f.data(), sizeof(double) * 3), 0);
  }
}
