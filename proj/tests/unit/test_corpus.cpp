#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dsavoid/corpus.hpp"
#include "dsavoid/error.hpp"
#include "dsavoid/scenario_io.hpp"
#include "oracles.hpp"

using namespace dsavoid;

namespace {

Trajectory run_case(std::string_view name) {
  const Scenario sc = parse_scenario(demo_case(name).text);
  return simulate(sc, sc.starts.front());
}

std::vector<TrajectorySample> circle(int n, double turns) {
  std::vector<TrajectorySample> out;
  for (int i = 0; i <= n; ++i) {
    const double a = 2.0 * std::numbers::pi * turns * i / n;
    out.push_back({0.0, Vec3(std::cos(a), std::sin(a), 0.3), Vec3::Zero(), Mode::Free,
                   std::nullopt, 0.0});
  }
  return out;
}

}  // namespace

TEST(Corpus, EveryCaseParses) {
  ASSERT_EQ(demo_corpus().size(), 5u);
  for (const DemoCase& c : demo_corpus()) {
    EXPECT_NO_THROW(parse_scenario(c.text)) << c.name;
  }
}

TEST(Corpus, UnknownNameRejected) {
  try {
    demo_case("nope");
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(Corpus, WallGroupDiffersOnlyInMethod) {
  const Scenario a = parse_scenario(demo_case("wall_original").text);
  const Scenario b = parse_scenario(demo_case("wall_full").text);
  EXPECT_EQ(a.flow.method, Method::Original);
  EXPECT_EQ(b.flow.method, Method::Full);
  Scenario a_as_full = a;
  a_as_full.flow.method = Method::Full;
  EXPECT_EQ(write_scenario(a_as_full), write_scenario(b));
}

TEST(Corpus, FullMethodStaysContainedAndArrives) {
  const Trajectory traj = run_case("wall_full");
  ASSERT_EQ(traj.outcome, Outcome::ReachedTarget);
  EXPECT_LE(traj.stats.max_gamma_w, 1.0 + 1e-6);
  EXPECT_GE(*traj.stats.min_gamma_o, 1.0 - 1e-6);
}

TEST(Corpus, UnmodulatedFieldLeavesWorkspace) {
  EXPECT_GT(run_case("wall_original").stats.max_gamma_w, 1.0);
}

TEST(WindingAngle, FullCircles) {
  const Vec3 origin(0, 0, 0);
  EXPECT_NEAR(winding_angle(circle(400, 1.0), origin, Vec3::UnitZ()), 2.0 * std::numbers::pi, 1e-9);
  EXPECT_NEAR(winding_angle(circle(400, -1.5), origin, Vec3::UnitZ()), -3.0 * std::numbers::pi,
              1e-9);
  EXPECT_NEAR(winding_angle(circle(400, 1.0), origin, -Vec3::UnitZ()), -2.0 * std::numbers::pi,
              1e-9);
}

TEST(WindingAngle, AgreesInSignWithSweptArea) {
  const auto path = circle(100, 0.4);
  const double angle = winding_angle(path, Vec3::Zero(), Vec3::UnitZ());
  const double area = oracle::swept_area(path, Vec3::Zero(), Vec3::UnitZ());
  EXPECT_GT(angle, 0.0);
  EXPECT_GT(area, 0.0);
}
