#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "dsavoid/error.hpp"
#include "dsavoid/linalg.hpp"
#include "oracles.hpp"

using namespace dsavoid;

TEST(Inverse3, MatchesLuOnRandomMatrices) {
  oracle::Sampler s(11);
  for (int i = 0; i < 200; ++i) {
    Mat3 m;
    for (int k = 0; k < 9; ++k) m.data()[k] = s.uniform(-2, 2);
    if (std::abs(m.determinant()) < 1e-3) continue;
    const Mat3 ref = Eigen::FullPivLU<Mat3>(m).inverse();
    EXPECT_LE((inverse3(m) - ref).norm(), 1e-10 * ref.norm());
  }
}

TEST(Inverse3, SingularBasisRejected) {
  Mat3 m;
  m << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  try {
    inverse3(m);
    FAIL() << "expected SingularBasis";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularBasis);
  }
}

TEST(Pinv3x2, DiagonalCase) {
  Mat32 e;
  e << 1, 0, 0, 2, 0, 0;
  Mat23 expected;
  expected << 1, 0, 0, 0, 0.5, 0;
  EXPECT_LE((pinv_3x2(e) - expected).norm(), 1e-15);
}

TEST(Pinv3x2, OrthonormalColumnsGiveTranspose) {
  const Eigen::Matrix3d q = Eigen::Quaterniond(0.3, -0.5, 0.7, 0.2).normalized().toRotationMatrix();
  const Mat32 e = q.leftCols<2>();
  EXPECT_LE((pinv_3x2(e) - e.transpose()).norm(), 1e-14);
}

TEST(Pinv3x2, LeftInverseAndSvdAgreement) {
  oracle::Sampler s(5);
  for (int i = 0; i < 200; ++i) {
    Mat32 e;
    e.col(0) = s.gaussian();
    e.col(1) = s.gaussian();
    const Mat23 p = pinv_3x2(e);
    EXPECT_LE((p * e - Eigen::Matrix2d::Identity()).norm(), 1e-10);
    const Mat23 ref = e.completeOrthogonalDecomposition().pseudoInverse();
    EXPECT_LE((p - ref).norm(), 1e-9 * ref.norm());
  }
}

TEST(Pinv3x2, ParallelColumnsRejected) {
  Mat32 e;
  e << 1, 2, 1, 2, 1, 2;
  try {
    pinv_3x2(e);
    FAIL() << "expected RankDeficient";
  } catch (const Error& ex) {
    EXPECT_EQ(ex.code(), ErrorCode::RankDeficient);
  }
}

TEST(Similarity, MatchesLuOracle) {
  oracle::Sampler s(8);
  for (int i = 0; i < 100; ++i) {
    Mat3 b;
    for (int k = 0; k < 9; ++k) b.data()[k] = s.uniform(-1, 1);
    if (std::abs(b.determinant()) < 1e-2) continue;
    const Vec3 d(s.uniform(0, 2), s.uniform(0, 2), s.uniform(0, 2));
    const Mat3 ref = oracle::similarity_lu(b, d);
    EXPECT_LE((similarity(b, d) - ref).norm(), 1e-9 * ref.norm());
  }
}
