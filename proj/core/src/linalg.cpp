#include "dsavoid/linalg.hpp"

#include <cmath>

#include <Eigen/Geometry>

#include "dsavoid/error.hpp"

namespace dsavoid {

namespace {
constexpr double kSingularRatio = 1e-12;
constexpr double kRankRatio = 1e-14;
}  // namespace

Mat3 inverse3(const Mat3& m) {
  if (!m.allFinite()) throw Error(ErrorCode::InvalidInput, "matrix has non-finite entries");
  const Vec3 c0 = m.col(0);
  const Vec3 c1 = m.col(1);
  const Vec3 c2 = m.col(2);
  // Rows of the adjugate are the pairwise cross products of the columns.
  const Vec3 r0 = c1.cross(c2);
  const Vec3 r1 = c2.cross(c0);
  const Vec3 r2 = c0.cross(c1);
  const double det = c0.dot(r0);
  const double scale = c0.norm() * c1.norm() * c2.norm();
  if (!(std::abs(det) >= kSingularRatio * scale) || scale == 0.0) {
    throw Error(ErrorCode::SingularBasis, "basis matrix is singular");
  }
  Mat3 inv;
  inv.row(0) = r0.transpose() / det;
  inv.row(1) = r1.transpose() / det;
  inv.row(2) = r2.transpose() / det;
  return inv;
}

Mat23 pinv_3x2(const Mat32& e) {
  if (!e.allFinite()) throw Error(ErrorCode::InvalidInput, "matrix has non-finite entries");
  const Eigen::Matrix2d gram = e.transpose() * e;
  const double det = gram(0, 0) * gram(1, 1) - gram(0, 1) * gram(1, 0);
  const double scale = gram(0, 0) * gram(1, 1);
  if (!(std::abs(det) >= kRankRatio * scale) || scale == 0.0) {
    throw Error(ErrorCode::RankDeficient, "3x2 basis has (nearly) parallel columns");
  }
  Eigen::Matrix2d gram_inv;
  gram_inv << gram(1, 1), -gram(0, 1), -gram(1, 0), gram(0, 0);
  gram_inv /= det;
  return gram_inv * e.transpose();
}

Mat3 similarity(const Mat3& basis, const Vec3& eigenvalues) {
  return basis * eigenvalues.asDiagonal() * inverse3(basis);
}

}  // namespace dsavoid
