#pragma once

#include <Eigen/Dense>

#include "dsavoid/geometry.hpp"

namespace dsavoid {

using Mat32 = Eigen::Matrix<double, 3, 2>;
using Mat23 = Eigen::Matrix<double, 2, 3>;

/// Closed-form adjugate inverse. Throws SingularBasis when
/// |det| < 1e-12 * ||c0|| ||c1|| ||c2|| (Hadamard bound of the columns).
Mat3 inverse3(const Mat3& m);

/// Left pseudo-inverse (EᵀE)⁻¹Eᵀ of a full-column-rank 3×2 matrix.
/// Throws RankDeficient when |det(EᵀE)| < 1e-14 ||c0||² ||c1||².
Mat23 pinv_3x2(const Mat32& e);

/// E·diag(d)·E⁻¹ evaluated literally (adjugate inverse).
Mat3 similarity(const Mat3& basis, const Vec3& eigenvalues);

}  // namespace dsavoid
