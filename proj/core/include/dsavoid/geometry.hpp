#pragma once

#include <utility>

#include <Eigen/Dense>

namespace dsavoid {

/// Task-space position [m] or velocity [m/s].
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/**
 * @brief Axis-aligned superquadric  sum_i ((x - c)_i / a_i)^(2p) = 1.
 *
 * Used both for the workspace boundary and for obstacle surfaces. The margin
 * inflates every axis and is meant for obstacles only; the workspace keeps
 * its raw axes.
 */
struct Superquadric {
  Vec3 center = Vec3::Zero();
  Vec3 axes = Vec3::Ones();
  int power = 1;
  double margin = 0.0;

  /// axes + margin, the lengths Γ is evaluated against.
  Vec3 effective_axes() const { return axes.array() + margin; }

  /// Throws InvalidInput unless axes > 0, power >= 1, margin >= 0 and all finite.
  void validate() const;
};

enum class Region { Exterior, Boundary, Interior };

struct TangentPair {
  Vec3 e1;
  Vec3 e2;
};

/// Algebraic distance Γ(ξ): < 1 inside, 1 on the surface, > 1 outside.
double gamma(const Superquadric& body, const Vec3& xi);

/// ∂Γ/∂ξ, component i = 2p (ξ̃_i)^(2p-1) / a_i^(2p).
Vec3 gamma_gradient(const Superquadric& body, const Vec3& xi);

/// Inward-pointing workspace normal -∇Γ_w. Throws ZeroNormal at the center.
Vec3 workspace_normal(const Superquadric& ws, const Vec3& xi);

/// Outward-pointing obstacle normal +∇Γ_o. Throws ZeroNormal at the center.
Vec3 obstacle_normal(const Superquadric& ob, const Vec3& xi);

/**
 * @brief Two independent vectors spanning the plane orthogonal to @p n.
 *
 * Uses e1 = (n2, -n1, 0), e2 = (n3, 0, -n1) whenever |n1| >= 1e-9 ||n||.
 * Otherwise the coordinates are cyclically permuted so the largest component
 * of n takes the first slot, the same formulas are applied, and the result is
 * permuted back.
 */
TangentPair tangent_basis(const Vec3& n);

Region classify_region(const Superquadric& body, const Vec3& xi, double tol);

/// n_w × n_o at ξ. Throws ParallelNormals when the surfaces touch tangentially.
Vec3 intersection_tangent(const Superquadric& ws, const Superquadric& ob, const Vec3& xi);

/**
 * @brief Radially rescale ξ about the body center so that Γ(ξ) = target_gamma.
 *
 * Relies on Γ(c + s ξ̃) = s^(2p) Γ(c + ξ̃). Returns ξ unchanged at the center.
 */
Vec3 radial_rescale(const Superquadric& body, const Vec3& xi, double target_gamma = 1.0);

/**
 * @brief Newton projection of @p guess onto the curve Γ_w = Γ_o = 1.
 *
 * Minimum-norm Gauss-Newton steps on the two residuals. Returns the projected
 * point and whether both residuals dropped below @p tol within the iteration
 * budget.
 */
std::pair<Vec3, bool> project_to_intersection(const Superquadric& ws,
                                              const Superquadric& ob,
                                              const Vec3& guess,
                                              double tol = 1e-14,
                                              int max_iterations = 60);

}  // namespace dsavoid
