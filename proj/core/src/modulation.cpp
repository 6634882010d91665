#include "dsavoid/modulation.hpp"

#include <algorithm>
#include <cmath>

#include "dsavoid/error.hpp"

namespace dsavoid {

void ModulationParams::validate() const {
  if (!(lambda_w > 0.0 && lambda_w < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "lambda_w must lie in (0, 1)");
  }
  if (!(eps_weight > 0.0) || !std::isfinite(eps_weight)) {
    throw Error(ErrorCode::InvalidInput, "eps_weight must be positive");
  }
  if (lambda_sign != 1.0 && lambda_sign != -1.0) {
    throw Error(ErrorCode::InvalidInput, "lambda_sign must be +1 or -1");
  }
}

namespace {

Mat3 basis_from_normal(const Vec3& n) {
  const TangentPair t = tangent_basis(n);
  Mat3 e;
  e.col(0) = n;
  e.col(1) = t.e1;
  e.col(2) = t.e2;
  return e;
}

}  // namespace

Decomposition workspace_decomposition(const Superquadric& ws, const Vec3& xi, double omega_w,
                                      const ModulationParams& params) {
  const double g = gamma(ws, xi);
  if (g > 1.0 + kDomainSlack) {
    throw Error(ErrorCode::InvalidInput, "workspace modulation evaluated outside the workspace");
  }
  if (!(omega_w >= 0.0 && omega_w <= 1.0)) {
    throw Error(ErrorCode::InvalidInput, "omega_w must lie in [0, 1]");
  }
  if (g <= params.lambda_w) {
    return {Mat3::Identity(), Vec3::Ones()};
  }
  const double shift = params.lambda_sign * omega_w * g;
  return {basis_from_normal(workspace_normal(ws, xi)), Vec3(1.0 - shift, 1.0 + shift, 1.0 + shift)};
}

Decomposition obstacle_decomposition(const Superquadric& ob, const Vec3& xi, double omega_o) {
  const double g = gamma(ob, xi);
  if (g < 1.0 - kDomainSlack) {
    throw Error(ErrorCode::InvalidInput, "obstacle modulation evaluated inside the obstacle");
  }
  if (!(omega_o >= 0.0 && omega_o <= 1.0)) {
    throw Error(ErrorCode::InvalidInput, "omega_o must lie in [0, 1]");
  }
  const double shift = omega_o / g;
  return {basis_from_normal(obstacle_normal(ob, xi)), Vec3(1.0 - shift, 1.0 + shift, 1.0 + shift)};
}

Mat3 compose(const Decomposition& d) {
  const double normal_ev = d.eigenvalues[0];
  const double tangent_ev = d.eigenvalues[1];
  if (normal_ev == 1.0 && tangent_ev == 1.0 && d.eigenvalues[2] == 1.0) {
    return Mat3::Identity();
  }
  if (d.eigenvalues[2] != tangent_ev) {
    return similarity(d.basis, d.eigenvalues);
  }
  // With a repeated tangential eigenvalue, E·D·E⁻¹ = λ2·I + (λ1 - λ2)·n ⊗ row0(E⁻¹).
  // Only the first row of the adjugate inverse enters, and for the tangent
  // bases used here it is computed to full relative accuracy, whereas the
  // literal triple product loses digits with cond(E).
  const Mat3 inv = inverse3(d.basis);
  Mat3 m = (normal_ev - tangent_ev) * (d.basis.col(0) * inv.row(0));
  m.diagonal().array() += tangent_ev;
  return m;
}

Mat3 workspace_modulation(const Superquadric& ws, const Vec3& xi, const ModulationParams& params) {
  return modified_workspace_modulation(ws, xi, 1.0, params);
}

Mat3 obstacle_modulation(const Superquadric& ob, const Vec3& xi, double omega_o) {
  return compose(obstacle_decomposition(ob, xi, omega_o));
}

Weights weights_from_gammas(double gamma_o, double gamma_w, double eps_weight) {
  const double to_obstacle = std::max(gamma_o, 1.0) - 1.0;
  const double to_boundary = 1.0 - std::min(gamma_w, 1.0);
  const double denom = to_obstacle + to_boundary;
  if (!(denom >= eps_weight)) {
    throw Error(ErrorCode::NearIntersectionSingularity,
                "weights undefined near the obstacle/workspace intersection line");
  }
  return {to_boundary / denom, to_obstacle / denom};
}

Weights weights(const Superquadric& ws, const Superquadric& ob, const Vec3& xi,
                double eps_weight) {
  return weights_from_gammas(gamma(ob, xi), gamma(ws, xi), eps_weight);
}

Mat3 modified_workspace_modulation(const Superquadric& ws, const Vec3& xi, double omega_w,
                                   const ModulationParams& params) {
  return compose(workspace_decomposition(ws, xi, omega_w, params));
}

Mat3 combined_modulation(const Superquadric& ws, const Superquadric& ob, const Vec3& xi,
                         const ModulationParams& params) {
  const Weights w = weights(ws, ob, xi, params.eps_weight);
  return obstacle_modulation(ob, xi, w.obstacle) *
         modified_workspace_modulation(ws, xi, w.workspace, params);
}

IntersectionFrame intersection_frame(const Superquadric& ws, const Superquadric& ob,
                                     const Vec3& xi) {
  const double g = gamma(ob, xi);
  if (g < 1.0 - kDomainSlack) {
    throw Error(ErrorCode::InvalidInput, "intersection modulation evaluated inside the obstacle");
  }
  const Vec3 tangent = intersection_tangent(ws, ob, xi);
  const Vec3 no = obstacle_normal(ob, xi);
  Mat32 basis;
  basis.col(0) = no;
  basis.col(1) = tangent;
  const Eigen::Vector2d eig(1.0 - 1.0 / g, 1.0 + 1.0 / g);
  const Mat3 m = basis * eig.asDiagonal() * pinv_3x2(basis);
  return {m, tangent, no, g};
}

Mat3 intersection_modulation(const Superquadric& ws, const Superquadric& ob, const Vec3& xi) {
  return intersection_frame(ws, ob, xi).modulation;
}

}  // namespace dsavoid
