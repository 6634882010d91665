#include "dsavoid/geometry.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>

#include "dsavoid/error.hpp"

namespace dsavoid {

namespace {

constexpr double kZeroNormal = 1e-12;
constexpr double kPivotRatio = 1e-9;
constexpr double kParallelRatio = 1e-10;

void require_finite(const Vec3& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " has non-finite components");
  }
}

// x^k for small non-negative integer k, by repeated squaring.
double ipow(double x, int k) {
  double result = 1.0;
  while (k > 0) {
    if (k & 1) result *= x;
    x *= x;
    k >>= 1;
  }
  return result;
}

}  // namespace

void Superquadric::validate() const {
  if (!center.allFinite() || !axes.allFinite() || !std::isfinite(margin)) {
    throw Error(ErrorCode::InvalidInput, "superquadric has non-finite parameters");
  }
  if ((axes.array() <= 0.0).any()) {
    throw Error(ErrorCode::InvalidInput, "superquadric axes must be positive");
  }
  if (power < 1) {
    throw Error(ErrorCode::InvalidInput, "superquadric power must be >= 1");
  }
  if (margin < 0.0) {
    throw Error(ErrorCode::InvalidInput, "superquadric margin must be non-negative");
  }
}

double gamma(const Superquadric& body, const Vec3& xi) {
  require_finite(xi, "xi");
  const Vec3 scaled = (xi - body.center).cwiseQuotient(body.effective_axes());
  const int exponent = 2 * body.power;
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += ipow(scaled[i], exponent);
  return sum;
}

Vec3 gamma_gradient(const Superquadric& body, const Vec3& xi) {
  require_finite(xi, "xi");
  const Vec3 a = body.effective_axes();
  const Vec3 scaled = (xi - body.center).cwiseQuotient(a);
  const int p = body.power;
  Vec3 grad;
  for (int i = 0; i < 3; ++i) {
    // 2p (x/a)^(2p-1) / a == 2p x^(2p-1) / a^(2p)
    grad[i] = 2.0 * p * ipow(scaled[i], 2 * p - 1) / a[i];
  }
  return grad;
}

Vec3 workspace_normal(const Superquadric& ws, const Vec3& xi) {
  Vec3 n = -gamma_gradient(ws, xi);
  if (n.norm() < kZeroNormal) {
    throw Error(ErrorCode::ZeroNormal, "workspace normal vanishes at the workspace center");
  }
  return n;
}

Vec3 obstacle_normal(const Superquadric& ob, const Vec3& xi) {
  Vec3 n = gamma_gradient(ob, xi);
  if (n.norm() < kZeroNormal) {
    throw Error(ErrorCode::ZeroNormal, "obstacle normal vanishes at the obstacle center");
  }
  return n;
}

TangentPair tangent_basis(const Vec3& n) {
  require_finite(n, "normal");
  const double norm = n.norm();
  if (norm < kZeroNormal) {
    throw Error(ErrorCode::ZeroNormal, "tangent basis requested for a zero normal");
  }
  if (std::abs(n[0]) >= kPivotRatio * norm) {
    return {Vec3(n[1], -n[0], 0.0), Vec3(n[2], 0.0, -n[0])};
  }

  int k = 0;
  n.cwiseAbs().maxCoeff(&k);
  const int i1 = (k + 1) % 3;
  const int i2 = (k + 2) % 3;
  // permuted normal m = (n_k, n_i1, n_i2); e1' = (m1, -m0, 0), e2' = (m2, 0, -m0)
  TangentPair out{Vec3::Zero(), Vec3::Zero()};
  out.e1[k] = n[i1];
  out.e1[i1] = -n[k];
  out.e1[i2] = 0.0;
  out.e2[k] = n[i2];
  out.e2[i1] = 0.0;
  out.e2[i2] = -n[k];
  return out;
}

Region classify_region(const Superquadric& body, const Vec3& xi, double tol) {
  const double g = gamma(body, xi);
  if (std::abs(g - 1.0) <= tol) return Region::Boundary;
  return g > 1.0 ? Region::Exterior : Region::Interior;
}

Vec3 intersection_tangent(const Superquadric& ws, const Superquadric& ob, const Vec3& xi) {
  const Vec3 nw = workspace_normal(ws, xi);
  const Vec3 no = obstacle_normal(ob, xi);
  Vec3 e = nw.cross(no);
  if (e.norm() < kParallelRatio * nw.norm() * no.norm()) {
    throw Error(ErrorCode::ParallelNormals,
                "workspace and obstacle normals are parallel (tangential contact)");
  }
  return e;
}

Vec3 radial_rescale(const Superquadric& body, const Vec3& xi, double target_gamma) {
  const double g = gamma(body, xi);
  if (g == 0.0) return xi;
  const double s = std::pow(target_gamma / g, 1.0 / (2.0 * body.power));
  return body.center + s * (xi - body.center);
}

std::pair<Vec3, bool> project_to_intersection(const Superquadric& ws,
                                              const Superquadric& ob,
                                              const Vec3& guess,
                                              double tol,
                                              int max_iterations) {
  Vec3 x = guess;
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::Vector2d r(gamma(ws, x) - 1.0, gamma(ob, x) - 1.0);
    if (r.cwiseAbs().maxCoeff() <= tol) return {x, true};
    Eigen::Matrix<double, 2, 3> jac;
    jac.row(0) = gamma_gradient(ws, x).transpose();
    jac.row(1) = gamma_gradient(ob, x).transpose();
    const Eigen::Matrix2d jjt = jac * jac.transpose();
    const double det = jjt.determinant();
    if (!(std::abs(det) > 1e-300)) break;
    Vec3 step = jac.transpose() * jjt.inverse() * r;
    // Damp large steps so the iterate stays near the curve it started on.
    const double scale = ws.effective_axes().minCoeff();
    if (step.norm() > 0.25 * scale) step *= 0.25 * scale / step.norm();
    x -= step;
    if (!x.allFinite()) break;
  }
  const bool ok = std::abs(gamma(ws, x) - 1.0) <= tol && std::abs(gamma(ob, x) - 1.0) <= tol;
  return {x, ok};
}

}  // namespace dsavoid
