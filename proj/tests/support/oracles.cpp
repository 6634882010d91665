#include "oracles.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

double gamma_pow(const Superquadric& body, const Vec3& xi) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double u = (xi[i] - body.center[i]) / (body.axes[i] + body.margin);
    sum += std::pow(std::abs(u), 2.0 * body.power);
  }
  return sum;
}

Vec3 central_gradient(const std::function<double(const Vec3&)>& f, const Vec3& xi, double h) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 step = Vec3::Zero();
    step[i] = h;
    g[i] = (f(xi + step) - f(xi - step)) / (2.0 * h);
  }
  return g;
}

Mat3 similarity_lu(const Mat3& basis, const Vec3& eigenvalues) {
  const Eigen::FullPivLU<Mat3> lu(basis);
  return basis * eigenvalues.asDiagonal() * lu.solve(Mat3::Identity());
}

Vec3 intersection_velocity_svd(const Vec3& n_o, const Vec3& e, double lambda1, double lambda2,
                               const Vec3& f) {
  Eigen::Matrix<double, 3, 2> E;
  E.col(0) = n_o;
  E.col(1) = e;
  const Eigen::Vector2d c =
      Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>>(E, Eigen::ComputeFullU | Eigen::ComputeFullV)
          .solve(f);
  return lambda1 * c[0] * n_o + lambda2 * c[1] * e;
}

Vec3 linear_flow_exact(const Mat3& gain, const Vec3& target, const Vec3& x0, double t) {
  const Mat3 propagator = (-gain * t).exp();
  return target + propagator * (x0 - target);
}

std::size_t radial_step_bound(double d0, double tol, double k, double dt) {
  return static_cast<std::size_t>(std::ceil(std::log(d0 / tol) / (k * dt))) + 2;
}

double swept_area(const std::vector<dsavoid::TrajectorySample>& samples, const Vec3& origin,
                  const Vec3& axis) {
  const Vec3 a = axis.normalized();
  double area = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const Vec3 r0 = samples[i - 1].xi - origin;
    const Vec3 r1 = samples[i].xi - origin;
    area += 0.5 * a.dot(r0.cross(r1));
  }
  return area;
}

double Sampler::uniform(double lo, double hi) {
  return lo + (hi - lo) * std::generate_canonical<double, 53>(rng_);
}

int Sampler::integer(int lo, int hi) {
  return lo + static_cast<int>(rng_() % static_cast<std::uint32_t>(hi - lo + 1));
}

Vec3 Sampler::unit() {
  // rejection from the cube keeps this independent of Gaussian sampling
  for (;;) {
    const Vec3 v(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    const double n = v.norm();
    if (n > 0.05 && n <= 1.0) return v / n;
  }
}

Vec3 Sampler::gaussian() {
  std::normal_distribution<double> n;
  return Vec3(n(rng_), n(rng_), n(rng_));
}

Superquadric Sampler::body(double axis_lo, double axis_hi, int max_power, double center_box) {
  Superquadric b;
  b.center = Vec3(uniform(-center_box, center_box), uniform(-center_box, center_box),
                  uniform(-center_box, center_box));
  b.axes = Vec3(uniform(axis_lo, axis_hi), uniform(axis_lo, axis_hi), uniform(axis_lo, axis_hi));
  b.power = integer(1, max_power);
  return b;
}

Vec3 Sampler::on_level(const Superquadric& body, double g) {
  const Vec3 d = unit();
  double lo = 0.0;
  double hi = 1.0;
  while (gamma_pow(body, body.center + hi * d) < g) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gamma_pow(body, body.center + mid * d) < g ? lo : hi) = mid;
  }
  return body.center + 0.5 * (lo + hi) * d;
}

}  // namespace oracle
