#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "dsavoid/geometry.hpp"
#include "dsavoid/modulation.hpp"

namespace dsavoid {

/// f(ξ) = -A (ξ - ξ*), with every eigenvalue of A in the open right half-plane.
struct LinearAttractor {
  Mat3 gain_matrix = Mat3::Identity();
  Vec3 target = Vec3::Zero();
};

/// f(ξ) = -k (ξ - ξ*).
struct ScaledRadial {
  double gain = 1.0;
  Vec3 target = Vec3::Zero();
};

/**
 * @brief Globally asymptotically stable original dynamical system.
 *
 * Immutable once constructed. Construction rejects gain matrices that fail
 * the Routh-Hurwitz test on det(sI + A), i.e. those with an eigenvalue whose
 * real part is not strictly positive.
 */
class OriginalDs {
 public:
  using Variant = std::variant<LinearAttractor, ScaledRadial>;

  explicit OriginalDs(LinearAttractor ds);
  explicit OriginalDs(ScaledRadial ds);

  Vec3 operator()(const Vec3& xi) const;
  const Vec3& target() const;
  const Variant& variant() const { return ds_; }

 private:
  Variant ds_;
};

/// Routh-Hurwitz check that -A is Hurwitz (all eigenvalues of A have Re > 0).
bool is_hurwitz_stable_gain(const Mat3& gain_matrix);

enum class Mode { Free, Combined, Intersection };

std::string_view to_token(Mode mode);

enum class SignPref { Along, Opposite };

/// Which vector field drives the evaluation. Full is the workspace-aware
/// method; the other two are the comparison baselines.
enum class Method { Full, ObstacleOnly, Original };

std::string_view to_token(SignPref pref);
std::string_view to_token(Method method);

struct FlowParams {
  double v_th = 0.01;
  SignPref sign_pref = SignPref::Along;
  double beta1 = 0.95;
  double beta2 = 1.05;
  Method method = Method::Full;

  void validate() const;
};

/// Tolerance on the "1" side of the band so points projected exactly onto a
/// surface are not bounced out of the band by rounding.
inline constexpr double kBandBoundaryTol = 1e-12;

Mode mode_from_gammas(double gamma_w, std::optional<double> gamma_o, const FlowParams& params);

Mode detect_mode(const Superquadric& ws, const std::optional<Superquadric>& ob, const Vec3& xi,
                 const FlowParams& params);

struct ModulatedVelocity {
  Vec3 velocity;
  Mode mode;
  /// Modulated velocity before direction selection and the velocity floor.
  Vec3 raw;
  double gamma_w;
  std::optional<double> gamma_o;
};

Vec3 eval_original(const OriginalDs& ds, const Vec3& xi);

ModulatedVelocity eval_modulated(const Superquadric& ws, const std::optional<Superquadric>& ob,
                                 const OriginalDs& ds, const Vec3& xi, const FlowParams& flow,
                                 const ModulationParams& modulation);

Vec3 apply_velocity_floor(const Vec3& v, const Vec3& e_ow, const FlowParams& params);

Vec3 apply_direction(const Vec3& v, const Vec3& e_ow, SignPref pref);

}  // namespace dsavoid
