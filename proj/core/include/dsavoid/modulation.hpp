#pragma once

#include "dsavoid/geometry.hpp"
#include "dsavoid/linalg.hpp"

namespace dsavoid {

/// Slack on Γ allowed by the modulation preconditions (Γ_w <= 1 + slack,
/// Γ_o >= 1 - slack). Absorbs explicit-Euler overshoot when the guard is off.
inline constexpr double kDomainSlack = 0.05;

struct ModulationParams {
  /// Γ_w threshold below which the workspace modulation is the identity.
  double lambda_w = 0.7;
  /// Lower bound on the weight denominator (Γ_o - 1) + (1 - Γ_w).
  double eps_weight = 1e-9;
  /// Sign applied to Γ_w in the workspace eigenvalues. Always +1 in normal
  /// use; -1 is a deliberate corruption for mutation-testing the verifier.
  double lambda_sign = 1.0;

  void validate() const;
};

/// Basis E = [n, e1, e2] and eigenvalues (λ1, λ2, λ2) of a square modulation.
struct Decomposition {
  Mat3 basis;
  Vec3 eigenvalues;
};

struct Weights {
  double obstacle;   // ω_o
  double workspace;  // ω_w
};

/// Workspace eigen-structure with weight ω_w (ω_w = 1 gives the plain
/// workspace modulation). Eigenvalues are all 1 when Γ_w <= λ_w, in which
/// case the basis is left as the identity.
Decomposition workspace_decomposition(const Superquadric& ws, const Vec3& xi, double omega_w,
                                      const ModulationParams& params);

Decomposition obstacle_decomposition(const Superquadric& ob, const Vec3& xi, double omega_o);

/// E·diag(λ1, λ2, λ2)·E⁻¹ for a basis whose first column is the normal.
Mat3 compose(const Decomposition& d);

Mat3 workspace_modulation(const Superquadric& ws, const Vec3& xi, const ModulationParams& params);

Mat3 obstacle_modulation(const Superquadric& ob, const Vec3& xi, double omega_o);

Weights weights(const Superquadric& ws, const Superquadric& ob, const Vec3& xi,
                double eps_weight);

/// Same as weights() but from precomputed Γ values. Γ_w is clamped to <= 1
/// and Γ_o to >= 1 so small discretisation overshoot keeps ω in [0, 1].
Weights weights_from_gammas(double gamma_o, double gamma_w, double eps_weight);

Mat3 modified_workspace_modulation(const Superquadric& ws, const Vec3& xi, double omega_w,
                                   const ModulationParams& params);

/// M_o(ω_o) · ^wM_w(ω_w), obstacle factor on the left.
Mat3 combined_modulation(const Superquadric& ws, const Superquadric& ob, const Vec3& xi,
                         const ModulationParams& params);

struct IntersectionFrame {
  Mat3 modulation;  // M_ow
  Vec3 tangent;     // e_ow = n_w × n_o
  Vec3 obstacle_normal;
  double gamma_o;
};

/// Rank-deficient modulation E_ow·D_ow·pinv(E_ow) on the obstacle/workspace
/// intersection line, E_ow = [n_o, e_ow], D_ow = diag(1 - 1/Γ_o, 1 + 1/Γ_o).
IntersectionFrame intersection_frame(const Superquadric& ws, const Superquadric& ob,
                                     const Vec3& xi);

Mat3 intersection_modulation(const Superquadric& ws, const Superquadric& ob, const Vec3& xi);

}  // namespace dsavoid
