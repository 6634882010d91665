#include "dsavoid/flow.hpp"

#include <cmath>

#include "dsavoid/error.hpp"

namespace dsavoid {

namespace {

constexpr double kZeroVelocity = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

bool is_hurwitz_stable_gain(const Mat3& a) {
  if (!a.allFinite()) return false;
  // det(sI + A) = s^3 + c2 s^2 + c1 s + c0
  const double c2 = a.trace();
  const double c1 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) -
                    a(0, 2) * a(2, 0) + a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  const double c0 = a.determinant();
  return c2 > 0.0 && c0 > 0.0 && c2 * c1 > c0;
}

OriginalDs::OriginalDs(LinearAttractor ds) : ds_(std::move(ds)) {
  const auto& la = std::get<LinearAttractor>(ds_);
  if (!la.target.allFinite()) throw Error(ErrorCode::InvalidInput, "target must be finite");
  if (!is_hurwitz_stable_gain(la.gain_matrix)) {
    throw Error(ErrorCode::InvalidInput,
                "gain matrix must have eigenvalues with positive real parts");
  }
}

OriginalDs::OriginalDs(ScaledRadial ds) : ds_(std::move(ds)) {
  const auto& sr = std::get<ScaledRadial>(ds_);
  if (!sr.target.allFinite()) throw Error(ErrorCode::InvalidInput, "target must be finite");
  if (!(sr.gain > 0.0) || !std::isfinite(sr.gain)) {
    throw Error(ErrorCode::InvalidInput, "radial gain must be positive");
  }
}

Vec3 OriginalDs::operator()(const Vec3& xi) const {
  return std::visit(Overloaded{
                        [&](const LinearAttractor& la) -> Vec3 {
                          return -(la.gain_matrix * (xi - la.target));
                        },
                        [&](const ScaledRadial& sr) -> Vec3 { return -sr.gain * (xi - sr.target); },
                    },
                    ds_);
}

const Vec3& OriginalDs::target() const {
  return std::visit([](const auto& d) -> const Vec3& { return d.target; }, ds_);
}

std::string_view to_token(Mode mode) {
  switch (mode) {
    case Mode::Free: return "free";
    case Mode::Combined: return "combined";
    case Mode::Intersection: return "intersect";
  }
  return "free";
}

std::string_view to_token(SignPref pref) {
  return pref == SignPref::Along ? "along" : "opposite";
}

std::string_view to_token(Method method) {
  switch (method) {
    case Method::Full: return "full";
    case Method::ObstacleOnly: return "obstacle_only";
    case Method::Original: return "original";
  }
  return "full";
}

void FlowParams::validate() const {
  if (!(v_th > 0.0) || !std::isfinite(v_th)) {
    throw Error(ErrorCode::InvalidInput, "v_th must be positive");
  }
  if (!(beta1 > 0.0 && beta1 <= 1.0)) {
    throw Error(ErrorCode::InvalidInput, "beta1 must lie in (0, 1]");
  }
  if (!(beta2 >= 1.0) || !std::isfinite(beta2)) {
    throw Error(ErrorCode::InvalidInput, "beta2 must be >= 1");
  }
}

Mode mode_from_gammas(double gamma_w, std::optional<double> gamma_o, const FlowParams& params) {
  if (!gamma_o) return Mode::Free;
  const bool near_boundary =
      gamma_w >= params.beta1 && gamma_w <= 1.0 + kBandBoundaryTol;
  const bool near_obstacle =
      *gamma_o >= 1.0 - kBandBoundaryTol && *gamma_o <= params.beta2;
  return near_boundary && near_obstacle ? Mode::Intersection : Mode::Combined;
}

Mode detect_mode(const Superquadric& ws, const std::optional<Superquadric>& ob, const Vec3& xi,
                 const FlowParams& params) {
  std::optional<double> go;
  if (ob) go = gamma(*ob, xi);
  return mode_from_gammas(gamma(ws, xi), go, params);
}

Vec3 eval_original(const OriginalDs& ds, const Vec3& xi) { return ds(xi); }

Vec3 apply_direction(const Vec3& v, const Vec3& e_ow, SignPref pref) {
  const double proj = v.dot(e_ow);
  const double sign = proj > 0.0 ? 1.0 : (proj < 0.0 ? -1.0 : 0.0);
  return (pref == SignPref::Along ? sign : -sign) * v;
}

Vec3 apply_velocity_floor(const Vec3& v, const Vec3& e_ow, const FlowParams& params) {
  const double speed = v.norm();
  if (speed >= params.v_th) return v;
  if (speed > kZeroVelocity) return (params.v_th / speed) * v;
  const double sigma = params.sign_pref == SignPref::Along ? 1.0 : -1.0;
  return (params.v_th * sigma / e_ow.norm()) * e_ow;
}

ModulatedVelocity eval_modulated(const Superquadric& ws, const std::optional<Superquadric>& ob,
                                 const OriginalDs& ds, const Vec3& xi, const FlowParams& flow,
                                 const ModulationParams& modulation) {
  ModulatedVelocity out;
  out.gamma_w = gamma(ws, xi);
  if (ob) out.gamma_o = gamma(*ob, xi);
  const Vec3 f = ds(xi);

  switch (flow.method) {
    case Method::Original:
      out.mode = Mode::Free;
      out.raw = out.velocity = f;
      return out;
    case Method::ObstacleOnly:
      if (!ob) {
        out.mode = Mode::Free;
        out.raw = out.velocity = f;
        return out;
      }
      if (*out.gamma_o < 1.0 - kDomainSlack) {
        throw Error(ErrorCode::OutOfDomain, "point lies inside the obstacle");
      }
      out.mode = Mode::Combined;
      out.raw = out.velocity = obstacle_modulation(*ob, xi, 1.0) * f;
      return out;
    case Method::Full:
      break;
  }

  if (out.gamma_w > 1.0 + kDomainSlack) {
    throw Error(ErrorCode::OutOfDomain, "point lies outside the workspace");
  }
  if (out.gamma_o && *out.gamma_o < 1.0 - kDomainSlack) {
    throw Error(ErrorCode::OutOfDomain, "point lies inside the obstacle");
  }

  out.mode = mode_from_gammas(out.gamma_w, out.gamma_o, flow);
  switch (out.mode) {
    case Mode::Free:
      // identity branch returns f untouched (I·f would turn -0.0 into +0.0)
      out.raw = out.velocity =
          out.gamma_w <= modulation.lambda_w ? f : Vec3(workspace_modulation(ws, xi, modulation) * f);
      break;
    case Mode::Combined: {
      const Weights w = weights_from_gammas(*out.gamma_o, out.gamma_w, modulation.eps_weight);
      const Mat3 m = obstacle_modulation(*ob, xi, w.obstacle) *
                     modified_workspace_modulation(ws, xi, w.workspace, modulation);
      out.raw = out.velocity = m * f;
      break;
    }
    case Mode::Intersection: {
      const IntersectionFrame frame = intersection_frame(ws, *ob, xi);
      out.raw = frame.modulation * f;
      // Off the line (Γ_o > 1 inside the band) M_ow·f keeps a normal part; only the
      // component along e_ow is followed, as on the line itself.
      const Vec3 along = frame.tangent * (frame.tangent.dot(out.raw) / frame.tangent.squaredNorm());
      out.velocity = apply_velocity_floor(apply_direction(along, frame.tangent, flow.sign_pref),
                                          frame.tangent, flow);
      break;
    }
  }
  return out;
}

}  // namespace dsavoid
