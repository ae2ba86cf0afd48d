#include "moframe/frame.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "moframe/errors.hpp"

namespace moframe {

namespace {

constexpr double kKappaTol = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Collect successive arc-length derivatives of f into one jet.
Jet collect_arclength_jet(const FramePoint& fp, Jet f, int count) {
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(count) + 1);
  d.push_back(f.value());
  for (int k = 0; k < count; ++k) {
    f = fp.ds(f);
    d.push_back(f.value());
  }
  return Jet(fp.parameter(), std::move(d));
}

}  // namespace

FramePoint::FramePoint(const Curve& curve, double t, int order)
    : FramePoint(curve.eval_jets(t, order), curve.declared_unit_speed()) {}

FramePoint::FramePoint(const JetVec3& jets, bool unit_speed)
    : t_(jets.x.basepoint()), unit_speed_(unit_speed), jets_(jets) {
  const JetVec3 d1 = derivative(jets_);
  v_ = norm(d1);
  T_ = unit_speed_ ? d1 : d1 / v_;
  N_ = ds(T_);
  B_ = cross(truncated(T_, N_.order()), N_);

  // kappa^2 = |phi' x phi''|^2 / |phi'|^6; for unit speed |phi''|^2 directly.
  const JetVec3 d2 = derivative(d1);
  Jet kappa_sq = unit_speed_ ? dot(d2, d2) : [&] {
    const JetVec3 cr = cross(truncated(d1, d2.order()), d2);
    const Jet v2 = (v_ * v_).truncated(cr.order());
    return dot(cr, cr) / (v2 * v2 * v2);
  }();
  kappa_value_ = std::sqrt(std::max(0.0, kappa_sq.value()));
  kappa_positive_ = kappa_value_ > kKappaTol;
  if (kappa_positive_) {
    kappa_param_ = sqrt(kappa_sq);
    kappa_s_ = collect_arclength_jet(*this, kappa_param_, std::min(3, kappa_param_.order()));

    // tau = det(phi', phi'', phi''') / |phi' x phi''|^2 in any parametrization.
    const JetVec3 d3 = derivative(d2);
    const JetVec3 cr = cross(truncated(d1, d2.order()), d2);
    const Jet det = dot(truncated(cr, d3.order()), d3);
    const Jet denom =
        unit_speed_ ? kappa_sq.truncated(det.order()) : dot(cr, cr).truncated(det.order());
    tau_param_ = det / denom;
    tau_s_ = collect_arclength_jet(*this, tau_param_, std::min(2, tau_param_.order()));
  }
}

Jet FramePoint::ds(const Jet& f) const {
  const Jet df = derivative(f);
  return unit_speed_ ? df : df / v_.truncated(df.order());
}

JetVec3 FramePoint::ds(const JetVec3& f) const { return {ds(f.x), ds(f.y), ds(f.z)}; }

const Jet& FramePoint::kappa_jet() const {
  if (!kappa_positive_) throw CurvatureVanishes(t_);
  return kappa_s_;
}

const Jet& FramePoint::tau_jet() const {
  if (!kappa_positive_) throw CurvatureVanishes(t_);
  return tau_s_;
}

const Jet& FramePoint::kappa_param_jet() const {
  if (!kappa_positive_) throw CurvatureVanishes(t_);
  return kappa_param_;
}

const Jet& FramePoint::tau_param_jet() const {
  if (!kappa_positive_) throw CurvatureVanishes(t_);
  return tau_param_;
}

Vec3 FramePoint::tangent_derivative(int k) const {
  JetVec3 f = T_;
  for (int i = 0; i < k; ++i) f = ds(f);
  return value(f, 0);
}

Jet curvature_jet(const JetVec3& jets, bool unit_speed) {
  assert(jets.order() >= 4);
  return FramePoint(jets, unit_speed).kappa_jet();
}

Jet torsion_jet(const JetVec3& jets, const Jet& kappa_jet) {
  if (!(kappa_jet.value() > kKappaTol)) throw CurvatureVanishes(jets.x.basepoint());
  const JetVec3 d1 = derivative(jets);
  const JetVec3 d2 = derivative(d1);
  const JetVec3 d3 = derivative(d2);
  const Jet det = dot(truncated(cross(truncated(d1, d2.order()), d2), d3.order()), d3);
  const Jet k = kappa_jet.truncated(std::min(det.order(), kappa_jet.order()));
  return det.truncated(k.order()) / (k * k);
}

FrenetData frenet_frame(const Curve& curve, double s) {
  FramePoint fp(curve, s);
  const Vec3 N = value(fp.normal_jets(), 0);
  const double scale_tol = kKappaTol * (1.0 + norm(N));
  if (!(fp.kappa() > scale_tol) || !fp.kappa_positive()) throw CurvatureVanishes(s);

  FrenetData out;
  out.s = s;
  out.t = value(fp.tangent_jets(), 0);
  out.n = N / fp.kappa();
  out.b = cross(out.t, out.n);
  out.kappa_jet = fp.kappa_jet();
  out.tau_jet = fp.tau_jet();
  out.kappa = out.kappa_jet.value();
  out.tau = out.tau_jet.value();
  return out;
}

ModifiedFrameData modified_frame(const Curve& curve, double s) {
  FramePoint fp(curve, s);
  ModifiedFrameData out;
  out.s = s;
  out.T = value(fp.tangent_jets(), 0);
  out.N = value(fp.normal_jets(), 0);
  out.B = value(fp.binormal_jets(), 0);
  out.kappa = fp.kappa();
  if (fp.kappa_positive()) {
    out.kappa_jet = fp.kappa_jet();
    out.tau_jet = fp.tau_jet();
    out.tau = out.tau_jet.value();
    out.kappa_ratio = out.kappa_jet.deriv(1) / out.kappa_jet.value();
  } else {
    out.kappa_jet = Jet::constant(out.kappa, 2, s);
    out.tau_jet = Jet::constant(kNaN, 1, s);
    out.tau = kNaN;
    out.kappa_ratio = kNaN;
  }
  return out;
}

std::array<double, 3> frame_ode_residual(const Curve& curve, double s) {
  FramePoint fp(curve, s);
  if (!fp.kappa_positive()) throw CurvatureVanishes(s);

  const Vec3 T = value(fp.tangent_jets(), 0);
  const Vec3 N = value(fp.normal_jets(), 0);
  const Vec3 B = value(fp.binormal_jets(), 0);
  const Vec3 Tp = value(fp.ds(fp.tangent_jets()), 0);
  const Vec3 Np = value(fp.ds(fp.normal_jets()), 0);
  const Vec3 Bp = value(fp.ds(fp.binormal_jets()), 0);

  const double kappa = fp.kappa_jet().value();
  const double ratio = fp.kappa_jet().deriv(1) / kappa;
  const double tau = fp.tau_jet().value();

  const Vec3 r1 = Tp - N;
  const Vec3 r2 = Np - (-(kappa * kappa) * T + ratio * N + tau * B);
  const Vec3 r3 = Bp - (-tau * N + ratio * B);
  return {norm(r1), norm(r2), norm(r3)};
}

std::array<double, 6> metric_residual(const ModifiedFrameData& frame) {
  const double k2 = frame.kappa * frame.kappa;
  return {std::abs(dot(frame.T, frame.T) - 1.0),
          std::abs(dot(frame.N, frame.N) - k2),
          std::abs(dot(frame.B, frame.B) - k2),
          std::abs(dot(frame.T, frame.N)),
          std::abs(dot(frame.T, frame.B)),
          std::abs(dot(frame.N, frame.B))};
}

}  // namespace moframe
