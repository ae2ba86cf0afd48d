#pragma once

#include <array>

#include "moframe/curve.hpp"
#include "moframe/vec.hpp"

namespace moframe {

/// Classical Frenet-Serret data at one point. Vectors are unit length;
/// kappa_jet and tau_jet hold arc-length derivatives (kappa, kappa', kappa'',
/// ... / tau, tau', ...) regardless of the curve's parametrization.
struct FrenetData {
  double s = 0.0;  // evaluation parameter
  Vec3 t, n, b;
  double kappa = 0.0;
  double tau = 0.0;
  Jet kappa_jet;
  Jet tau_jet;
};

/// Modified orthogonal frame: T = t, N = kappa n, B = kappa b at points of
/// nonzero curvature, and N = B = 0 where curvature vanishes. <T,T> = 1,
/// <N,N> = <B,B> = kappa^2, cross inner products zero. Where kappa is at or
/// below tolerance, tau, tau_jet, and kappa_ratio are NaN (torsion has a
/// removable singularity there and is not evaluated pointwise).
struct ModifiedFrameData {
  double s = 0.0;
  Vec3 T, N, B;
  double kappa = 0.0;
  double tau = 0.0;
  Jet kappa_jet;
  Jet tau_jet;
  double kappa_ratio = 0.0;  // kappa'/kappa
};

/// All jet-level data needed by the frame, helix, and Bertrand machinery at
/// one parameter point, valid for any parametrization. Arc-length derivatives
/// come from the chain rule with the speed jet, so declared-unit-speed curves
/// keep their closed-form values untouched.
class FramePoint {
 public:
  FramePoint(const Curve& curve, double t, int order = 6);
  FramePoint(const JetVec3& jets, bool unit_speed);

  double parameter() const { return t_; }
  bool unit_speed() const { return unit_speed_; }
  double speed_value() const { return v_.value(); }

  const JetVec3& jets() const { return jets_; }
  const JetVec3& tangent_jets() const { return T_; }    // T = phi' / |phi'|
  const JetVec3& normal_jets() const { return N_; }     // N = dT/ds
  const JetVec3& binormal_jets() const { return B_; }   // B = T x N

  /// Arc-length derivative of a jet taken in the curve parameter.
  Jet ds(const Jet& f) const;
  JetVec3 ds(const JetVec3& f) const;

  /// kappa value; zero is legal here.
  double kappa() const { return kappa_value_; }
  bool kappa_positive() const { return kappa_positive_; }

  /// Arc-length jets of kappa (>= 2 derivatives) and tau (>= 1 derivative).
  /// Require kappa above tolerance; throw CurvatureVanishes otherwise.
  const Jet& kappa_jet() const;
  const Jet& tau_jet() const;

  /// kappa and tau as jets in the curve parameter (for combining with the
  /// frame vector jets); same tolerance requirement.
  const Jet& kappa_param_jet() const;
  const Jet& tau_param_jet() const;

  /// k-th arc-length derivative vector of the tangent, k >= 0.
  Vec3 tangent_derivative(int k) const;

 private:
  double t_;
  bool unit_speed_;
  JetVec3 jets_;
  Jet v_;
  JetVec3 T_, N_, B_;
  double kappa_value_ = 0.0;
  bool kappa_positive_ = false;
  Jet kappa_s_, tau_s_;        // arc-length jets
  Jet kappa_param_, tau_param_;  // parameter jets
};

/// Curvature as an arc-length jet (kappa, kappa', kappa'', ...) from curve
/// jets of order >= 4. unit_speed selects |phi''| versus the general
/// |phi' x phi''| / |phi'|^3 formula. Throws CurvatureVanishes at
/// kappa <= 1e-12.
Jet curvature_jet(const JetVec3& jets, bool unit_speed);

/// Torsion jet det(phi', phi'', phi''') / kappa^2 for unit-speed jets.
Jet torsion_jet(const JetVec3& jets, const Jet& kappa_jet);

/// Throws CurvatureVanishes where the frame is undefined.
FrenetData frenet_frame(const Curve& curve, double s);

/// Never fails at kappa = 0; N and B degrade to zero vectors there.
ModifiedFrameData modified_frame(const Curve& curve, double s);

/// Residuals of the modified-frame equations
///   T' = N,  N' = -kappa^2 T + (kappa'/kappa) N + tau B,
///   B' = -tau N + (kappa'/kappa) B,
/// with every primed vector taken from jets. Requires kappa above tolerance.
std::array<double, 3> frame_ode_residual(const Curve& curve, double s);

/// |<T,T>-1|, |<N,N>-kappa^2|, |<B,B>-kappa^2|, |<T,N>|, |<T,B>|, |<N,B>|.
std::array<double, 6> metric_residual(const ModifiedFrameData& frame);

}  // namespace moframe
