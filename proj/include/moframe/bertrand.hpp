#pragma once

#include <array>
#include <span>
#include <string>

#include "moframe/curve.hpp"

namespace moframe {

enum class Correspondence { shared_parameter, closest_point };

enum class ParallelismMode { tangent_tangent, binormal_binormal, tangent_binormal };

/// Normal offset psi(s) = phi(s) + (c/kappa(s)) N(s) = phi(s) + c n(s),
/// parametrized by the parent's arc length. Requires a unit-speed parent with
/// curvature above tolerance on the domain (checked pointwise at evaluation).
Curve bertrand_mate(const Curve& curve, double c);

/// Evidence that two curves form a Bertrand pair. Residuals:
///  - normal_parallelism: sine of the angle between the unit principal
///    normals at corresponding points;
///  - offset_parallel: sine of the angle between psi - phi and n_phi (the
///    classical offset condition; the parallel-normal definition alone would
///    admit arbitrary translates);
///  - distance: | |psi - phi| - |c| | with c the mean signed offset;
///  - angle: |<t_phi, t_psi> - cos theta| with theta from the grid mean;
///  - linear_relation: |c kappa_phi + (cot theta) c tau_phi - 1|, evaluated
///    only when tan theta is usable (tau_phi != 0); the relation presumes it.
struct BertrandPairReport {
  std::string correspondence;
  double c_offset = 0.0;       // signed; |c_offset| is the pair distance
  double c_deviation = 0.0;    // constancy of the signed offset over the grid
  double theta = 0.0;          // in [0, pi]
  double theta_signed = 0.0;   // sign resolved against the binormal
  double residual_normal_parallelism = 0.0;
  double residual_offset_parallel = 0.0;
  double residual_distance = 0.0;
  double residual_angle = 0.0;
  double residual_linear_relation = 0.0;
  bool linear_relation_applicable = false;
  std::array<double, 2> identity_residuals{0.0, 0.0};
  bool tau_product_positive = false;
  bool trivial = false;  // the two curves coincide (c = 0)
  double threshold = 0.0;
  bool verdict = false;
};

BertrandPairReport verify_bertrand_pair(const Curve& phi, const Curve& psi,
                                        const SampleGrid& grid, Correspondence correspondence,
                                        double threshold = 1e-8);

/// Mate identities
///   kappa_phi = (c kappa_psi + sin^2 theta) / (c (1 + c kappa_psi)),
///   tau_phi tau_psi = (sin theta / c)^2 > 0,
/// checked over sampled values. Returns the two max residuals. Requires c != 0.
std::array<double, 2> mate_identities(std::span<const double> kappa_phi,
                                      std::span<const double> kappa_psi,
                                      std::span<const double> tau_phi,
                                      std::span<const double> tau_psi, double c, double theta);

struct LinearRelationFit {
  double c = 0.0;
  double ac = 0.0;
  double residual = 0.0;  // max |c kappa + ac tau - 1| over the grid
  bool degenerate = false;  // kappa and tau both constant: minimal-norm answer
};

/// Least-squares fit of x kappa(s) + y tau(s) = 1 over the grid.
LinearRelationFit linear_relation_fit(const Curve& curve, const SampleGrid& grid);

/// Convex combination C(s) = h A(s) + (1-h) B(s*(s)) of corresponding points.
/// Requires h in [0, 1]. The result is generally not unit speed.
Curve combine_curves(const Curve& a, const Curve& b, double h, Correspondence correspondence);

/// Max over the grid of the sine of the angle between the selected unit
/// directions at corresponding points.
double correspondence_parallelism(const Curve& a, const Curve& b, const SampleGrid& grid,
                                  ParallelismMode mode,
                                  Correspondence correspondence = Correspondence::shared_parameter);

/// Parameter of the point on `curve` closest to p, found by Newton iteration
/// on <curve(u) - p, curve'(u)> = 0 from the given seed.
double closest_param(const Curve& curve, const Vec3& p, double seed);

}  // namespace moframe
