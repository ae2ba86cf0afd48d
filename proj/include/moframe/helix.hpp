#pragma once

#include <string>
#include <vector>

#include "moframe/curve.hpp"
#include "moframe/frame.hpp"

namespace moframe {

/// Grid statistics of a scalar function used to decide whether it is
/// constant. rel_variation = max|value - mean| / max(|mean|, 1e-12), except
/// that a function whose samples are all below 1e-12 in magnitude is
/// numerically the zero function and reports rel_variation = 0 (the floor
/// alone would turn pure rounding noise into spurious variation).
struct ConstancyReport {
  std::string label;
  std::vector<double> points;   // grid points that produced a value
  std::vector<double> values;
  std::vector<double> skipped;  // grid points dropped (curvature at tolerance)
  double mean = 0.0;
  double max_abs_dev = 0.0;
  double rel_variation = 0.0;
  double threshold = 0.0;
  bool verdict = false;
};

ConstancyReport make_constancy_report(std::string label, std::vector<double> points,
                                      std::vector<double> values, std::vector<double> skipped,
                                      double threshold);

/// tau/kappa over the grid (a curve is a general helix iff this is constant).
/// Points where curvature vanishes are skipped as long as at least 90% of the
/// grid survives; otherwise CurvatureVanishes propagates.
ConstancyReport lancret_ratio(const Curve& curve, const SampleGrid& grid,
                              double threshold = 1e-8);

struct DetTestResult {
  std::vector<double> points;
  std::vector<double> det;                // det(T', T'', T''') per point
  std::vector<double> identity_residual;  // |det - kappa^3 (kappa tau' - tau kappa')|
  double max_abs_det = 0.0;
  double max_identity_residual = 0.0;
  double tolerance = 0.0;  // 1e-7 scaled by max(1, max|3 kappa^3|)
  bool verdict = false;    // max_abs_det <= tolerance
};

/// det(T', T'', T''') = 0 characterizes general helices. The determinant also
/// equals kappa^5 (tau/kappa)' identically, helix or not (expand T', T'', T'''
/// over the frame and take the scalar triple product); the second residual
/// cross-checks the jet determinant against that closed form.
DetTestResult helix_det_test(const Curve& curve, const SampleGrid& grid);

struct OperatorResidual {
  double residual = 0.0;  // |T''' - (mu N + (3 kappa'/kappa) N')|
  double mu = 0.0;        // kappa''/kappa - kappa^2 - tau^2 - 3 (kappa'/kappa)^2
  Vec3 expansion;         // (-3 kappa kappa', kappa''/kappa - kappa^2 - tau^2,
                          //  2 (kappa'/kappa) tau + tau')
};

/// Third-derivative operator characterization of general helices.
OperatorResidual helix_operator_residual(const Curve& curve, double s);

/// tau' / (kappa^2 + tau^2)^(3/2), the slant-helix function for curves of
/// constant curvature. Throws NonConstantCurvature when kappa fails its own
/// constancy check at the given threshold.
ConstancyReport slant_function_constant_kappa(const Curve& curve, const SampleGrid& grid,
                                              double threshold = 1e-8);

/// kappa^2 (tau/kappa)' / (kappa^2 + tau^2)^(3/2), the general slant-helix
/// function; vanishes identically on general helices.
ConstancyReport slant_function_general(const Curve& curve, const SampleGrid& grid,
                                       double threshold = 1e-8);

struct SlantAxis {
  Vec3 U;
  double derivative_norm = 0.0;  // |U'| from jets
};

/// Candidate slant axis U = (m tau / w) T + (m / w) B + c N with
/// w = sqrt(kappa^2 + tau^2). For a slant helix with c = m times the constant
/// value of the slant function, U' vanishes.
SlantAxis slant_axis(const Curve& curve, double s, double m, double c);

}  // namespace moframe
