#include "moframe/helix.hpp"

#include <cassert>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include "moframe/errors.hpp"
#include "moframe/parallel.hpp"

namespace moframe {

namespace {

constexpr double kZeroBand = 1e-12;

// Evaluate fn at each grid point, skipping CurvatureVanishes points as long
// as at least 90% of the grid survives.
struct GridSample {
  std::vector<double> points, values, skipped;
};

GridSample sample_with_skips(const SampleGrid& grid,
                             const std::function<double(const FramePoint&)>& fn,
                             const Curve& curve) {
  const std::size_t n = grid.size();
  std::vector<std::optional<double>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  parallel_for(n, [&](std::size_t i) {
    try {
      FramePoint fp(curve, grid[i]);
      if (!fp.kappa_positive()) throw CurvatureVanishes(grid[i]);
      slots[i] = fn(fp);
    } catch (const CurvatureVanishes&) {
      slots[i] = std::nullopt;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  GridSample out;
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i]) {
      out.points.push_back(grid[i]);
      out.values.push_back(*slots[i]);
    } else {
      out.skipped.push_back(grid[i]);
    }
  }
  if (out.values.size() < (9 * n + 9) / 10)
    throw CurvatureVanishes(out.skipped.empty() ? grid[0] : out.skipped.front());
  return out;
}

}  // namespace

ConstancyReport make_constancy_report(std::string label, std::vector<double> points,
                                      std::vector<double> values, std::vector<double> skipped,
                                      double threshold) {
  ConstancyReport r;
  r.label = std::move(label);
  r.points = std::move(points);
  r.values = std::move(values);
  r.skipped = std::move(skipped);
  r.threshold = threshold;
  assert(!r.values.empty());

  double sum = 0.0;
  double max_abs = 0.0;
  for (double v : r.values) {
    sum += v;
    max_abs = std::max(max_abs, std::abs(v));
  }
  r.mean = sum / static_cast<double>(r.values.size());
  for (double v : r.values) r.max_abs_dev = std::max(r.max_abs_dev, std::abs(v - r.mean));
  r.rel_variation =
      max_abs <= kZeroBand ? 0.0 : r.max_abs_dev / std::max(std::abs(r.mean), kZeroBand);
  r.verdict = r.rel_variation <= r.threshold;
  return r;
}

ConstancyReport lancret_ratio(const Curve& curve, const SampleGrid& grid, double threshold) {
  GridSample s = sample_with_skips(
      grid, [](const FramePoint& fp) { return fp.tau_jet().value() / fp.kappa_jet().value(); },
      curve);
  return make_constancy_report("tau/kappa", std::move(s.points), std::move(s.values),
                               std::move(s.skipped), threshold);
}

DetTestResult helix_det_test(const Curve& curve, const SampleGrid& grid) {
  const std::size_t n = grid.size();
  DetTestResult r;
  r.points.assign(grid.points().begin(), grid.points().end());
  r.det.resize(n);
  std::vector<double> identity(n, 0.0);
  std::vector<double> kappa_cubed(n, 0.0);
  std::vector<char> has_kappa(n, 0);
  std::vector<std::exception_ptr> errors(n);

  parallel_for(n, [&](std::size_t i) {
    try {
      FramePoint fp(curve, grid[i]);
      const Vec3 t1 = fp.tangent_derivative(1);
      const Vec3 t2 = fp.tangent_derivative(2);
      const Vec3 t3 = fp.tangent_derivative(3);
      r.det[i] = det3(t1, t2, t3);
      if (fp.kappa_positive()) {
        const Jet& k = fp.kappa_jet();
        const Jet& tau = fp.tau_jet();
        // det(T', T'', T''') = kappa^3 (kappa tau' - tau kappa') = kappa^5 (tau/kappa)',
        // an identity of the frame equations whether or not the curve is a helix.
        const double k3 = k.value() * k.value() * k.value();
        const double closed = k3 * (k.value() * tau.deriv(1) - tau.value() * k.deriv(1));
        identity[i] = std::abs(r.det[i] - closed);
        kappa_cubed[i] = std::abs(3.0 * k.value() * k.value() * k.value());
        has_kappa[i] = 1;
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  double max_scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    r.max_abs_det = std::max(r.max_abs_det, std::abs(r.det[i]));
    if (has_kappa[i]) {
      r.identity_residual.push_back(identity[i]);
      r.max_identity_residual = std::max(r.max_identity_residual, identity[i]);
      max_scale = std::max(max_scale, kappa_cubed[i]);
    }
  }
  r.tolerance = 1e-7 * max_scale;
  r.verdict = r.max_abs_det <= r.tolerance;
  return r;
}

OperatorResidual helix_operator_residual(const Curve& curve, double s) {
  FramePoint fp(curve, s);
  if (!fp.kappa_positive()) throw CurvatureVanishes(s);

  const Jet& kj = fp.kappa_jet();
  const Jet& tj = fp.tau_jet();
  const double kappa = kj.value();
  const double kp = kj.deriv(1);
  const double kpp = kj.deriv(2);
  const double tau = tj.value();
  const double taup = tj.deriv(1);
  const double ratio = kp / kappa;

  OperatorResidual out;
  out.mu = kpp / kappa - kappa * kappa - tau * tau - 3.0 * ratio * ratio;
  out.expansion = {-3.0 * kappa * kp, kpp / kappa - kappa * kappa - tau * tau,
                   2.0 * ratio * tau + taup};

  const Vec3 lhs = fp.tangent_derivative(3);
  const Vec3 N = value(fp.normal_jets(), 0);
  const Vec3 Np = value(fp.ds(fp.normal_jets()), 0);
  const Vec3 rhs = out.mu * N + (3.0 * ratio) * Np;
  out.residual = norm(lhs - rhs);
  return out;
}

ConstancyReport slant_function_constant_kappa(const Curve& curve, const SampleGrid& grid,
                                              double threshold) {
  GridSample kappas = sample_with_skips(
      grid, [](const FramePoint& fp) { return fp.kappa_jet().value(); }, curve);
  ConstancyReport kappa_report =
      make_constancy_report("kappa", kappas.points, kappas.values, kappas.skipped, threshold);
  if (!kappa_report.verdict || !(kappa_report.mean > 0.0))
    throw NonConstantCurvature("slant criterion requires constant nonzero curvature (rel "
                               "variation " +
                               std::to_string(kappa_report.rel_variation) + ")");

  GridSample s = sample_with_skips(
      grid,
      [](const FramePoint& fp) {
        const double kappa = fp.kappa_jet().value();
        const double tau = fp.tau_jet().value();
        const double taup = fp.tau_jet().deriv(1);
        return taup / std::pow(kappa * kappa + tau * tau, 1.5);
      },
      curve);
  return make_constancy_report("tau'/(kappa^2+tau^2)^(3/2)", std::move(s.points),
                               std::move(s.values), std::move(s.skipped), threshold);
}

ConstancyReport slant_function_general(const Curve& curve, const SampleGrid& grid,
                                       double threshold) {
  GridSample s = sample_with_skips(
      grid,
      [](const FramePoint& fp) {
        const double kappa = fp.kappa_jet().value();
        const double kp = fp.kappa_jet().deriv(1);
        const double tau = fp.tau_jet().value();
        const double taup = fp.tau_jet().deriv(1);
        // kappa^2 (tau/kappa)' = kappa tau' - tau kappa'.
        return (kappa * taup - tau * kp) / std::pow(kappa * kappa + tau * tau, 1.5);
      },
      curve);
  return make_constancy_report("kappa^2/(kappa^2+tau^2)^(3/2) (tau/kappa)'", std::move(s.points),
                               std::move(s.values), std::move(s.skipped), threshold);
}

SlantAxis slant_axis(const Curve& curve, double s, double m, double c) {
  FramePoint fp(curve, s);
  if (!fp.kappa_positive()) throw CurvatureVanishes(s);

  // Everything as jets in the curve parameter so scalars and frame vectors
  // combine consistently; the single arc-length derivative comes last.
  const Jet& kp = fp.kappa_param_jet();
  const Jet& tp = fp.tau_param_jet();
  const int ord = std::min(tp.order(), 3);
  const Jet k = kp.truncated(ord);
  const Jet t = tp.truncated(ord);
  const Jet w = sqrt(k * k + t * t);
  const Jet a = m * t / w;
  const Jet b = Jet::constant(m, ord, k.basepoint()) / w;

  const JetVec3 T = truncated(fp.tangent_jets(), ord);
  const JetVec3 N = truncated(fp.normal_jets(), std::min(ord, fp.normal_jets().order()));
  const JetVec3 B = truncated(fp.binormal_jets(), std::min(ord, fp.binormal_jets().order()));
  const JetVec3 U = a * T + Jet::constant(c, ord, k.basepoint()) * N + b * B;

  SlantAxis out;
  out.U = value(U, 0);
  out.derivative_norm = norm(value(fp.ds(U), 0));
  return out;
}

}  // namespace moframe
