#include "moframe/bertrand.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

#include "moframe/errors.hpp"
#include "moframe/frame.hpp"
#include "moframe/parallel.hpp"

namespace moframe {

namespace {

constexpr double kKappaTol = 1e-12;

std::string correspondence_name(Correspondence c) {
  return c == Correspondence::shared_parameter ? "shared-parameter" : "closest-point";
}

struct PointFrame {
  Vec3 pos, t, n, b;
  double kappa = 0.0, tau = 0.0;
};

PointFrame point_frame(const Curve& curve, double s) {
  FramePoint fp(curve, s);
  if (!fp.kappa_positive()) throw CurvatureVanishes(s);
  PointFrame f;
  f.pos = value(fp.jets(), 0);
  f.t = value(fp.tangent_jets(), 0);
  f.kappa = fp.kappa_jet().value();
  f.tau = fp.tau_jet().value();
  f.n = value(fp.normal_jets(), 0) / f.kappa;
  f.b = cross(f.t, f.n);
  return f;
}

}  // namespace

Curve bertrand_mate(const Curve& curve, double c) {
  if (!curve.declared_unit_speed())
    throw Error("bertrand_mate requires a unit-speed curve; reparametrize first");
  Curve parent = curve;
  return Curve::derived(
      [parent, c](double s, int order) {
        const JetVec3 jets = parent.eval_jets(s, order + 2);
        const JetVec3 d2 = derivative(derivative(jets));
        const Jet kappa = sqrt(dot(d2, d2));
        if (!(kappa.value() > kKappaTol)) throw CurvatureVanishes(s);
        return truncated(jets, order) + (c / kappa) * d2;
      },
      curve.domain(), false,
      "Bertrand mate of " + curve.provenance() + " with c=" + std::to_string(c));
}

double closest_param(const Curve& curve, const Vec3& p, double seed) {
  const Interval dom = curve.domain();
  double u = std::clamp(seed, dom.lo, dom.hi);
  for (int iter = 0; iter < 50; ++iter) {
    const JetVec3 jets = curve.eval_jets(u, 2);
    const Vec3 pos = value(jets, 0);
    const Vec3 d1 = value(jets, 1);
    const Vec3 d2 = value(jets, 2);
    const Vec3 offset = pos - p;
    const double g = dot(offset, d1);
    const double gp = dot(d1, d1) + dot(offset, d2);
    if (std::abs(gp) < 1e-14) throw CorrespondenceFailure("flat objective in closest-point search");
    const double step = g / gp;
    u = std::clamp(u - step, dom.lo, dom.hi);
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(u))) return u;
  }
  throw CorrespondenceFailure("closest-point Newton did not converge");
}

namespace {

double corresponding_param(const Curve& a, const Curve& b, double s, Correspondence mode,
                           double previous) {
  if (mode == Correspondence::shared_parameter) {
    if (!b.domain().contains_closed(s))
      throw CorrespondenceFailure("shared parameter leaves the second curve's domain");
    return s;
  }
  const Vec3 p = value(a.eval_jets(s, 0), 0);
  return closest_param(b, p, previous);
}

// Jet of the closest-point correspondence u(s) defined implicitly by
// F(s, u) = <B(u) - A(s), B'(u)> = 0, solved order by order.
Jet correspondence_jet(const Curve& b, const JetVec3& a_jets, double u0) {
  const int order = a_jets.order();
  const JetVec3 bj = b.eval_jets(u0, order + 2);
  const JetVec3 bp = derivative(bj);

  const Vec3 offset0 = value(bj, 0) - value(a_jets, 0);
  const double fu = dot(value(bp, 0), value(bp, 0)) + dot(offset0, value(bp, 1));
  if (std::abs(fu) < 1e-14)
    throw CorrespondenceFailure("degenerate correspondence derivative");

  std::vector<double> d(static_cast<std::size_t>(order) + 1, 0.0);
  d[0] = u0;
  Jet u(a_jets.x.basepoint(), std::move(d));
  for (int n = 1; n <= order; ++n) {
    const JetVec3 bu{compose(bj.x.truncated(order), u), compose(bj.y.truncated(order), u),
                     compose(bj.z.truncated(order), u)};
    const JetVec3 bpu{compose(bp.x.truncated(order), u), compose(bp.y.truncated(order), u),
                      compose(bp.z.truncated(order), u)};
    const Jet F = dot(bu - a_jets, bpu);
    u.deriv(n) -= F.deriv(n) / fu;
  }
  return u;
}

}  // namespace

BertrandPairReport verify_bertrand_pair(const Curve& phi, const Curve& psi,
                                        const SampleGrid& grid, Correspondence correspondence,
                                        double threshold) {
  const std::size_t n = grid.size();
  std::vector<PointFrame> fa(n), fb(n);
  {
    // Closest-point seeds chain from the previous grid point, so that part
    // stays sequential; the shared-parameter path is parallel.
    if (correspondence == Correspondence::shared_parameter) {
      parallel_for(n, [&](std::size_t i) {
        fa[i] = point_frame(phi, grid[i]);
        fb[i] = point_frame(psi, corresponding_param(phi, psi, grid[i], correspondence, 0.0));
      });
    } else {
      double prev = grid[0];
      for (std::size_t i = 0; i < n; ++i) {
        fa[i] = point_frame(phi, grid[i]);
        prev = corresponding_param(phi, psi, grid[i], correspondence, prev);
        fb[i] = point_frame(psi, prev);
      }
    }
  }

  BertrandPairReport r;
  r.correspondence = correspondence_name(correspondence);
  r.threshold = threshold;

  double c_sum = 0.0, dot_sum = 0.0, sin_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c_sum += dot(fb[i].pos - fa[i].pos, fa[i].n);
    dot_sum += dot(fa[i].t, fb[i].t);
    sin_sum += dot(fb[i].t, fa[i].b);
  }
  const double count = static_cast<double>(n);
  r.c_offset = c_sum / count;
  const double mean_dot = dot_sum / count;
  const double mean_sin = sin_sum / count;
  r.theta_signed = std::atan2(mean_sin, mean_dot);
  r.theta = std::abs(r.theta_signed);
  r.trivial = std::abs(r.c_offset) <= 1e-12;

  std::vector<double> kphi(n), kpsi(n), tphi(n), tpsi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 offset = fb[i].pos - fa[i].pos;
    r.residual_normal_parallelism =
        std::max(r.residual_normal_parallelism, norm(cross(fa[i].n, fb[i].n)));
    r.residual_distance =
        std::max(r.residual_distance, std::abs(norm(offset) - std::abs(r.c_offset)));
    r.residual_angle = std::max(r.residual_angle, std::abs(dot(fa[i].t, fb[i].t) - mean_dot));
    r.c_deviation = std::max(r.c_deviation, std::abs(dot(offset, fa[i].n) - r.c_offset));
    if (!r.trivial)
      r.residual_offset_parallel =
          std::max(r.residual_offset_parallel, norm(cross(offset, fa[i].n)) / norm(offset));
    kphi[i] = fa[i].kappa;
    kpsi[i] = fb[i].kappa;
    tphi[i] = fa[i].tau;
    tpsi[i] = fb[i].tau;
  }

  // c kappa + (cot theta) c tau = 1 presumes tau != 0 (theta away from 0 and
  // pi); planar pairs and coincident curves are exempt.
  r.linear_relation_applicable = !r.trivial && std::abs(std::sin(r.theta_signed)) > 1e-6;
  if (r.linear_relation_applicable) {
    const double a = std::cos(r.theta_signed) / std::sin(r.theta_signed);
    for (std::size_t i = 0; i < n; ++i)
      r.residual_linear_relation = std::max(
          r.residual_linear_relation,
          std::abs(r.c_offset * kphi[i] + a * r.c_offset * tphi[i] - 1.0));
  }

  if (!r.trivial) {
    r.identity_residuals = mate_identities(kphi, kpsi, tphi, tpsi, r.c_offset, r.theta);
    double min_prod = tphi[0] * tpsi[0];
    for (std::size_t i = 1; i < n; ++i) min_prod = std::min(min_prod, tphi[i] * tpsi[i]);
    r.tau_product_positive = min_prod > 0.0;
  } else {
    r.tau_product_positive = true;
  }

  r.verdict = r.residual_normal_parallelism <= threshold &&
              r.residual_offset_parallel <= threshold && r.residual_distance <= threshold &&
              r.residual_angle <= threshold && r.residual_linear_relation <= threshold &&
              r.identity_residuals[0] <= threshold && r.identity_residuals[1] <= threshold;
  return r;
}

std::array<double, 2> mate_identities(std::span<const double> kappa_phi,
                                      std::span<const double> kappa_psi,
                                      std::span<const double> tau_phi,
                                      std::span<const double> tau_psi, double c, double theta) {
  assert(c != 0.0);
  assert(kappa_phi.size() == kappa_psi.size() && tau_phi.size() == tau_psi.size() &&
         kappa_phi.size() == tau_phi.size());
  const double sin_sq = std::sin(theta) * std::sin(theta);
  std::array<double, 2> residuals{0.0, 0.0};
  for (std::size_t i = 0; i < kappa_phi.size(); ++i) {
    const double predicted = (c * kappa_psi[i] + sin_sq) / (c * (1.0 + c * kappa_psi[i]));
    residuals[0] = std::max(residuals[0], std::abs(kappa_phi[i] - predicted));
    residuals[1] = std::max(residuals[1], std::abs(tau_phi[i] * tau_psi[i] - sin_sq / (c * c)));
  }
  return residuals;
}

LinearRelationFit linear_relation_fit(const Curve& curve, const SampleGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> kappa(n), tau(n);
  parallel_for(n, [&](std::size_t i) {
    FramePoint fp(curve, grid[i]);
    kappa[i] = fp.kappa_jet().value();
    tau[i] = fp.tau_jet().value();
  });

  auto constant = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double dev = 0.0;
    for (double x : v) dev = std::max(dev, std::abs(x - mean));
    return std::pair<bool, double>{dev <= 1e-8 * std::max(std::abs(mean), 1e-12), mean};
  };

  LinearRelationFit fit;
  const auto [kappa_const, kappa_mean] = constant(kappa);
  const auto [tau_const, tau_mean] = constant(tau);
  if (kappa_const && tau_const) {
    // One-parameter solution family; return the minimal-norm representative.
    fit.degenerate = true;
    const double denom = kappa_mean * kappa_mean + tau_mean * tau_mean;
    fit.c = kappa_mean / denom;
    fit.ac = tau_mean / denom;
  } else {
    double skk = 0.0, skt = 0.0, stt = 0.0, sk = 0.0, st = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      skk += kappa[i] * kappa[i];
      skt += kappa[i] * tau[i];
      stt += tau[i] * tau[i];
      sk += kappa[i];
      st += tau[i];
    }
    const double det = skk * stt - skt * skt;
    if (det > 1e-12 * skk * stt) {
      fit.c = (stt * sk - skt * st) / det;
      fit.ac = (skk * st - skt * sk) / det;
    } else {
      // kappa and tau linearly dependent but not constant (tau ~ lambda kappa):
      // fit the single combined coefficient, then split it with minimal norm.
      const double lambda = skt / skk;
      const double z = sk / skk;
      fit.c = z / (1.0 + lambda * lambda);
      fit.ac = z * lambda / (1.0 + lambda * lambda);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    fit.residual = std::max(fit.residual, std::abs(fit.c * kappa[i] + fit.ac * tau[i] - 1.0));
  return fit;
}

Curve combine_curves(const Curve& a, const Curve& b, double h, Correspondence correspondence) {
  if (!(h >= 0.0 && h <= 1.0)) throw Error("combination ratio h must lie in [0, 1]");
  Curve ca = a, cb = b;
  if (correspondence == Correspondence::shared_parameter) {
    const Interval dom{std::max(a.domain().lo, b.domain().lo),
                       std::min(a.domain().hi, b.domain().hi)};
    if (!(dom.lo < dom.hi)) throw CorrespondenceFailure("curve domains do not overlap");
    return Curve::derived(
        [ca, cb, h](double s, int order) {
          return h * ca.eval_jets(s, order) + (1.0 - h) * cb.eval_jets(s, order);
        },
        dom, false,
        "combination h=" + std::to_string(h) + " of " + a.provenance() + " and " +
            b.provenance());
  }
  return Curve::derived(
      [ca, cb, h](double s, int order) {
        const JetVec3 aj = ca.eval_jets(s, order);
        const double u0 = closest_param(cb, value(aj, 0), s);
        const Jet u = correspondence_jet(cb, aj, u0);
        const JetVec3 bj = cb.eval_jets(u0, order + 2);
        const JetVec3 bu{compose(bj.x.truncated(order), u), compose(bj.y.truncated(order), u),
                         compose(bj.z.truncated(order), u)};
        return h * aj + (1.0 - h) * bu;
      },
      a.domain(), false,
      "combination h=" + std::to_string(h) + " of " + a.provenance() + " and " +
          b.provenance() + " (closest-point)");
}

double correspondence_parallelism(const Curve& a, const Curve& b, const SampleGrid& grid,
                                  ParallelismMode mode, Correspondence correspondence) {
  double worst = 0.0;
  double prev = grid[0];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    const PointFrame fa = point_frame(a, s);
    prev = corresponding_param(a, b, s, correspondence, prev);
    const PointFrame fb = point_frame(b, prev);
    double sine = 0.0;
    switch (mode) {
      case ParallelismMode::tangent_tangent:
        sine = line_sine(fa.t, fb.t);
        break;
      case ParallelismMode::binormal_binormal:
        sine = line_sine(fa.b, fb.b);
        break;
      case ParallelismMode::tangent_binormal:
        sine = line_sine(fa.t, fb.b);
        break;
    }
    worst = std::max(worst, sine);
  }
  return worst;
}

}  // namespace moframe
