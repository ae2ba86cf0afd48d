#include "moframe/curve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

#include "moframe/errors.hpp"

namespace moframe {

Curve::Curve(CurveSpec spec, std::string name) {
  domain_ = spec.domain;
  unit_speed_ = spec.parametrization == Parametrization::declared_unit_speed;
  provenance_ = name.empty() ? "expression curve" : std::move(name);
  evaluator_ = [spec = std::move(spec)](double t, int order) {
    const Jet p = Jet::parameter(t, order);
    return JetVec3{spec.x.apply(p), spec.y.apply(p), spec.z.apply(p)};
  };
}

Curve Curve::derived(Evaluator evaluator, Interval domain, bool unit_speed,
                     std::string provenance) {
  Curve c;
  c.evaluator_ = std::move(evaluator);
  c.domain_ = domain;
  c.unit_speed_ = unit_speed;
  c.provenance_ = std::move(provenance);
  return c;
}

JetVec3 Curve::eval_jets(double t, int order) const {
  if (!domain_.contains(t)) {
    // Allow the closed endpoints themselves; only reject outside.
    if (!domain_.contains_closed(t)) throw DomainError("curve parameter", t);
  }
  JetVec3 jets = evaluator_(t, order);
  if (!finite(jets)) throw DomainError("curve evaluation", t);
  return jets;
}

double Curve::speed(double t) const {
  const JetVec3 jets = eval_jets(t, 1);
  return norm(value(derivative(jets), 0));
}

SampleGrid SampleGrid::uniform(const Interval& domain, int n) {
  assert(n >= 3);
  const double inset = 1e-6 * domain.length();
  const double lo = domain.lo + inset;
  const double hi = domain.hi - inset;
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return SampleGrid(std::move(pts), domain);
}

SampleGrid::SampleGrid(std::vector<double> points, const Interval& domain)
    : points_(std::move(points)) {
  assert(points_.size() >= 3);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    assert(domain.contains(points_[i]) && "grid point outside open domain");
    if (i) assert(points_[i] > points_[i - 1] && "grid must be strictly increasing");
  }
  (void)domain;
}

namespace {

struct QuadratureBudget {
  long evals = 0;
  static constexpr long kLimit = 1'000'000;

  void charge(long n) {
    evals += n;
    if (evals > kLimit) throw QuadratureFailure("adaptive Simpson budget exhausted");
  }
};

double simpson(double h, double fa, double fm, double fb) {
  return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double b,
                        double fb, double m, double fm, double whole, double tol, int depth,
                        QuadratureBudget& budget) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  budget.charge(2);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(m - a, fa, flm, fm);
  const double right = simpson(b - m, fm, frm, fb);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol || depth >= 60) return left + right + err;
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, budget) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, budget);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 QuadratureBudget& budget) {
  if (a == b) return 0.0;
  budget.charge(3);
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson(b - a, fa, fm, fb);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 0, budget);
}

}  // namespace

double arc_length(const Curve& curve, double a, double b, double tol) {
  assert(tol > 0.0);
  if (!curve.domain().contains_closed(a) || !curve.domain().contains_closed(b))
    throw DomainError("arc_length bounds", a);
  const double sign = b >= a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);
  QuadratureBudget budget;
  auto f = [&curve](double t) { return curve.speed(t); };
  return sign * integrate(f, a, b, tol, budget);
}

double param_of_arclength(const Curve& curve, double s_target, double tol) {
  assert(tol > 0.0);
  const Interval dom = curve.domain();
  const double quad_tol = std::min(tol, 1e-12) * 0.25;
  const double total = arc_length(curve, dom.lo, dom.hi, quad_tol);
  if (s_target < -tol || s_target > total + tol)
    throw RootFindFailure("arc length target outside [0, L]");
  const double s = std::clamp(s_target, 0.0, total);

  double lo = dom.lo, hi = dom.hi;
  double t = dom.lo + (s / total) * dom.length();
  // F(t) = L(lo0, t) - s, tracked incrementally from the last evaluation.
  double t_known = dom.lo;
  double len_known = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double F = len_known + arc_length(curve, t_known, t, quad_tol) - s;
    t_known = t;
    len_known = F + s;
    if (std::abs(F) <= tol) return t;
    if (F > 0.0)
      hi = std::min(hi, t);
    else
      lo = std::max(lo, t);
    const double v = curve.speed(t);
    double next = v > 0.0 ? t - F / v : t;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    t = next;
  }
  throw RootFindFailure("arc length inversion did not converge");
}

JetVec3 unitspeed_jets(const Curve& curve, double s, int order) {
  if (curve.declared_unit_speed()) return curve.eval_jets(s, order);

  assert(order >= 1);
  const double t = param_of_arclength(curve, s, 1e-12);
  const JetVec3 jets = curve.eval_jets(t, order + 1);
  const Jet v = norm(derivative(jets));  // order `order`
  // Jet of the arc-length function s(t): value s, derivatives from the speed.
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  d[0] = s;
  for (int k = 1; k <= order; ++k) d[static_cast<std::size_t>(k)] = v.deriv(k - 1);
  const Jet inverse = invert(Jet(t, std::move(d)));
  return {compose(jets.x.truncated(order), inverse), compose(jets.y.truncated(order), inverse),
          compose(jets.z.truncated(order), inverse)};
}

Curve unit_speed_view(const Curve& curve) {
  if (curve.declared_unit_speed()) return curve;
  const double total = arc_length(curve, curve.domain().lo, curve.domain().hi, 1e-12);
  Curve parent = curve;
  return Curve::derived(
      [parent](double s, int order) { return unitspeed_jets(parent, s, order); },
      Interval{0.0, total}, true,
      "arc-length reparametrization of " + curve.provenance());
}

UnitSpeedCheck check_unit_speed(const Curve& curve, const SampleGrid& grid, double tol) {
  double max_dev = 0.0;
  for (double t : grid.points()) max_dev = std::max(max_dev, std::abs(curve.speed(t) - 1.0));
  return {max_dev <= tol, max_dev};
}

Curve translate(const Curve& curve, const Vec3& offset) {
  Curve parent = curve;
  return Curve::derived(
      [parent, offset](double t, int order) {
        JetVec3 jets = parent.eval_jets(t, order);
        jets.x.deriv(0) += offset.x;
        jets.y.deriv(0) += offset.y;
        jets.z.deriv(0) += offset.z;
        return jets;
      },
      curve.domain(), curve.declared_unit_speed(),
      "translate of " + curve.provenance());
}

}  // namespace moframe
