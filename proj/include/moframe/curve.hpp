#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "moframe/expr.hpp"
#include "moframe/vec.hpp"

namespace moframe {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double t) const { return t > lo && t < hi; }  // open interval
  bool contains_closed(double t) const { return t >= lo && t <= hi; }
};

enum class Parametrization { declared_unit_speed, general };

/// Analytic definition of a space curve: three component formulas of one
/// parameter plus the interval they live on.
struct CurveSpec {
  Expression x, y, z;
  Interval domain;
  Parametrization parametrization = Parametrization::general;
};

/// Evaluatable space curve. Either backed by a CurveSpec (components are
/// differentiated by jet propagation) or by an arbitrary deterministic
/// evaluator (offset mates, reparametrizations, convex combinations).
class Curve {
 public:
  using Evaluator = std::function<JetVec3(double t, int order)>;

  explicit Curve(CurveSpec spec, std::string name = "");

  static Curve derived(Evaluator evaluator, Interval domain, bool unit_speed,
                       std::string provenance);

  /// Component jets at parameter t: position plus derivatives 1..order.
  /// Throws DomainError if evaluation fails or produces non-finite values.
  JetVec3 eval_jets(double t, int order) const;

  /// Euclidean norm of the first-derivative vector.
  double speed(double t) const;

  const Interval& domain() const { return domain_; }
  bool declared_unit_speed() const { return unit_speed_; }
  const std::string& provenance() const { return provenance_; }

 private:
  Curve() = default;

  Evaluator evaluator_;
  Interval domain_;
  bool unit_speed_ = false;
  std::string provenance_;
};

/// Strictly increasing parameter values inside a curve's open domain.
class SampleGrid {
 public:
  /// n evenly spaced points with the endpoints inset by 1e-6 * (hi - lo),
  /// keeping boundary singularities out of the sample. Requires n >= 3.
  static SampleGrid uniform(const Interval& domain, int n);

  /// Validates n >= 3, strict monotonicity, and containment in the open domain.
  SampleGrid(std::vector<double> points, const Interval& domain);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<double> points_;
};

/// Integral of speed over [a, b] by adaptive Simpson refinement; absolute
/// error at most tol. Throws QuadratureFailure once the evaluation budget
/// (1e6 speed evaluations) is exhausted.
double arc_length(const Curve& curve, double a, double b, double tol);

/// Parameter t with |arc_length(t_lo, t) - s_target| <= tol. Newton iteration
/// inside a bisection bracket, bisection fallback. Throws RootFindFailure.
double param_of_arclength(const Curve& curve, double s_target, double tol);

/// Jets of the curve as a function of its own arc length, measured from the
/// left end of the domain. Identical to eval_jets for declared-unit-speed
/// curves; otherwise composes the parameter jets with the inverted
/// arc-length jet.
JetVec3 unitspeed_jets(const Curve& curve, double s, int order);

/// The same curve reparametrized by arc length, domain [0, L].
Curve unit_speed_view(const Curve& curve);

struct UnitSpeedCheck {
  bool ok = false;
  double max_deviation = 0.0;
};

/// max |speed - 1| over the grid, compared against tol.
UnitSpeedCheck check_unit_speed(const Curve& curve, const SampleGrid& grid, double tol);

/// Rigid translate; preserves parametrization and domain.
Curve translate(const Curve& curve, const Vec3& offset);

}  // namespace moframe
