#pragma once

#include <vector>

namespace moframe {

/// Truncated Taylor jet: the value and derivatives 1..K of a scalar function
/// at a basepoint. Derivatives are stored raw, not divided by factorials, so
/// deriv(k) is literally the k-th derivative of the represented function.
///
/// Arithmetic propagates derivatives exactly (Leibniz and quotient recurrences
/// for products and divisions, coupled recurrences for sin/cos, ODE-derived
/// recurrences for sqrt and power), so the only error is rounding.
class Jet {
 public:
  Jet() = default;
  Jet(double basepoint, std::vector<double> derivs);

  /// Jet of the constant function: d0 = value, all derivatives zero.
  static Jet constant(double value, int order, double basepoint = 0.0);

  /// Jet of the identity function at s0: d0 = s0, d1 = 1, d2..dK = 0.
  /// Requires order >= 1.
  static Jet parameter(double s0, int order);

  int order() const { return static_cast<int>(derivs_.size()) - 1; }
  double basepoint() const { return basepoint_; }
  double value() const { return derivs_[0]; }
  double deriv(int k) const { return derivs_[static_cast<std::size_t>(k)]; }
  double& deriv(int k) { return derivs_[static_cast<std::size_t>(k)]; }
  const std::vector<double>& derivs() const { return derivs_; }

  bool finite() const;
  Jet truncated(int order) const;

 private:
  double basepoint_ = 0.0;
  std::vector<double> derivs_{0.0};
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);

Jet operator+(const Jet& a, double c);
Jet operator+(double c, const Jet& b);
Jet operator-(const Jet& a, double c);
Jet operator-(double c, const Jet& b);
Jet operator*(const Jet& a, double c);
Jet operator*(double c, const Jet& b);
Jet operator/(const Jet& a, double c);
Jet operator/(double c, const Jet& b);

Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet sqrt(const Jet& u);

/// u^exponent for a constant exponent. Integer exponents work for any base
/// (via repeated multiplication); fractional exponents require u.value() > 0.
Jet pow(const Jet& u, double exponent);

/// Jet of the derivative of the represented function; drops one order.
Jet derivative(const Jet& f);

/// Jet of outer∘inner. Requires outer.basepoint() == inner.value().
Jet compose(const Jet& outer, const Jet& inner);

/// Jet of the inverse function at the image point: if j represents s(t) at
/// t0, the result represents t(s) at s0 = j.value(), and composing either way
/// gives the identity jet through the common order. Throws SingularJet when
/// |d1| < 1e-12 * max(1, |d0|).
Jet invert(const Jet& j);

double binomial(int n, int k);

}  // namespace moframe
