#include "moframe/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "moframe/errors.hpp"

namespace moframe {

namespace {

constexpr int kMaxOrder = 31;

const double* binomial_row(int n) {
  // Pascal's triangle, built once.
  static const auto table = [] {
    static double rows[kMaxOrder + 1][kMaxOrder + 1] = {};
    for (int i = 0; i <= kMaxOrder; ++i) {
      rows[i][0] = rows[i][i] = 1.0;
      for (int j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
    }
    return &rows;
  }();
  return (*table)[n];
}

double factorial(int n) {
  static const auto table = [] {
    static double f[kMaxOrder + 1];
    f[0] = 1.0;
    for (int i = 1; i <= kMaxOrder; ++i) f[i] = f[i - 1] * i;
    return &f;
  }();
  return (*table)[n];
}

int common_order(const Jet& a, const Jet& b) { return std::min(a.order(), b.order()); }

void check_same_basepoint(const Jet& a, const Jet& b) {
  assert(std::abs(a.basepoint() - b.basepoint()) <=
             1e-9 * std::max(1.0, std::abs(a.basepoint())) &&
         "jet arithmetic requires a common basepoint");
  (void)a;
  (void)b;
}

// Truncated product of Taylor-coefficient arrays (c[0..order]).
std::vector<double> coeff_mul(const std::vector<double>& a, const std::vector<double>& b,
                              int order) {
  std::vector<double> r(static_cast<std::size_t>(order) + 1, 0.0);
  for (int i = 0; i <= order; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0.0) continue;
    for (int j = 0; i + j <= order; ++j)
      r[static_cast<std::size_t>(i + j)] +=
          a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  return r;
}

std::vector<double> to_coeffs(const Jet& j) {
  std::vector<double> c(static_cast<std::size_t>(j.order()) + 1);
  for (int k = 0; k <= j.order(); ++k) c[static_cast<std::size_t>(k)] = j.deriv(k) / factorial(k);
  return c;
}

Jet from_coeffs(double basepoint, const std::vector<double>& c) {
  std::vector<double> d(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) d[k] = c[k] * factorial(static_cast<int>(k));
  return Jet(basepoint, std::move(d));
}

}  // namespace

Jet::Jet(double basepoint, std::vector<double> derivs)
    : basepoint_(basepoint), derivs_(std::move(derivs)) {
  assert(!derivs_.empty());
}

Jet Jet::constant(double value, int order, double basepoint) {
  std::vector<double> d(static_cast<std::size_t>(order) + 1, 0.0);
  d[0] = value;
  return Jet(basepoint, std::move(d));
}

Jet Jet::parameter(double s0, int order) {
  assert(order >= 1);
  std::vector<double> d(static_cast<std::size_t>(order) + 1, 0.0);
  d[0] = s0;
  d[1] = 1.0;
  return Jet(s0, std::move(d));
}

bool Jet::finite() const {
  for (double v : derivs_)
    if (!std::isfinite(v)) return false;
  return true;
}

Jet Jet::truncated(int order) const {
  assert(order >= 0 && order <= this->order());
  return Jet(basepoint_,
             std::vector<double>(derivs_.begin(), derivs_.begin() + order + 1));
}

Jet operator+(const Jet& a, const Jet& b) {
  check_same_basepoint(a, b);
  const int n = common_order(a, b);
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) d[static_cast<std::size_t>(k)] = a.deriv(k) + b.deriv(k);
  return Jet(a.basepoint(), std::move(d));
}

Jet operator-(const Jet& a, const Jet& b) {
  check_same_basepoint(a, b);
  const int n = common_order(a, b);
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) d[static_cast<std::size_t>(k)] = a.deriv(k) - b.deriv(k);
  return Jet(a.basepoint(), std::move(d));
}

Jet operator-(const Jet& a) {
  std::vector<double> d(a.derivs());
  for (double& v : d) v = -v;
  return Jet(a.basepoint(), std::move(d));
}

Jet operator*(const Jet& a, const Jet& b) {
  check_same_basepoint(a, b);
  const int n = common_order(a, b);
  std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const double* c = binomial_row(k);
    double acc = 0.0;
    for (int i = 0; i <= k; ++i) acc += c[i] * a.deriv(i) * b.deriv(k - i);
    d[static_cast<std::size_t>(k)] = acc;
  }
  return Jet(a.basepoint(), std::move(d));
}

Jet operator/(const Jet& a, const Jet& b) {
  check_same_basepoint(a, b);
  if (b.value() == 0.0) throw DomainError("divide", 0.0);
  const int n = common_order(a, b);
  std::vector<double> h(static_cast<std::size_t>(n) + 1, 0.0);
  // a = b * h, so h[k] = (a[k] - sum_{i=1..k} C(k,i) b[i] h[k-i]) / b[0].
  for (int k = 0; k <= n; ++k) {
    const double* c = binomial_row(k);
    double acc = a.deriv(k);
    for (int i = 1; i <= k; ++i) acc -= c[i] * b.deriv(i) * h[static_cast<std::size_t>(k - i)];
    h[static_cast<std::size_t>(k)] = acc / b.value();
  }
  return Jet(a.basepoint(), std::move(h));
}

Jet operator+(const Jet& a, double c) {
  Jet r = a;
  r.deriv(0) += c;
  return r;
}
Jet operator+(double c, const Jet& b) { return b + c; }
Jet operator-(const Jet& a, double c) { return a + (-c); }
Jet operator-(double c, const Jet& b) { return -(b - c); }

Jet operator*(const Jet& a, double c) {
  std::vector<double> d(a.derivs());
  for (double& v : d) v *= c;
  return Jet(a.basepoint(), std::move(d));
}
Jet operator*(double c, const Jet& b) { return b * c; }
Jet operator/(const Jet& a, double c) {
  if (c == 0.0) throw DomainError("divide", 0.0);
  return a * (1.0 / c);
}
Jet operator/(double c, const Jet& b) { return Jet::constant(c, b.order(), b.basepoint()) / b; }

namespace {

// Coupled recurrence: s' = c u', c' = -s u'. With raw derivatives,
//   s[k] = sum_{i=0..k-1} C(k-1,i) c[i] u[k-i],
//   c[k] = -sum_{i=0..k-1} C(k-1,i) s[i] u[k-i].
std::pair<Jet, Jet> sin_cos(const Jet& u) {
  const int n = u.order();
  std::vector<double> s(static_cast<std::size_t>(n) + 1), c(static_cast<std::size_t>(n) + 1);
  s[0] = std::sin(u.value());
  c[0] = std::cos(u.value());
  for (int k = 1; k <= n; ++k) {
    const double* bin = binomial_row(k - 1);
    double as = 0.0, ac = 0.0;
    for (int i = 0; i <= k - 1; ++i) {
      as += bin[i] * c[static_cast<std::size_t>(i)] * u.deriv(k - i);
      ac += bin[i] * s[static_cast<std::size_t>(i)] * u.deriv(k - i);
    }
    s[static_cast<std::size_t>(k)] = as;
    c[static_cast<std::size_t>(k)] = -ac;
  }
  return {Jet(u.basepoint(), std::move(s)), Jet(u.basepoint(), std::move(c))};
}

}  // namespace

Jet sin(const Jet& u) { return sin_cos(u).first; }
Jet cos(const Jet& u) { return sin_cos(u).second; }

Jet sqrt(const Jet& u) {
  if (!(u.value() > 0.0)) throw DomainError("sqrt", u.value());
  const int n = u.order();
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  v[0] = std::sqrt(u.value());
  // v*v = u: u[k] = sum C(k,i) v[i] v[k-i], solve for v[k].
  for (int k = 1; k <= n; ++k) {
    const double* c = binomial_row(k);
    double acc = u.deriv(k);
    for (int i = 1; i <= k - 1; ++i) acc -= c[i] * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(k - i)];
    v[static_cast<std::size_t>(k)] = acc / (2.0 * v[0]);
  }
  return Jet(u.basepoint(), std::move(v));
}

namespace {

Jet pow_integer(const Jet& u, long long e) {
  if (e == 0) return Jet::constant(1.0, u.order(), u.basepoint());
  const bool negative = e < 0;
  unsigned long long k = negative ? static_cast<unsigned long long>(-e)
                                  : static_cast<unsigned long long>(e);
  Jet result = Jet::constant(1.0, u.order(), u.basepoint());
  Jet base = u;
  while (k > 0) {
    if (k & 1ULL) result = result * base;
    base = base * base;
    k >>= 1;
  }
  if (negative) {
    if (u.value() == 0.0) throw DomainError("power", 0.0);
    result = Jet::constant(1.0, u.order(), u.basepoint()) / result;
  }
  return result;
}

}  // namespace

Jet pow(const Jet& u, double exponent) {
  if (exponent == std::round(exponent) && std::abs(exponent) < 1e9)
    return pow_integer(u, static_cast<long long>(exponent));
  if (!(u.value() > 0.0)) throw DomainError("power", u.value());
  const int n = u.order();
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  v[0] = std::pow(u.value(), exponent);
  // From u v' = r v u':
  //   v[k] u[0] = r * sum_{i=0..k-1} C(k-1,i) v[i] u[k-i]
  //             -     sum_{i=1..k-1} C(k-1,i-1) v[i] u[k-i].
  for (int k = 1; k <= n; ++k) {
    const double* bin = binomial_row(k - 1);
    double acc = 0.0;
    for (int i = 0; i <= k - 1; ++i) acc += exponent * bin[i] * v[static_cast<std::size_t>(i)] * u.deriv(k - i);
    for (int i = 1; i <= k - 1; ++i) acc -= bin[i - 1] * v[static_cast<std::size_t>(i)] * u.deriv(k - i);
    v[static_cast<std::size_t>(k)] = acc / u.value();
  }
  return Jet(u.basepoint(), std::move(v));
}

Jet derivative(const Jet& f) {
  assert(f.order() >= 1);
  std::vector<double> d(static_cast<std::size_t>(f.order()));
  for (int k = 1; k <= f.order(); ++k) d[static_cast<std::size_t>(k - 1)] = f.deriv(k);
  return Jet(f.basepoint(), std::move(d));
}

Jet compose(const Jet& outer, const Jet& inner) {
  assert(std::abs(outer.basepoint() - inner.value()) <=
             1e-8 * std::max(1.0, std::abs(inner.value())) &&
         "compose: outer jet must be taken at the inner jet's value");
  const int n = common_order(outer, inner);
  const std::vector<double> a = to_coeffs(outer.truncated(n));
  std::vector<double> g = to_coeffs(inner.truncated(n));
  g[0] = 0.0;  // compose in the increment of the inner variable
  // Horner over the truncated series.
  std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
  r[0] = a[static_cast<std::size_t>(n)];
  for (int i = n - 1; i >= 0; --i) {
    r = coeff_mul(r, g, n);
    r[0] += a[static_cast<std::size_t>(i)];
  }
  return from_coeffs(inner.basepoint(), r);
}

Jet invert(const Jet& j) {
  const int n = j.order();
  assert(n >= 1);
  if (std::abs(j.deriv(1)) < 1e-12 * std::max(1.0, std::abs(j.value())))
    throw SingularJet(j.deriv(1));

  const std::vector<double> bfull = to_coeffs(j);
  std::vector<double> b(bfull);
  b[0] = 0.0;
  std::vector<double> h(static_cast<std::size_t>(n) + 1, 0.0);
  if (n >= 1) h[1] = 1.0 / b[1];
  // Solve b(h(u)) = u order by order; the order-k unknown enters linearly
  // with coefficient b[1].
  for (int k = 2; k <= n; ++k) {
    std::vector<double> comp(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<double> hp(h.begin(), h.begin() + k + 1);  // h truncated
    std::vector<double> power = hp;
    for (int i = 1; i <= k; ++i) {
      if (i > 1) power = coeff_mul(power, hp, k);
      for (int t = 0; t <= k; ++t) comp[static_cast<std::size_t>(t)] += b[static_cast<std::size_t>(i)] * power[static_cast<std::size_t>(t)];
    }
    h[static_cast<std::size_t>(k)] = -comp[static_cast<std::size_t>(k)] / b[1];
  }
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  d[0] = j.basepoint();
  for (int k = 1; k <= n; ++k) d[static_cast<std::size_t>(k)] = h[static_cast<std::size_t>(k)] * factorial(k);
  return Jet(j.value(), std::move(d));
}

double binomial(int n, int k) {
  assert(n >= 0 && n <= kMaxOrder && k >= 0 && k <= n);
  return binomial_row(n)[k];
}

}  // namespace moframe
