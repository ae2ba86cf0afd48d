#pragma once

#include <cmath>

#include "moframe/jet.hpp"

namespace moframe {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
  Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

/// Sine of the angle between the lines spanned by two nonzero vectors
/// (sign-insensitive: parallel and antiparallel both give 0).
inline double line_sine(const Vec3& a, const Vec3& b) {
  return norm(cross(a, b)) / (norm(a) * norm(b));
}

/// Vector of jets: a space-curve germ. Component jets share basepoint and order.
struct JetVec3 {
  Jet x, y, z;

  int order() const { return x.order(); }
};

inline JetVec3 operator+(const JetVec3& a, const JetVec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

inline JetVec3 operator-(const JetVec3& a, const JetVec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

inline JetVec3 operator*(const Jet& c, const JetVec3& v) {
  return {c * v.x, c * v.y, c * v.z};
}

inline JetVec3 operator*(double c, const JetVec3& v) { return {c * v.x, c * v.y, c * v.z}; }

inline JetVec3 operator/(const JetVec3& v, const Jet& c) {
  return {v.x / c, v.y / c, v.z / c};
}

inline Jet dot(const JetVec3& a, const JetVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline JetVec3 cross(const JetVec3& a, const JetVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Jet norm(const JetVec3& v) { return sqrt(dot(v, v)); }

inline JetVec3 derivative(const JetVec3& v) {
  return {derivative(v.x), derivative(v.y), derivative(v.z)};
}

inline JetVec3 truncated(const JetVec3& v, int order) {
  return {v.x.truncated(order), v.y.truncated(order), v.z.truncated(order)};
}

/// k-th derivative vector held by the jets.
inline Vec3 value(const JetVec3& v, int k = 0) {
  return {v.x.deriv(k), v.y.deriv(k), v.z.deriv(k)};
}

inline bool finite(const JetVec3& v) { return v.x.finite() && v.y.finite() && v.z.finite(); }

}  // namespace moframe
