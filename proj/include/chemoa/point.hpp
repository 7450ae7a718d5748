#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <tuple>

namespace chemoa {

/// A point in 3-D objective space. Coordinates are dimensionless and,
/// after problem-level clamping, lie in [0,1].
struct ObjectiveVector {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? c1 : (i == 1 ? c2 : c3); }

  constexpr ObjectiveVector operator+(const ObjectiveVector& o) const { return {c1 + o.c1, c2 + o.c2, c3 + o.c3}; }
  constexpr ObjectiveVector operator-(const ObjectiveVector& o) const { return {c1 - o.c1, c2 - o.c2, c3 - o.c3}; }
  constexpr ObjectiveVector operator*(double s) const { return {c1 * s, c2 * s, c3 * s}; }

  bool is_finite() const { return std::isfinite(c1) && std::isfinite(c2) && std::isfinite(c3); }

  friend constexpr bool operator==(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.c1 == b.c1 && a.c2 == b.c2 && a.c3 == b.c3;
  }
  friend constexpr bool operator<(const ObjectiveVector& a, const ObjectiveVector& b) {
    return std::tie(a.c1, a.c2, a.c3) < std::tie(b.c1, b.c2, b.c3);
  }
};

using Vec3 = ObjectiveVector;

constexpr double dot(const Vec3& a, const Vec3& b) { return a.c1 * b.c1 + a.c2 * b.c2 + a.c3 * b.c3; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.c2 * b.c3 - a.c3 * b.c2, a.c3 * b.c1 - a.c1 * b.c3, a.c1 * b.c2 - a.c2 * b.c1};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

/// Six times the signed volume of tetrahedron (a, b, c, d).
constexpr double orient(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(b - a, cross(c - a, d - a));
}

}  // namespace chemoa
