#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "chemoa/point.hpp"

namespace chemoa {

/// Absolute tolerance for coplanarity and duplicate detection. Objective
/// coordinates are O(1), so an absolute bound is adequate.
inline constexpr double kHullEpsilon = 1e-9;

enum class Sense { Minimize, Maximize };

/// Closed halfspace {p : normal . p <= offset} with a unit normal.
class Halfspace {
 public:
  /// Normalizes (normal, offset) so that |normal| = 1. Throws
  /// std::invalid_argument for a zero normal.
  Halfspace(const Vec3& normal, double offset);

  const Vec3& normal() const { return normal_; }
  double offset() const { return offset_; }
  double signed_distance(const Vec3& p) const { return dot(normal_, p) - offset_; }
  bool contains(const Vec3& p) const { return signed_distance(p) <= 0.0; }
  Halfspace complement() const { return Halfspace(normal_ * -1.0, -offset_); }

 private:
  Vec3 normal_;
  double offset_;
};

struct HullFacet {
  std::array<std::size_t, 3> v;  // indices into ConvexHull::vertices, counter-clockwise seen from outside
  Vec3 normal;                    // outward, unit length
  double offset = 0.0;            // normal . p == offset on the facet plane
};

struct ConvexHull {
  std::vector<Vec3> vertices;
  /// source[i] is the index into the input sequence that produced vertices[i].
  std::vector<std::size_t> source;
  std::vector<HullFacet> facets;
  /// True when the input has affine dimension < 3; facets is then empty
  /// and vertices holds the extreme points of the lower-dimensional hull.
  bool degenerate = false;

  /// Facet-plane containment test with the hull tolerance.
  bool contains(const Vec3& p, double tolerance = kHullEpsilon) const;
};

/// 3-D quickhull. Points within kHullEpsilon of a facet plane count as on it,
/// so coplanar-interior and duplicate points never become vertices.
ConvexHull quickhull(std::span<const Vec3> points);

/// Volume by signed tetrahedra fanned from the vertex centroid. Zero for
/// degenerate hulls.
double hull_volume(const ConvexHull& hull);

/// Volume of hull intersected with a halfspace.
double clipped_volume(const ConvexHull& hull, const Halfspace& h);

/// Volume of the tetrahedron (a,b,c,d) intersected with the halfspace.
double clipped_tetrahedron_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Halfspace& h);

/// For every input point emits the copies obtained by pushing any subset of
/// coordinates to the worst bound of the unit box (1 when minimizing, 0 when
/// maximizing). Coinciding copies of one point are emitted once.
std::vector<Vec3> dominated_closure_vertices(std::span<const Vec3> points, Sense sense);

}  // namespace chemoa
