#include "chemoa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chemoa {

Halfspace::Halfspace(const Vec3& normal, double offset) {
  const double len = norm(normal);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw std::invalid_argument("Halfspace: normal must be non-zero and finite");
  }
  normal_ = normal * (1.0 / len);
  offset_ = offset / len;
}

bool ConvexHull::contains(const Vec3& p, double tolerance) const {
  if (degenerate) {
    return false;
  }
  for (const auto& f : facets) {
    if (dot(f.normal, p) - f.offset > tolerance) {
      return false;
    }
  }
  return true;
}

namespace {

constexpr int kNone = -1;

struct Face {
  std::array<int, 3> v{};
  std::array<int, 3> adj{kNone, kNone, kNone};  // adj[k] lies across edge (v[k], v[k+1])
  Vec3 normal;
  double offset = 0.0;
  int outside = kNone;  // head of the intrusive outside list, linked through next_
  int furthest = kNone;
  double furthest_distance = 0.0;
  bool alive = true;
  unsigned mark = 0;
};

class QuickHullBuilder {
 public:
  explicit QuickHullBuilder(std::span<const Vec3> pts) : pts_(pts) {}

  ConvexHull build();

 private:
  ConvexHull degenerate_hull(int dimension, const std::array<int, 3>& seeds) const;
  int make_face(int a, int b, int c);
  double distance(const Face& f, int p) const { return dot(f.normal, pts_[p]) - f.offset; }
  void assign(std::span<const int> candidates, std::span<const int> faces);
  void add_point(int face_id);

  std::span<const Vec3> pts_;
  std::vector<Face> faces_;
  std::vector<int> next_;
  Vec3 interior_;
  unsigned mark_ = 0;

  // Scratch buffers reused across iterations.
  std::vector<int> visible_;
  std::vector<std::array<int, 3>> horizon_;  // (a, b, face across)
  std::vector<int> new_faces_;
  std::vector<int> orphans_;
  std::vector<int> stack_;
};

int QuickHullBuilder::make_face(int a, int b, int c) {
  Face f;
  f.v = {a, b, c};
  Vec3 n = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
  if (dot(n, interior_ - pts_[a]) > 0.0) {
    std::swap(f.v[1], f.v[2]);
    n = n * -1.0;
  }
  const double len = norm(n);
  f.normal = len > 0.0 ? n * (1.0 / len) : Vec3{0, 0, 0};
  f.offset = dot(f.normal, pts_[f.v[0]]);
  faces_.push_back(f);
  return static_cast<int>(faces_.size()) - 1;
}

void QuickHullBuilder::assign(std::span<const int> candidates, std::span<const int> faces) {
  for (int p : candidates) {
    for (int fid : faces) {
      Face& f = faces_[fid];
      const double d = distance(f, p);
      if (d > kHullEpsilon) {
        next_[p] = f.outside;
        f.outside = p;
        if (d > f.furthest_distance) {
          f.furthest_distance = d;
          f.furthest = p;
        }
        break;
      }
    }
  }
}

void QuickHullBuilder::add_point(int start) {
  const int p = faces_[start].furthest;
  const Vec3& apex = pts_[p];
  ++mark_;

  // Flood the visible region and record horizon edges.
  visible_.clear();
  horizon_.clear();
  stack_.assign(1, start);
  faces_[start].mark = mark_;
  while (!stack_.empty()) {
    const int fid = stack_.back();
    stack_.pop_back();
    visible_.push_back(fid);
    for (int k = 0; k < 3; ++k) {
      const int nb = faces_[fid].adj[k];
      Face& g = faces_[nb];
      if (g.mark == mark_) {
        continue;
      }
      if (dot(g.normal, apex) - g.offset > kHullEpsilon) {
        g.mark = mark_;
        stack_.push_back(nb);
      }
    }
  }
  for (int fid : visible_) {
    const Face& f = faces_[fid];
    for (int k = 0; k < 3; ++k) {
      const int nb = f.adj[k];
      if (faces_[nb].mark != mark_) {
        horizon_.push_back({f.v[k], f.v[(k + 1) % 3], nb});
      }
    }
  }

  // One new face per horizon edge, keeping the horizon orientation.
  new_faces_.clear();
  for (const auto& [a, b, across] : horizon_) {
    Face f;
    f.v = {a, b, p};
    Vec3 n = cross(pts_[b] - pts_[a], apex - pts_[a]);
    const double len = norm(n);
    f.normal = len > 0.0 ? n * (1.0 / len) : Vec3{0, 0, 0};
    f.offset = dot(f.normal, pts_[a]);
    f.adj[0] = across;
    faces_.push_back(f);
    const int id = static_cast<int>(faces_.size()) - 1;
    new_faces_.push_back(id);
    Face& g = faces_[across];
    for (int k = 0; k < 3; ++k) {
      if (g.v[k] == b && g.v[(k + 1) % 3] == a) {
        g.adj[k] = id;
      }
    }
  }
  // Stitch neighbouring new faces: face (a,b,p) meets (b,c,p) along (b,p).
  for (int id : new_faces_) {
    const int b = faces_[id].v[1];
    for (int other : new_faces_) {
      if (faces_[other].v[0] == b) {
        faces_[id].adj[1] = other;
        faces_[other].adj[2] = id;
        break;
      }
    }
  }

  orphans_.clear();
  for (int fid : visible_) {
    Face& f = faces_[fid];
    f.alive = false;
    for (int q = f.outside; q != kNone; q = next_[q]) {
      if (q != p) {
        orphans_.push_back(q);
      }
    }
    f.outside = kNone;
  }
  assign(orphans_, new_faces_);
}

ConvexHull QuickHullBuilder::degenerate_hull(int dimension, const std::array<int, 3>& seeds) const {
  ConvexHull hull;
  hull.degenerate = true;
  const int n = static_cast<int>(pts_.size());
  auto push = [&](int i) {
    hull.vertices.push_back(pts_[i]);
    hull.source.push_back(static_cast<std::size_t>(i));
  };
  if (n == 0) {
    return hull;
  }
  if (dimension == 0) {
    push(seeds[0]);
    return hull;
  }
  const Vec3 origin = pts_[seeds[0]];
  const Vec3 u = (pts_[seeds[1]] - origin) * (1.0 / norm(pts_[seeds[1]] - origin));
  if (dimension == 1) {
    int lo = seeds[0], hi = seeds[0];
    double tlo = 0.0, thi = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = dot(pts_[i] - origin, u);
      if (t < tlo) {
        tlo = t;
        lo = i;
      }
      if (t > thi) {
        thi = t;
        hi = i;
      }
    }
    push(lo);
    push(hi);
    return hull;
  }
  // Planar: monotone chain in an in-plane orthonormal frame.
  Vec3 nrm = cross(u, pts_[seeds[2]] - origin);
  nrm = nrm * (1.0 / norm(nrm));
  const Vec3 w = cross(nrm, u);
  struct P2 {
    double x, y;
    int idx;
  };
  std::vector<P2> proj;
  proj.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Vec3 d = pts_[i] - origin;
    proj.push_back({dot(d, u), dot(d, w), i});
  }
  std::sort(proj.begin(), proj.end(), [](const P2& a, const P2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  auto turn = [](const P2& o, const P2& a, const P2& b) {
    const double cr = (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    const double len = std::hypot(b.x - o.x, b.y - o.y);
    return len > 0.0 ? cr / len : 0.0;  // signed distance of a from line o->b, up to sign
  };
  std::vector<P2> chain(2 * proj.size());
  std::size_t k = 0;
  for (const auto& q : proj) {
    while (k >= 2 && turn(chain[k - 2], chain[k - 1], q) <= kHullEpsilon) {
      --k;
    }
    chain[k++] = q;
  }
  for (std::size_t i = proj.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& q = proj[i];
    while (k >= lower && turn(chain[k - 2], chain[k - 1], q) <= kHullEpsilon) {
      --k;
    }
    chain[k++] = q;
  }
  if (k > 1) {
    --k;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0 && std::hypot(chain[i].x - chain[i - 1].x, chain[i].y - chain[i - 1].y) <= kHullEpsilon) {
      continue;
    }
    push(chain[i].idx);
  }
  return hull;
}

ConvexHull QuickHullBuilder::build() {
  const int n = static_cast<int>(pts_.size());
  if (n == 0) {
    return degenerate_hull(0, {0, 0, 0});
  }

  // Initial simplex from axis extremes.
  std::array<int, 6> ext{};
  for (int axis = 0; axis < 3; ++axis) {
    int lo = 0, hi = 0;
    for (int i = 1; i < n; ++i) {
      if (pts_[i][axis] < pts_[lo][axis]) lo = i;
      if (pts_[i][axis] > pts_[hi][axis]) hi = i;
    }
    ext[2 * axis] = lo;
    ext[2 * axis + 1] = hi;
  }
  int i0 = 0, i1 = 0;
  double best = -1.0;
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      const double d = chemoa::distance(pts_[ext[a]], pts_[ext[b]]);
      if (d > best) {
        best = d;
        i0 = ext[a];
        i1 = ext[b];
      }
    }
  }
  if (best <= kHullEpsilon) {
    return degenerate_hull(0, {i0, i0, i0});
  }
  const Vec3 dir = (pts_[i1] - pts_[i0]) * (1.0 / best);
  int i2 = i0;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = norm(cross(pts_[i] - pts_[i0], dir));
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= kHullEpsilon) {
    return degenerate_hull(1, {i0, i1, i1});
  }
  Vec3 pn = cross(pts_[i1] - pts_[i0], pts_[i2] - pts_[i0]);
  pn = pn * (1.0 / norm(pn));
  int i3 = i0;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(dot(pts_[i] - pts_[i0], pn));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= kHullEpsilon) {
    return degenerate_hull(2, {i0, i1, i2});
  }

  interior_ = (pts_[i0] + pts_[i1] + pts_[i2] + pts_[i3]) * 0.25;
  faces_.reserve(static_cast<std::size_t>(8 * n + 16));
  next_.assign(static_cast<std::size_t>(n), kNone);
  const int f0 = make_face(i0, i1, i2);
  const int f1 = make_face(i0, i1, i3);
  const int f2 = make_face(i0, i2, i3);
  const int f3 = make_face(i1, i2, i3);
  // Link the tetrahedron by matching reversed edges.
  const std::array<int, 4> init{f0, f1, f2, f3};
  for (int a : init) {
    for (int k = 0; k < 3; ++k) {
      const int u = faces_[a].v[k], w = faces_[a].v[(k + 1) % 3];
      for (int b : init) {
        if (b == a) continue;
        for (int m = 0; m < 3; ++m) {
          if (faces_[b].v[m] == w && faces_[b].v[(m + 1) % 3] == u) {
            faces_[a].adj[k] = b;
          }
        }
      }
    }
  }
  std::vector<int> rest;
  rest.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (i != i0 && i != i1 && i != i2 && i != i3) {
      rest.push_back(i);
    }
  }
  assign(rest, init);

  for (std::size_t cursor = 0; cursor < faces_.size();) {
    if (faces_[cursor].alive && faces_[cursor].outside != kNone) {
      add_point(static_cast<int>(cursor));
    } else {
      ++cursor;
    }
  }

  ConvexHull hull;
  std::vector<int> remap(n, kNone);
  hull.facets.reserve(faces_.size() / 2);
  hull.vertices.reserve(static_cast<std::size_t>(n));
  hull.source.reserve(static_cast<std::size_t>(n));
  for (const Face& f : faces_) {
    if (!f.alive) continue;
    HullFacet hf;
    for (int k = 0; k < 3; ++k) {
      const int src = f.v[k];
      if (remap[src] == kNone) {
        remap[src] = static_cast<int>(hull.vertices.size());
        hull.vertices.push_back(pts_[src]);
        hull.source.push_back(static_cast<std::size_t>(src));
      }
      hf.v[k] = static_cast<std::size_t>(remap[src]);
    }
    hf.normal = f.normal;
    hf.offset = f.offset;
    hull.facets.push_back(hf);
  }
  return hull;
}

double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return std::abs(orient(a, b, c, d)) / 6.0;
}

// Prism with bottom (a0,a1,a2) and top (b0,b1,b2), bi above ai.
double prism_volume(const Vec3& a0, const Vec3& a1, const Vec3& a2, const Vec3& b0, const Vec3& b1, const Vec3& b2) {
  return tet_volume(a0, a1, a2, b2) + tet_volume(a0, a1, b1, b2) + tet_volume(a0, b0, b1, b2);
}

}  // namespace

ConvexHull quickhull(std::span<const Vec3> points) {
  return QuickHullBuilder(points).build();
}

double hull_volume(const ConvexHull& hull) {
  if (hull.degenerate || hull.facets.empty()) {
    return 0.0;
  }
  Vec3 c{0, 0, 0};
  for (const auto& v : hull.vertices) c = c + v;
  c = c * (1.0 / static_cast<double>(hull.vertices.size()));
  double total = 0.0;
  for (const auto& f : hull.facets) {
    const Vec3& a = hull.vertices[f.v[0]];
    const Vec3& b = hull.vertices[f.v[1]];
    const Vec3& d = hull.vertices[f.v[2]];
    total += dot(cross(b - a, d - a), a - c) / 6.0;
  }
  return std::max(total, 0.0);
}

double clipped_tetrahedron_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Halfspace& h) {
  const std::array<Vec3, 4> p{a, b, c, d};
  std::array<double, 4> s{};
  std::array<int, 4> in{}, out{};
  int nin = 0, nout = 0;
  for (int i = 0; i < 4; ++i) {
    s[i] = h.signed_distance(p[i]);
    if (s[i] <= 0.0) {
      in[nin++] = i;
    } else {
      out[nout++] = i;
    }
  }
  auto cut = [&](int i, int o) {
    const double t = s[i] / (s[i] - s[o]);
    return p[i] + (p[o] - p[i]) * t;
  };
  switch (nin) {
    case 0:
      return 0.0;
    case 4:
      return tet_volume(a, b, c, d);
    case 1:
      return tet_volume(p[in[0]], cut(in[0], out[0]), cut(in[0], out[1]), cut(in[0], out[2]));
    case 2: {
      const int i0 = in[0], i1 = in[1], o0 = out[0], o1 = out[1];
      return prism_volume(p[i0], cut(i0, o0), cut(i0, o1), p[i1], cut(i1, o0), cut(i1, o1));
    }
    default: {
      const int o = out[0];
      return prism_volume(p[in[0]], p[in[1]], p[in[2]], cut(in[0], o), cut(in[1], o), cut(in[2], o));
    }
  }
}

double clipped_volume(const ConvexHull& hull, const Halfspace& h) {
  if (hull.degenerate || hull.facets.empty()) {
    return 0.0;
  }
  Vec3 c{0, 0, 0};
  for (const auto& v : hull.vertices) c = c + v;
  c = c * (1.0 / static_cast<double>(hull.vertices.size()));
  double total = 0.0;
  for (const auto& f : hull.facets) {
    total += clipped_tetrahedron_volume(c, hull.vertices[f.v[0]], hull.vertices[f.v[1]], hull.vertices[f.v[2]], h);
  }
  return total;
}

std::vector<Vec3> dominated_closure_vertices(std::span<const Vec3> points, Sense sense) {
  const double bound = sense == Sense::Minimize ? 1.0 : 0.0;
  std::vector<Vec3> out;
  out.reserve(points.size() * 8);
  std::array<Vec3, 8> local;
  for (const auto& p : points) {
    std::size_t count = 0;
    for (unsigned mask = 0; mask < 8; ++mask) {
      Vec3 q = p;
      for (std::size_t axis = 0; axis < 3; ++axis) {
        if (mask & (1u << axis)) q[axis] = bound;
      }
      if (std::find(local.begin(), local.begin() + static_cast<std::ptrdiff_t>(count), q) == local.begin() + static_cast<std::ptrdiff_t>(count)) {
        local[count++] = q;
      }
    }
    out.insert(out.end(), local.begin(), local.begin() + static_cast<std::ptrdiff_t>(count));
  }
  return out;
}

}  // namespace chemoa
