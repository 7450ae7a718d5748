#include "chemoa/rocch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace chemoa {

RocSpace::RocSpace(RocLabel label, Sense sense, std::vector<Vec3> refs, Halfspace feasible)
    : label_(label), sense_(sense), references_(std::move(refs)), feasible_(feasible) {}

RocSpace RocSpace::augmented() {
  return RocSpace(RocLabel::Augmented, Sense::Minimize, {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}},
                  Halfspace({1, 1, 0}, 1.0));
}

RocSpace RocSpace::three_class() {
  return RocSpace(RocLabel::ThreeClass, Sense::Maximize, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                  Halfspace({-1, -1, -1}, -1.0));
}

Vec3 RocSpace::perfect_point() const {
  return sense_ == Sense::Minimize ? Vec3{0, 0, 0} : Vec3{1, 1, 1};
}

double RocSpace::max_vus() const {
  return label_ == RocLabel::Augmented ? 0.5 : 5.0 / 6.0;
}

std::string_view RocSpace::name() const {
  return label_ == RocLabel::Augmented ? "augmented" : "three-class";
}

bool RocSpace::weakly_dominates(const Vec3& a, const Vec3& b) const {
  if (sense_ == Sense::Minimize) {
    return a.c1 <= b.c1 && a.c2 <= b.c2 && a.c3 <= b.c3;
  }
  return a.c1 >= b.c1 && a.c2 >= b.c2 && a.c3 >= b.c3;
}

namespace {

struct ClosureResult {
  double value = 0.0;
  std::vector<char> critical;
};

// Builds the dominated closure of points + references and clips its hull to
// the feasible side. The computation depends only on the set of distinct,
// mutually non-dominated candidates, so it is order independent.
ClosureResult closure_volume(std::span<const Vec3> points, const RocSpace& space, VusState::Trace* trace) {
  const std::size_t n = points.size();
  const auto refs = space.references();
  const std::size_t m = n + refs.size();
  auto at = [&](std::size_t k) -> const Vec3& { return k < n ? points[k] : refs[k - n]; };

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Vec3& pa = at(a);
    const Vec3& pb = at(b);
    if (pa == pb) return a < b;
    return pa < pb;
  });

  // Exact-duplicate groups.
  struct Group {
    Vec3 p;
    std::size_t owners = 0;  // number of input points in the group
    std::size_t sole = 0;    // the owner when owners == 1
    bool reference = false;
    bool kept = true;
  };
  std::vector<Group> groups;
  std::vector<std::uint32_t> kept_groups;
  groups.reserve(m);
  if (trace) trace->group_of.assign(n, 0);
  for (std::size_t k : order) {
    if (groups.empty() || !(groups.back().p == at(k))) {
      groups.push_back(Group{at(k)});
    }
    Group& g = groups.back();
    if (k < n) {
      if (trace) trace->group_of[k] = static_cast<std::uint32_t>(groups.size() - 1);
      ++g.owners;
      g.sole = k;
    } else {
      g.reference = true;
    }
  }

  // Weakly dominated candidates lie inside the closure of their dominator.
  // Work in "worse is larger" coordinates; negation is exact.
  const bool minimize = space.sense() == Sense::Minimize;
  auto worse = [minimize](double x) { return minimize ? x : -x; };
  const double bound = minimize ? 1.0 : 0.0;
  {
    std::vector<std::uint32_t> front;  // kept so far, in sorted order
    // Groups are sorted ascending, so a dominator never has a worse first
    // coordinate: scan from the better end and stop once c1 gets worse.
    const std::size_t count = groups.size();
    for (std::size_t a = 0; a < count; ++a) {
      const Vec3& pa = groups[a].p;
      for (std::size_t step = 0; step < count; ++step) {
        const std::size_t b = minimize ? step : count - 1 - step;
        const Vec3& pb = groups[b].p;
        if (worse(pb.c1) > worse(pa.c1)) break;
        if (b == a) continue;
        if (worse(pb.c2) <= worse(pa.c2) && worse(pb.c3) <= worse(pa.c3)) {
          groups[a].kept = false;
          break;
        }
      }
      if (groups[a].kept) front.push_back(static_cast<std::uint32_t>(a));
    }
    kept_groups.swap(front);
  }

  struct Push {
    Vec3 p;
    std::uint32_t group;
  };
  std::vector<Push> pushes;
  pushes.reserve(kept_groups.size() * 4 + 8);
  for (std::uint32_t g : kept_groups) {
    pushes.push_back({groups[g].p, g});
    Vec3 corner{bound, bound, bound};
    pushes.push_back({corner, g});
  }

  // Pushing two coordinates gives a point on a box edge; only the extreme
  // one along each edge can be a vertex.
  for (std::size_t axis = 0; axis < 3; ++axis) {
    double best = 0.0;
    bool have = false;
    for (std::uint32_t g : kept_groups) {
      const double w = worse(groups[g].p[axis]);
      if (!have || w < best) {
        best = w;
        have = true;
      }
    }
    for (std::uint32_t g : kept_groups) {
      if (worse(groups[g].p[axis]) != best) continue;
      Vec3 q{bound, bound, bound};
      q[axis] = groups[g].p[axis];
      pushes.push_back({q, g});
    }
  }

  // Pushing one coordinate lands on a box face. A face push can only be a
  // vertex when its projection is on the lower convex chain of the face's
  // two-dimensional staircase. Near-collinear points are kept.
  struct Flat {
    double a, b;
    std::uint32_t group;
  };
  std::vector<Flat> flat;
  std::vector<std::size_t> chain;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const std::size_t ia = axis == 0 ? 1 : 0;
    const std::size_t ib = axis == 2 ? 1 : 2;
    flat.clear();
    for (std::uint32_t g : kept_groups) {
      flat.push_back({worse(groups[g].p[ia]), worse(groups[g].p[ib]), g});
    }
    std::sort(flat.begin(), flat.end(), [](const Flat& x, const Flat& y) {
      if (x.a != y.a) return x.a < y.a;
      if (x.b != y.b) return x.b < y.b;
      return x.group < y.group;
    });
    std::size_t stairs = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const bool same = stairs > 0 && flat[i].a == flat[stairs - 1].a && flat[i].b == flat[stairs - 1].b;
      if (stairs == 0 || same || flat[i].b < flat[stairs - 1].b) flat[stairs++] = flat[i];
    }
    chain.clear();
    for (std::size_t i = 0; i < stairs; ++i) {
      if (!chain.empty() && flat[chain.back()].a == flat[i].a && flat[chain.back()].b == flat[i].b) {
        chain.push_back(i);
        continue;
      }
      while (chain.size() >= 2) {
        // Last distinct projection and the one before it.
        const std::size_t last = chain.back();
        std::size_t k = chain.size() - 1;
        while (k > 0 && flat[chain[k - 1]].a == flat[last].a && flat[chain[k - 1]].b == flat[last].b) --k;
        if (k == 0) break;
        const std::size_t prev = chain[k - 1];
        const double turn = (flat[last].a - flat[prev].a) * (flat[i].b - flat[prev].b) -
                            (flat[last].b - flat[prev].b) * (flat[i].a - flat[prev].a);
        if (turn >= -1e-12) break;
        chain.resize(k);
      }
      chain.push_back(i);
    }
    for (std::size_t i : chain) {
      Vec3 q = groups[flat[i].group].p;
      q[axis] = bound;
      pushes.push_back({q, flat[i].group});
    }
  }

  std::sort(pushes.begin(), pushes.end(), [](const Push& a, const Push& b) {
    if (a.p == b.p) return a.group < b.group;
    return a.p < b.p;
  });
  std::vector<Vec3> unique;
  unique.reserve(pushes.size());
  for (std::size_t i = 0; i < pushes.size(); ++i) {
    if (i == 0 || !(pushes[i].p == pushes[i - 1].p)) unique.push_back(pushes[i].p);
  }

  ClosureResult result;
  const ConvexHull hull = quickhull(unique);
  result.value = clipped_volume(hull, space.feasible_side());
  if (!trace) return result;

  // Every push of every group, dominated or not, so that removing a point
  // can expose candidates the pruning above skipped.
  std::vector<Push> all;
  all.reserve(groups.size() * 8);
  for (std::uint32_t g = 0; g < groups.size(); ++g) {
    for (int mask = 0; mask < 8; ++mask) {
      Vec3 q = groups[g].p;
      for (std::size_t axis = 0; axis < 3; ++axis) {
        if (mask & (1 << axis)) q[axis] = bound;
      }
      all.push_back({q, g});
    }
  }
  std::sort(all.begin(), all.end(), [](const Push& a, const Push& b) {
    if (a.p == b.p) return a.group < b.group;
    return a.p < b.p;
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Push& a, const Push& b) { return a.p == b.p && a.group == b.group; }),
            all.end());
  VusState::Trace& t = *trace;
  t.pushes.clear();
  t.gen_first.clear();
  t.gens.clear();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i == 0 || !(all[i].p == all[i - 1].p)) {
      t.pushes.push_back(all[i].p);
      t.gen_first.push_back(static_cast<std::uint32_t>(i));
    }
    t.gens.push_back(all[i].group);
  }
  t.gen_first.push_back(static_cast<std::uint32_t>(all.size()));

  // unique is a sorted subset of pushes.
  std::vector<std::uint32_t> to_push(unique.size());
  for (std::size_t u = 0, w = 0; u < unique.size(); ++u) {
    while (!(t.pushes[w] == unique[u])) ++w;
    to_push[u] = static_cast<std::uint32_t>(w);
  }
  t.is_vertex.assign(t.pushes.size(), 0);
  t.facets.clear();
  result.critical.assign(n, 0);
  if (hull.degenerate) return result;
  for (std::size_t src : hull.source) {
    const std::uint32_t u = to_push[src];
    t.is_vertex[u] = 1;
    if (t.gen_first[u + 1] - t.gen_first[u] != 1) continue;
    const Group& g = groups[t.gens[t.gen_first[u]]];
    if (!g.reference && g.owners == 1) result.critical[g.sole] = 1;
  }
  t.facets.reserve(hull.facets.size());
  for (const auto& f : hull.facets) {
    t.facets.push_back({to_push[hull.source[f.v[0]]], to_push[hull.source[f.v[1]]], to_push[hull.source[f.v[2]]]});
  }
  auto bucket = [](std::vector<std::uint32_t>& first, std::vector<std::uint32_t>& items, std::size_t keys,
                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    first.assign(keys + 1, 0);
    for (const auto& kv : pairs) ++first[kv.first + 1];
    for (std::size_t k = 0; k < keys; ++k) first[k + 1] += first[k];
    items.resize(pairs.size());
    std::vector<std::uint32_t> fill(first.begin(), first.end() - 1);
    for (const auto& kv : pairs) items[fill[kv.first]++] = kv.second;
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t f = 0; f < t.facets.size(); ++f) {
    for (std::uint32_t u : t.facets[f]) pairs.push_back({u, f});
  }
  bucket(t.incident_first, t.incident, t.pushes.size(), pairs);
  pairs.clear();
  for (std::uint32_t u = 0; u < t.pushes.size(); ++u) {
    if (t.gen_first[u + 1] - t.gen_first[u] == 1) pairs.push_back({t.gens[t.gen_first[u]], u});
  }
  bucket(t.sole_first, t.sole, groups.size(), pairs);
  return result;
}

// Is vertex v optimal for some nonnegative weight vector over its hull
// neighbours? The weights run over the simplex, clipped by one halfplane per
// neighbour; a nonempty remainder means the normal cone of v meets the
// improving orthant.
bool improving_vertex(const Vec3& v, std::span<const Vec3> neighbours, Sense sense) {
  const double s = sense == Sense::Maximize ? 1.0 : -1.0;
  std::vector<Vec3> poly{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, next;
  for (const Vec3& u : neighbours) {
    const Vec3 d = (v - u) * s;
    const double tol = kHullEpsilon * norm(d);
    auto value = [&](const Vec3& w) { return dot(w, d) + tol; };
    next.clear();
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Vec3& a = poly[k];
      const Vec3& b = poly[(k + 1) % poly.size()];
      const double fa = value(a), fb = value(b);
      if (fa >= 0.0) next.push_back(a);
      if ((fa >= 0.0) != (fb >= 0.0)) next.push_back(a + (b - a) * (fa / (fa - fb)));
    }
    poly.swap(next);
    if (poly.empty()) return false;
  }
  return true;
}

}  // namespace

double vus(std::span<const Vec3> points, const RocSpace& space) {
  return closure_volume(points, space, nullptr).value;
}

VusState::VusState(std::span<const Vec3> points, const RocSpace& space)
    : points_(points.begin(), points.end()), space_(space) {
  ClosureResult r = closure_volume(points_, space_, &trace_);
  value_ = r.value;
  critical_ = std::move(r.critical);
}

double VusState::value_without(std::size_t i) const {
  if (!critical_.at(i)) {
    return value_;
  }
  std::vector<Vec3> rest;
  rest.reserve(points_.size() - 1);
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (k != i) rest.push_back(points_[k]);
  }
  return closure_volume(rest, space_, nullptr).value;
}

double VusState::contribution(std::size_t i) const {
  if (!critical_.at(i)) return 0.0;
  const auto recompute = [&] { return std::max(0.0, value_ - value_without(i)); };
  const Trace& t = trace_;
  if (t.facets.empty()) return recompute();

  // Pushes generated by points[i] alone vanish with it. Non-vertices go at
  // once; vertices are carved out one at a time.
  const std::uint32_t g = t.group_of[i];
  std::vector<std::uint32_t> dead, doomed;
  for (std::uint32_t k = t.sole_first[g]; k < t.sole_first[g + 1]; ++k) {
    const std::uint32_t u = t.sole[k];
    if (t.is_vertex[u]) {
      doomed.push_back(u);
    } else {
      dead.push_back(u);
    }
  }

  using Edge = std::pair<std::uint32_t, std::uint32_t>;
  using Tri = std::array<std::uint32_t, 3>;
  // The original facets until the first carve, then a working copy.
  std::vector<Tri> soup;
  bool carved = false;
  const Halfspace& feasible = space_.feasible_side();
  std::vector<std::size_t> star;
  std::vector<std::uint32_t> link, local;
  std::vector<Vec3> coords, star_normals;
  std::vector<Edge> rim, edges, open;
  std::vector<Tri> patch;
  double delta = 0.0;
  for (std::uint32_t v : doomed) {
    const Vec3& pv = t.pushes[v];
    star.clear();
    link.clear();
    rim.clear();
    star_normals.clear();
    auto visit = [&](std::size_t f, const Tri& tri) {
      int at = -1;
      for (int k = 0; k < 3; ++k) {
        if (tri[k] == v) at = k;
      }
      if (at < 0) return;
      const std::uint32_t a = tri[(at + 1) % 3];
      const std::uint32_t b = tri[(at + 2) % 3];
      star.push_back(f);
      rim.push_back({a, b});
      link.push_back(a);
      link.push_back(b);
      const Vec3 nrm = cross(t.pushes[a] - pv, t.pushes[b] - pv);
      const double len = norm(nrm);
      if (len > 0.0) star_normals.push_back(nrm * (1.0 / len));
    };
    if (carved) {
      for (std::size_t f = 0; f < soup.size(); ++f) visit(f, soup[f]);
    } else {
      for (std::uint32_t k = t.incident_first[v]; k < t.incident_first[v + 1]; ++k) {
        visit(t.incident[k], t.facets[t.incident[k]]);
      }
    }
    if (star.empty()) return recompute();
    std::sort(link.begin(), link.end());
    link.erase(std::unique(link.begin(), link.end()), link.end());

    // Whatever replaces the star lies in the cone from v over its link.
    coords.assign(1, pv);
    Vec3 lo = pv;
    Vec3 hi = pv;
    for (std::uint32_t u : link) {
      const Vec3& p = t.pushes[u];
      coords.push_back(p);
      for (std::size_t k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
    const ConvexHull cone = quickhull(coords);
    if (cone.degenerate) return recompute();
    local = link;
    // Pushes are sorted, so the first coordinate bounds a contiguous slab.
    const auto from = std::lower_bound(t.pushes.begin(), t.pushes.end(), lo.c1 - kHullEpsilon,
                                       [](const Vec3& p, double x) { return p.c1 < x; });
    for (auto it = from; it != t.pushes.end() && it->c1 <= hi.c1 + kHullEpsilon; ++it) {
      const auto u = static_cast<std::uint32_t>(it - t.pushes.begin());
      if (u == v || std::find(dead.begin(), dead.end(), u) != dead.end()) continue;
      const Vec3& p = *it;
      bool inside = true;
      for (std::size_t k = 1; k < 3; ++k) {
        if (p[k] < lo[k] - kHullEpsilon || p[k] > hi[k] + kHullEpsilon) inside = false;
      }
      if (!inside || std::binary_search(link.begin(), link.end(), u)) continue;
      if (!cone.contains(p)) continue;
      // A point on a rim edge stays on the surface without becoming a vertex.
      bool on_rim = false;
      for (const Edge& e : rim) {
        const Vec3& a = t.pushes[e.first];
        const Vec3 ab = t.pushes[e.second] - a;
        const double s = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
        if (distance(p, a + ab * s) <= kHullEpsilon) {
          on_rim = true;
          break;
        }
      }
      if (!on_rim) local.push_back(u);
    }
    coords.clear();
    for (std::uint32_t u : local) coords.push_back(t.pushes[u]);
    const ConvexHull cover = quickhull(coords);

    patch.clear();
    if (cover.degenerate) {
      // Flat link: fan the polygon, facing v.
      const std::size_t m = cover.vertices.size();
      if (m < 3) return recompute();
      Vec3 c{0, 0, 0};
      for (const Vec3& p : cover.vertices) c = c + p;
      c = c * (1.0 / static_cast<double>(m));
      Vec3 nrm{0, 0, 0};
      for (std::size_t k = 2; k < m; ++k) {
        const Vec3 cand = cross(cover.vertices[1] - cover.vertices[0], cover.vertices[k] - cover.vertices[0]);
        if (norm(cand) > norm(nrm)) nrm = cand;
      }
      if (norm(nrm) == 0.0) return recompute();
      if (dot(nrm, pv - c) < 0.0) nrm = nrm * -1.0;
      Vec3 e1 = cover.vertices[0] - c;
      e1 = e1 * (1.0 / norm(e1));
      Vec3 e2 = cross(nrm, e1);
      e2 = e2 * (1.0 / norm(e2));
      std::vector<std::pair<double, std::uint32_t>> ring;
      for (std::size_t k = 0; k < m; ++k) {
        const Vec3 d = cover.vertices[k] - c;
        ring.push_back({std::atan2(dot(d, e2), dot(d, e1)), local[cover.source[k]]});
      }
      std::sort(ring.begin(), ring.end());
      for (std::size_t k = 1; k + 1 < m; ++k) {
        const Tri tri{ring[0].second, ring[k].second, ring[k + 1].second};
        delta += clipped_tetrahedron_volume(pv, t.pushes[tri[0]], t.pushes[tri[1]], t.pushes[tri[2]], feasible);
        patch.push_back(tri);
      }
    } else {
      for (const auto& f : cover.facets) {
        const Tri tri{local[cover.source[f.v[0]]], local[cover.source[f.v[1]]], local[cover.source[f.v[2]]]};
        const double d = dot(f.normal, pv) - f.offset;
        if (d > kHullEpsilon) {
          delta += clipped_tetrahedron_volume(pv, t.pushes[tri[0]], t.pushes[tri[1]], t.pushes[tri[2]], feasible);
          patch.push_back(tri);
        } else if (d >= -kHullEpsilon) {
          // What is left of a star facet that v was merely on.
          for (const Vec3& sn : star_normals) {
            if (dot(sn, f.normal) > 1.0 - 1e-9) {
              patch.push_back(tri);
              break;
            }
          }
        }
      }
    }

    // The patch must close the hole exactly: its open boundary is the rim.
    edges.clear();
    for (const Tri& tri : patch) {
      for (int k = 0; k < 3; ++k) edges.push_back({tri[k], tri[(k + 1) % 3]});
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return recompute();
    open.clear();
    for (const Edge& e : edges) {
      if (!std::binary_search(edges.begin(), edges.end(), Edge{e.second, e.first})) open.push_back(e);
    }
    std::sort(rim.begin(), rim.end());
    if (open != rim) return recompute();

    if (!carved) {
      soup = t.facets;
      carved = true;
    }
    std::sort(star.begin(), star.end());
    for (auto it = star.rbegin(); it != star.rend(); ++it) {
      soup[*it] = soup.back();
      soup.pop_back();
    }
    soup.insert(soup.end(), patch.begin(), patch.end());
    dead.push_back(v);
  }
  return std::max(0.0, delta);
}

std::vector<double> delta_vus(std::span<const Vec3> points, const RocSpace& space) {
  const VusState state(points, space);
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = std::max(0.0, state.value() - state.value_without(i));
  }
  return out;
}

std::vector<std::vector<std::size_t>> hull_levels(std::span<const Vec3> points, const RocSpace& space) {
  std::vector<std::vector<std::size_t>> levels;
  std::vector<std::size_t> remaining(points.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  const auto refs = space.references();
  std::vector<Vec3> pool;
  std::vector<char> chosen;
  while (!remaining.empty()) {
    pool.clear();
    for (std::size_t idx : remaining) pool.push_back(points[idx]);
    pool.insert(pool.end(), refs.begin(), refs.end());
    const ConvexHull hull = quickhull(pool);
    chosen.assign(remaining.size(), 0);
    bool any = false;
    if (!hull.degenerate) {
      std::vector<std::vector<Vec3>> adjacent(hull.vertices.size());
      for (const auto& f : hull.facets) {
        for (std::size_t k = 0; k < 3; ++k) adjacent[f.v[k]].push_back(hull.vertices[f.v[(k + 1) % 3]]);
      }
      for (std::size_t v = 0; v < hull.vertices.size(); ++v) {
        const std::size_t src = hull.source[v];
        if (src < remaining.size() && improving_vertex(hull.vertices[v], adjacent[v], space.sense())) {
          chosen[src] = 1;
          any = true;
        }
      }
    }
    if (!any) {
      levels.push_back(remaining);
      break;
    }
    std::vector<std::size_t> level, rest;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      (chosen[k] ? level : rest).push_back(remaining[k]);
    }
    levels.push_back(std::move(level));
    remaining = std::move(rest);
  }
  return levels;
}

void OperatingPointQuery::validate() const {
  double sum = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0)) throw std::invalid_argument("operating point: priors must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("operating point: priors must sum to 1");
  }
  for (double c : costs) {
    if (!(c >= 0.0)) throw std::invalid_argument("operating point: costs must be nonnegative");
  }
  if (instances == 0) {
    throw std::invalid_argument("operating point: instance count must be positive");
  }
}

double expected_accuracy(const Vec3& rates, const OperatingPointQuery& q) {
  return q.priors[0] * rates.c1 + q.priors[1] * rates.c2 + q.priors[2] * rates.c3;
}

double expected_cost(const Vec3& rates, const OperatingPointQuery& q) {
  const double n = static_cast<double>(q.instances);
  return n * q.priors[0] * q.costs[0] * (1.0 - rates.c1) + n * q.priors[1] * q.costs[1] * (1.0 - rates.c2) +
         n * q.priors[2] * q.costs[2] * (1.0 - rates.c3);
}

OperatingPoint select_operating_point(std::span<const Vec3> points, const RocSpace& space,
                                      const OperatingPointQuery& query) {
  if (space.label() != RocLabel::ThreeClass) {
    throw std::invalid_argument("operating point selection needs the three-class space");
  }
  if (points.empty()) {
    throw std::invalid_argument("operating point selection needs at least one point");
  }
  query.validate();

  std::vector<Vec3> candidates(space.references().begin(), space.references().end());
  const auto levels = hull_levels(points, space);
  for (std::size_t idx : levels.front()) candidates.push_back(points[idx]);

  constexpr double tie = 1e-12;
  const bool maximize = query.mode == OperatingMode::Accuracy;
  OperatingPoint best{candidates.front(), 0.0};
  bool have = false;
  for (const Vec3& c : candidates) {
    const double s = maximize ? expected_accuracy(c, query) : expected_cost(c, query);
    const double gain = maximize ? s - best.score : best.score - s;
    if (!have || gain > tie || (std::abs(gain) <= tie && c < best.point)) {
      best = {c, s};
      have = true;
    }
  }
  return best;
}

}  // namespace chemoa
