#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polyform/errors.hpp"
#include "polyform/geometry.hpp"

namespace polyform {

/// Convex polyhedron: vertices, outward-oriented (counter-clockwise seen from
/// outside) faces, and edges derived from the faces.
struct Polyhedron {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;
  /// Index of each vertex in the configuration the hull was built from; empty
  /// for polyhedra not produced by `convex_hull`.
  std::vector<std::size_t> source;

  std::size_t vertex_count() const noexcept { return vertices.size(); }
  std::size_t face_count() const noexcept { return faces.size(); }

  /// Unordered edges (i < j), sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::set<std::pair<int, int>> es;
    for (const auto &f : faces)
      for (std::size_t k = 0; k < f.size(); ++k) {
        int a = f[k];
        int b = f[(k + 1) % f.size()];
        es.emplace(std::min(a, b), std::max(a, b));
      }
    return {es.begin(), es.end()};
  }
  std::size_t edge_count() const { return edges().size(); }

  /// Number of edges meeting at each vertex.
  std::vector<int> vertex_degrees() const {
    std::vector<int> deg(vertices.size(), 0);
    for (auto [a, b] : edges()) {
      ++deg[static_cast<std::size_t>(a)];
      ++deg[static_cast<std::size_t>(b)];
    }
    return deg;
  }

  /// Face count keyed by number of sides.
  std::map<std::size_t, std::size_t> face_census() const {
    std::map<std::size_t, std::size_t> m;
    for (const auto &f : faces)
      ++m[f.size()];
    return m;
  }
};

/// Dihedral angle below which adjacent hull triangles are merged into one face.
inline constexpr double kFaceMergeAngle = 1e-6;

/// True iff V + F - E = 2.
inline bool check_euler(const Polyhedron &poly) {
  const auto v = static_cast<long>(poly.vertex_count());
  const auto f = static_cast<long>(poly.face_count());
  const auto e = static_cast<long>(poly.edge_count());
  return v + f - e == 2;
}

/// Checks the closed-surface invariants: every directed edge appears once and
/// its reverse appears in exactly one other face.
inline bool is_closed_manifold(const Polyhedron &poly) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto &f : poly.faces) {
    if (f.size() < 3)
      return false;
    for (std::size_t k = 0; k < f.size(); ++k) {
      auto key = std::make_pair(f[k], f[(k + 1) % f.size()]);
      if (++directed[key] > 1)
        return false;
    }
  }
  for (const auto &[e, count] : directed)
    if (!directed.contains({e.second, e.first}))
      return false;
  return true;
}

namespace detail {

struct HullTriangle {
  std::array<int, 3> v;
  Vec3 normal;
  double offset = 0.0;
  bool alive = true;
};

inline HullTriangle make_triangle(std::span<const Vec3> pts, int a, int b, int c) {
  HullTriangle t{{a, b, c}, {}, 0.0, true};
  const Vec3 &pa = pts[static_cast<std::size_t>(a)];
  Vec3 n = cross(pts[static_cast<std::size_t>(b)] - pa, pts[static_cast<std::size_t>(c)] - pa);
  t.normal = n / norm(n);
  t.offset = dot(t.normal, pa);
  return t;
}

inline std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

inline int find_root(std::vector<int> &parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

/// Corners of a planar point set, counter-clockwise around `normal`; interior
/// and edge-collinear points are dropped.
inline std::vector<int> planar_corners(std::span<const Vec3> pts, const std::vector<int> &ids, const Vec3 &normal,
                                       double tol) {
  Vec3 seed = std::abs(normal.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 e1 = normalized(cross(normal, seed));
  const Vec3 e2 = cross(normal, e1);
  struct P2 {
    double u, v;
    int id;
  };
  std::vector<P2> q;
  q.reserve(ids.size());
  for (int id : ids) {
    const Vec3 &p = pts[static_cast<std::size_t>(id)];
    q.push_back({dot(p, e1), dot(p, e2), id});
  }
  std::sort(q.begin(), q.end(), [](const P2 &a, const P2 &b) {
    return a.u < b.u || (a.u == b.u && (a.v < b.v || (a.v == b.v && a.id < b.id)));
  });
  auto turn = [](const P2 &o, const P2 &a, const P2 &b) {
    return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
  };
  // strict monotone chain: collinear points never survive
  std::vector<P2> hull(2 * q.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], q[i]) <= tol)
      --k;
    hull[k++] = q[i];
  }
  for (std::size_t i = q.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && turn(hull[k - 2], hull[k - 1], q[i]) <= tol)
      --k;
    hull[k++] = q[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  std::vector<int> out;
  out.reserve(hull.size());
  for (const P2 &p : hull)
    out.push_back(p.id);
  return out;
}

} // namespace detail

/// Boundary complex of the convex hull of a configuration.
///
/// Incremental construction on a triangulated surface, then adjacent triangles
/// whose normals differ by less than `kFaceMergeAngle` are merged and each
/// merged face is reduced to its strict corners. Throws `DuplicatePoints` when
/// two inputs coincide within 1e-12 and `DegenerateHull` for coplanar input.
inline Polyhedron convex_hull(std::span<const Vec3> pts) {
  const std::size_t n = pts.size();
  if (n < 4)
    throw DegenerateHull("convex hull needs at least 4 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_finite(pts[i]))
      throw InvalidArgument("convex hull input is not finite");
    for (std::size_t j = 0; j < i; ++j)
      if (distance(pts[i], pts[j]) <= kCoincidenceTolerance)
        throw DuplicatePoints("points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }

  const Vec3 c0 = centroid(pts);
  double scale = 0.0;
  for (const Vec3 &p : pts)
    scale = std::max(scale, distance(p, c0));
  const double eps = 1e-10 * scale;
  const double degenerate = 1e-9 * scale;

  // initial simplex from extreme points
  auto idx = [](std::size_t i) { return static_cast<int>(i); };
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (distance(pts[i], c0) > distance(pts[i0], c0))
      i0 = i;
  std::size_t i1 = i0;
  for (std::size_t i = 0; i < n; ++i)
    if (distance(pts[i], pts[i0]) > distance(pts[i1], pts[i0]))
      i1 = i;
  const Vec3 axis = normalized(pts[i1] - pts[i0]);
  auto line_dist = [&](std::size_t i) { return norm(cross(pts[i] - pts[i0], axis)); };
  std::size_t i2 = i0;
  for (std::size_t i = 0; i < n; ++i)
    if (line_dist(i) > line_dist(i2))
      i2 = i;
  if (line_dist(i2) <= degenerate)
    throw DegenerateHull("points are collinear");
  const Vec3 pn = normalized(cross(pts[i1] - pts[i0], pts[i2] - pts[i0]));
  auto plane_dist = [&](std::size_t i) { return std::abs(dot(pts[i] - pts[i0], pn)); };
  std::size_t i3 = i0;
  for (std::size_t i = 0; i < n; ++i)
    if (plane_dist(i) > plane_dist(i3))
      i3 = i;
  if (plane_dist(i3) <= degenerate)
    throw DegenerateHull("points are coplanar");

  std::vector<detail::HullTriangle> tris;
  std::map<std::uint64_t, int> edge_face;
  auto add_face = [&](int a, int b, int c) {
    tris.push_back(detail::make_triangle(pts, a, b, c));
    const int f = static_cast<int>(tris.size()) - 1;
    edge_face[detail::edge_key(a, b)] = f;
    edge_face[detail::edge_key(b, c)] = f;
    edge_face[detail::edge_key(c, a)] = f;
  };
  {
    const Vec3 inner = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    const std::array<std::array<std::size_t, 3>, 4> simplex{{{i0, i1, i2}, {i0, i1, i3}, {i0, i2, i3}, {i1, i2, i3}}};
    for (auto f : simplex) {
      auto t = detail::make_triangle(pts, idx(f[0]), idx(f[1]), idx(f[2]));
      if (dot(t.normal, inner) - t.offset > 0.0)
        std::swap(f[1], f[2]);
      add_face(idx(f[0]), idx(f[1]), idx(f[2]));
    }
  }

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (i != i0 && i != i1 && i != i2 && i != i3)
      order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return distance(pts[a], c0) > distance(pts[b], c0); });

  std::vector<char> visible;
  for (std::size_t pi : order) {
    const Vec3 &p = pts[pi];
    int seed = -1;
    double best = eps;
    for (std::size_t f = 0; f < tris.size(); ++f) {
      if (!tris[f].alive)
        continue;
      const double d = dot(tris[f].normal, p) - tris[f].offset;
      if (d > best) {
        best = d;
        seed = static_cast<int>(f);
      }
    }
    if (seed < 0)
      continue;

    // connected visible region grown from the most visible face
    visible.assign(tris.size(), 0);
    std::vector<int> region;
    std::queue<int> bfs;
    bfs.push(seed);
    visible[static_cast<std::size_t>(seed)] = 1;
    while (!bfs.empty()) {
      const int f = bfs.front();
      bfs.pop();
      region.push_back(f);
      const auto &t = tris[static_cast<std::size_t>(f)];
      for (int k = 0; k < 3; ++k) {
        const int a = t.v[static_cast<std::size_t>(k)];
        const int b = t.v[static_cast<std::size_t>((k + 1) % 3)];
        const int g = edge_face.at(detail::edge_key(b, a));
        auto &tg = tris[static_cast<std::size_t>(g)];
        if (!visible[static_cast<std::size_t>(g)] && dot(tg.normal, p) - tg.offset > eps) {
          visible[static_cast<std::size_t>(g)] = 1;
          bfs.push(g);
        }
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int f : region) {
      const auto &t = tris[static_cast<std::size_t>(f)];
      for (int k = 0; k < 3; ++k) {
        const int a = t.v[static_cast<std::size_t>(k)];
        const int b = t.v[static_cast<std::size_t>((k + 1) % 3)];
        const int g = edge_face.at(detail::edge_key(b, a));
        if (!visible[static_cast<std::size_t>(g)])
          horizon.emplace_back(a, b);
      }
    }
    for (int f : region) {
      auto &t = tris[static_cast<std::size_t>(f)];
      t.alive = false;
      for (int k = 0; k < 3; ++k)
        edge_face.erase(detail::edge_key(t.v[static_cast<std::size_t>(k)], t.v[static_cast<std::size_t>((k + 1) % 3)]));
    }
    for (auto [a, b] : horizon)
      add_face(a, b, idx(pi));
  }

  // merge coplanar neighbours
  std::vector<int> alive;
  for (std::size_t f = 0; f < tris.size(); ++f)
    if (tris[f].alive)
      alive.push_back(static_cast<int>(f));
  std::vector<int> parent(tris.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (int f : alive) {
    const auto &t = tris[static_cast<std::size_t>(f)];
    for (int k = 0; k < 3; ++k) {
      const int a = t.v[static_cast<std::size_t>(k)];
      const int b = t.v[static_cast<std::size_t>((k + 1) % 3)];
      const int g = edge_face.at(detail::edge_key(b, a));
      const auto &tg = tris[static_cast<std::size_t>(g)];
      const double angle = std::atan2(norm(cross(t.normal, tg.normal)), dot(t.normal, tg.normal));
      if (angle < kFaceMergeAngle) {
        const int ra = detail::find_root(parent, f);
        const int rb = detail::find_root(parent, g);
        if (ra != rb)
          parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
      }
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int f : alive)
    groups[detail::find_root(parent, f)].push_back(f);

  std::vector<std::vector<int>> raw_faces;
  for (const auto &[root, members] : groups) {
    Vec3 nsum;
    std::set<int> ids;
    for (int f : members) {
      const auto &t = tris[static_cast<std::size_t>(f)];
      nsum += t.normal;
      ids.insert(t.v.begin(), t.v.end());
    }
    const Vec3 normal = normalized(nsum);
    if (members.size() == 1) {
      const auto &t = tris[static_cast<std::size_t>(members.front())];
      raw_faces.push_back({t.v.begin(), t.v.end()});
      continue;
    }
    raw_faces.push_back(
        detail::planar_corners(pts, std::vector<int>(ids.begin(), ids.end()), normal, 1e-12 * scale * scale));
  }

  // drop vertices that survived only inside merged faces, then reindex
  std::set<int> used;
  for (const auto &f : raw_faces)
    used.insert(f.begin(), f.end());

  Polyhedron poly;
  std::map<int, int> remap;
  for (int v : used) {
    remap[v] = static_cast<int>(poly.vertices.size());
    poly.vertices.push_back(pts[static_cast<std::size_t>(v)]);
    poly.source.push_back(static_cast<std::size_t>(v));
  }
  for (const auto &f : raw_faces) {
    std::vector<int> face;
    face.reserve(f.size());
    for (int v : f)
      face.push_back(remap.at(v));
    // rotate so the smallest index leads; keeps output independent of merge order
    std::rotate(face.begin(), std::min_element(face.begin(), face.end()), face.end());
    poly.faces.push_back(std::move(face));
  }
  std::sort(poly.faces.begin(), poly.faces.end());
  if (!is_closed_manifold(poly))
    throw DegenerateHull("hull is not a closed manifold (near-degenerate input)");
  return poly;
}

inline Polyhedron convex_hull(const Configuration &config) { return convex_hull(config.points()); }

/// Cyclic order of the faces around each vertex, following the outward orientation.
inline std::vector<std::vector<int>> faces_around_vertices(const Polyhedron &poly) {
  std::map<std::pair<int, int>, int> face_of;
  std::vector<int> any_face(poly.vertices.size(), -1);
  for (std::size_t f = 0; f < poly.faces.size(); ++f) {
    const auto &face = poly.faces[f];
    for (std::size_t k = 0; k < face.size(); ++k) {
      face_of[{face[k], face[(k + 1) % face.size()]}] = static_cast<int>(f);
      any_face[static_cast<std::size_t>(face[k])] = static_cast<int>(f);
    }
  }
  auto successor = [&](int f, int v) {
    const auto &face = poly.faces[static_cast<std::size_t>(f)];
    auto it = std::find(face.begin(), face.end(), v);
    return face[static_cast<std::size_t>((it - face.begin() + 1) % static_cast<long>(face.size()))];
  };
  std::vector<std::vector<int>> out(poly.vertices.size());
  for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
    const int start = any_face[v];
    if (start < 0)
      continue;
    int f = start;
    do {
      out[v].push_back(f);
      const int w = successor(f, static_cast<int>(v));
      f = face_of.at({w, static_cast<int>(v)});
    } while (f != start && out[v].size() <= poly.faces.size());
  }
  return out;
}

/// Dual polyhedron: one vertex per face (at the face centroid), one face per vertex.
inline Polyhedron dual(const Polyhedron &poly) {
  Polyhedron d;
  d.vertices.reserve(poly.faces.size());
  for (const auto &f : poly.faces) {
    Vec3 c;
    for (int v : f)
      c += poly.vertices[static_cast<std::size_t>(v)];
    d.vertices.push_back(c / static_cast<double>(f.size()));
  }
  const Vec3 center = centroid(poly.vertices);
  for (auto cycle : faces_around_vertices(poly)) {
    if (cycle.size() < 3)
      continue;
    Vec3 area;
    for (std::size_t k = 0; k < cycle.size(); ++k)
      area += cross(d.vertices[static_cast<std::size_t>(cycle[k])],
                    d.vertices[static_cast<std::size_t>(cycle[(k + 1) % cycle.size()])]);
    Vec3 fc;
    for (int f : cycle)
      fc += d.vertices[static_cast<std::size_t>(f)];
    if (dot(area, fc / static_cast<double>(cycle.size()) - center) < 0.0)
      std::reverse(cycle.begin(), cycle.end());
    d.faces.push_back(std::move(cycle));
  }
  return d;
}

/// Writes the OFF mesh: "OFF", "V F E", vertex lines, then "k i1 ... ik" face lines.
inline void write_off(std::ostream &os, const Polyhedron &poly) {
  os << "OFF\n" << poly.vertex_count() << ' ' << poly.face_count() << ' ' << poly.edge_count() << '\n';
  os << std::setprecision(17);
  for (const Vec3 &v : poly.vertices)
    os << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (const auto &f : poly.faces) {
    os << f.size();
    for (int v : f)
      os << ' ' << v;
    os << '\n';
  }
}

inline std::string to_off(const Polyhedron &poly) {
  std::ostringstream os;
  write_off(os, poly);
  return os.str();
}

inline Polyhedron read_off(std::istream &is) {
  std::string header;
  if (!(is >> header) || header != "OFF")
    throw InvalidArgument("OFF: missing header");
  std::size_t nv = 0, nf = 0, ne = 0;
  if (!(is >> nv >> nf >> ne))
    throw InvalidArgument("OFF: bad count line");
  Polyhedron poly;
  poly.vertices.resize(nv);
  for (auto &v : poly.vertices)
    if (!(is >> v.x >> v.y >> v.z))
      throw InvalidArgument("OFF: truncated vertex list");
  poly.faces.resize(nf);
  for (auto &f : poly.faces) {
    std::size_t k = 0;
    if (!(is >> k))
      throw InvalidArgument("OFF: truncated face list");
    f.resize(k);
    for (auto &v : f) {
      if (!(is >> v) || v < 0 || static_cast<std::size_t>(v) >= nv)
        throw InvalidArgument("OFF: bad vertex index");
    }
  }
  return poly;
}

inline Polyhedron from_off(const std::string &text) {
  std::istringstream is(text);
  return read_off(is);
}

} // namespace polyform
