#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "polyform/hull.hpp"

namespace polyform {

/// Relabeling-invariant canonical code of a polyhedron's face lattice.
///
/// Two polyhedra have equal signatures exactly when their embedded edge graphs
/// are isomorphic, orientation-preserving or reversing (mirror images compare
/// equal).
struct CombinatorialSignature {
  std::string code;

  /// 64-bit FNV-1a of the code, as 16 hex digits; for display and CSV columns.
  std::string digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : code) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  friend bool operator==(const CombinatorialSignature &, const CombinatorialSignature &) = default;
  friend auto operator<=>(const CombinatorialSignature &, const CombinatorialSignature &) = default;
};

namespace detail {

/// Neighbours of every vertex in rotation order around the outward normal.
inline std::vector<std::vector<int>> rotation_system(const Polyhedron &poly) {
  std::map<std::pair<int, int>, int> face_of;
  for (std::size_t f = 0; f < poly.faces.size(); ++f) {
    const auto &face = poly.faces[f];
    for (std::size_t k = 0; k < face.size(); ++k)
      face_of[{face[k], face[(k + 1) % face.size()]}] = static_cast<int>(f);
  }
  auto successor = [&](int f, int v) {
    const auto &face = poly.faces[static_cast<std::size_t>(f)];
    auto it = std::find(face.begin(), face.end(), v);
    return face[static_cast<std::size_t>((it - face.begin() + 1) % static_cast<long>(face.size()))];
  };
  std::vector<std::vector<int>> rot(poly.vertices.size());
  for (const auto &[edge, f] : face_of) {
    const int v = edge.first;
    if (!rot[static_cast<std::size_t>(v)].empty())
      continue;
    int w = edge.second;
    const int first = w;
    do {
      rot[static_cast<std::size_t>(v)].push_back(w);
      w = successor(face_of.at({w, v}), v);
    } while (w != first && rot[static_cast<std::size_t>(v)].size() <= poly.vertices.size());
  }
  return rot;
}

/// Isomorphism-invariant vertex colours by iterated degree/face-size refinement.
inline std::vector<int> refined_colors(const Polyhedron &poly, const std::vector<std::vector<int>> &rot) {
  const std::size_t n = poly.vertices.size();
  std::vector<std::vector<int>> incident_sizes(n);
  for (const auto &f : poly.faces)
    for (int v : f)
      incident_sizes[static_cast<std::size_t>(v)].push_back(static_cast<int>(f.size()));
  std::vector<std::vector<int>> keys(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto sizes = incident_sizes[v];
    std::sort(sizes.begin(), sizes.end());
    keys[v] = {static_cast<int>(rot[v].size())};
    keys[v].insert(keys[v].end(), sizes.begin(), sizes.end());
  }
  auto compress = [&](const std::vector<std::vector<int>> &k) {
    std::vector<std::vector<int>> sorted = k;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> color(n);
    for (std::size_t v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), k[v]) - sorted.begin());
    return std::make_pair(color, sorted.size());
  };
  auto [color, classes] = compress(keys);
  for (std::size_t round = 0; round < n; ++round) {
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<int> nb;
      for (int w : rot[v])
        nb.push_back(color[static_cast<std::size_t>(w)]);
      std::sort(nb.begin(), nb.end());
      keys[v] = {color[v]};
      keys[v].insert(keys[v].end(), nb.begin(), nb.end());
    }
    auto [next, next_classes] = compress(keys);
    color = std::move(next);
    if (next_classes == classes)
      break;
    classes = next_classes;
  }
  return color;
}

/// BFS code for a fixed starting dart and orientation; aborts (returns false)
/// as soon as the code exceeds `best`.
inline bool embedded_bfs_code(const std::vector<std::vector<int>> &rot, int v0, int w0, bool reverse,
                              const std::vector<int> &best, std::vector<int> &code) {
  const std::size_t n = rot.size();
  std::vector<int> label(n, 0);
  std::vector<int> entry(n, -1);
  std::vector<int> queue;
  queue.reserve(n);
  code.clear();
  int next = 1;
  label[static_cast<std::size_t>(v0)] = next++;
  entry[static_cast<std::size_t>(v0)] = w0;
  queue.push_back(v0);
  bool tied = !best.empty();
  auto emit = [&](int x) {
    code.push_back(x);
    if (tied) {
      const int b = best[code.size() - 1];
      if (x > b)
        return false;
      if (x < b)
        tied = false;
    }
    return true;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    const auto &nb = rot[static_cast<std::size_t>(v)];
    const auto deg = static_cast<long>(nb.size());
    const long start = std::find(nb.begin(), nb.end(), entry[static_cast<std::size_t>(v)]) - nb.begin();
    for (long k = 0; k < deg; ++k) {
      const long pos = reverse ? (start - k + deg) % deg : (start + k) % deg;
      const int w = nb[static_cast<std::size_t>(pos)];
      if (label[static_cast<std::size_t>(w)] == 0) {
        label[static_cast<std::size_t>(w)] = next++;
        entry[static_cast<std::size_t>(w)] = v;
        queue.push_back(w);
      }
      if (!emit(label[static_cast<std::size_t>(w)]))
        return false;
    }
    if (!emit(0))
      return false;
  }
  return true;
}

} // namespace detail

/// Canonical form of the face lattice: header (V, F, E, face-size and degree
/// multisets) followed by the lexicographically least embedded BFS code over
/// every starting dart of minimal refined colour and both orientations.
inline CombinatorialSignature combinatorial_signature(const Polyhedron &poly) {
  const auto rot = detail::rotation_system(poly);
  const auto color = detail::refined_colors(poly, rot);
  std::vector<int> header{static_cast<int>(poly.vertex_count()), static_cast<int>(poly.face_count()),
                          static_cast<int>(poly.edge_count())};
  std::vector<int> sizes;
  for (const auto &f : poly.faces)
    sizes.push_back(static_cast<int>(f.size()));
  std::sort(sizes.begin(), sizes.end());
  header.insert(header.end(), sizes.begin(), sizes.end());
  header.push_back(-1);
  std::vector<int> degrees;
  for (const auto &r : rot)
    degrees.push_back(static_cast<int>(r.size()));
  std::sort(degrees.begin(), degrees.end());
  header.insert(header.end(), degrees.begin(), degrees.end());
  header.push_back(-1);

  std::vector<int> best, code;
  if (!poly.vertices.empty()) {
    const int min_color = *std::min_element(color.begin(), color.end());
    for (std::size_t v = 0; v < rot.size(); ++v) {
      if (color[v] != min_color)
        continue;
      for (int w : rot[v]) {
        // refine the start further: neighbour colour must be minimal among v's neighbours
        int least = color[static_cast<std::size_t>(rot[v].front())];
        for (int u : rot[v])
          least = std::min(least, color[static_cast<std::size_t>(u)]);
        if (color[static_cast<std::size_t>(w)] != least)
          continue;
        for (bool reverse : {false, true})
          if (detail::embedded_bfs_code(rot, static_cast<int>(v), w, reverse, best, code))
            if (best.empty() || code < best)
              best = code;
      }
    }
  }
  CombinatorialSignature sig;
  auto put = [&](int x) {
    const auto u = static_cast<std::uint32_t>(x + 1);
    sig.code.push_back(static_cast<char>(u & 0xff));
    sig.code.push_back(static_cast<char>((u >> 8) & 0xff));
  };
  for (int x : header)
    put(x);
  for (int x : best)
    put(x);
  return sig;
}

} // namespace polyform
