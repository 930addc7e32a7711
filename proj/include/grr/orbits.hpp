#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "grr/error.hpp"
#include "grr/perm.hpp"

namespace grr {

/// Orbit of `point` under <generators>, sorted ascending.
inline std::vector<Point> orbit(const std::vector<Permutation>& generators, Point point,
                               std::size_t degree) {
  if (point >= degree) throw PreconditionError("point outside the permutation domain");
  std::vector<bool> seen(degree, false);
  std::vector<Point> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : generators) {
      Point q = g(out[i]);
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Point> orbit(const std::vector<Permutation>& generators, Point point) {
  if (generators.empty()) throw PreconditionError("orbit needs at least one generator");
  return orbit(generators, point, generators.front().degree());
}

/// Orbit id per point (ids numbered by smallest member).
inline std::vector<std::size_t> orbit_ids(const std::vector<Permutation>& generators,
                                          std::size_t degree) {
  std::vector<std::size_t> id(degree, degree);
  std::size_t next = 0;
  std::vector<Point> queue;
  for (std::size_t start = 0; start < degree; ++start) {
    if (id[start] != degree) continue;
    queue.assign(1, static_cast<Point>(start));
    id[start] = next;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& g : generators) {
        Point q = g(queue[i]);
        if (id[q] == degree) {
          id[q] = next;
          queue.push_back(q);
        }
      }
    }
    ++next;
  }
  return id;
}

inline bool is_transitive(const std::vector<Permutation>& generators, std::size_t degree) {
  if (degree == 0) return true;
  return orbit(generators, 0, degree).size() == degree;
}

struct PrimitivityResult {
  bool primitive = true;
  /// Nontrivial block system (sorted blocks of sorted points) when imprimitive.
  std::vector<std::vector<Point>> blocks;
};

namespace detail {

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Point{0}); }
  Point find(Point a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace detail

/// Finest block system in which 0 and beta share a block (Atkinson).
inline std::vector<std::vector<Point>> minimal_block_system(
    const std::vector<Permutation>& generators, std::size_t degree, Point beta) {
  detail::UnionFind uf(degree);
  std::vector<std::pair<Point, Point>> queue{{0, beta}};
  uf.unite(0, beta);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [a, b] = queue[i];
    for (const auto& g : generators) {
      Point ga = g(a), gb = g(b);
      if (uf.unite(ga, gb)) queue.emplace_back(ga, gb);
    }
  }
  std::vector<std::vector<Point>> blocks;
  std::vector<std::size_t> slot(degree, degree);
  for (std::size_t p = 0; p < degree; ++p) {
    Point r = uf.find(static_cast<Point>(p));
    if (slot[r] == degree) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(static_cast<Point>(p));
  }
  return blocks;
}

/// Primitivity of a transitive group; throws PreconditionError if intransitive.
inline PrimitivityResult is_primitive(const std::vector<Permutation>& generators) {
  if (generators.empty()) throw PreconditionError("is_primitive needs generators");
  const std::size_t n = generators.front().degree();
  if (!is_transitive(generators, n)) throw PreconditionError("group is not transitive");
  PrimitivityResult r;
  for (Point beta = 1; beta < n; ++beta) {
    auto blocks = minimal_block_system(generators, n, beta);
    if (blocks.size() > 1) {
      r.primitive = false;
      r.blocks = std::move(blocks);
      return r;
    }
  }
  return r;
}

}  // namespace grr
