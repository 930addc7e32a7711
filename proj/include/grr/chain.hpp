#pragma once

// Base and strong generating set with Schreier-vector transversals.
//
// build_chain runs deterministic Schreier-Sims; the base point of every new
// level is the first point moved by the element that created it.
// generates_group_of_order() first tries seeded random Schreier-Sims, whose
// partial chains only ever under-count the order, and finishes with the
// deterministic completion whenever the target is not reached, so its answer
// is exact either way.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "grr/error.hpp"
#include "grr/perm.hpp"

namespace grr {

class StabilizerChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> generators;  // fix all earlier base points
    std::vector<Permutation> inverses;
    std::vector<Point> orbit;             // BFS order, orbit[0] == base
    // edge[b]: -1 if b is outside the orbit, -2 for the base, otherwise the
    // index of the generator that carries b's tree parent onto b.
    std::vector<std::int32_t> edge;
    // Schreier generators already verified: orbit[pos] paired with
    // generators[0 .. checked[pos]).
    std::vector<std::size_t> checked;
  };

  StabilizerChain() = default;

  /// Empty chain (trivial group) of the given degree.
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  BigInt order() const {
    BigInt r = 1;
    for (const auto& l : levels_) r *= l.orbit.size();
    return r;
  }

  /// Union of the level generator sets, deduplicated, in level order.
  std::vector<Permutation> strong_generators() const {
    std::vector<Permutation> out;
    for (const auto& l : levels_) {
      for (const auto& g : l.generators) {
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
      }
    }
    return out;
  }

  /// Orbit of the base point at a level, in BFS order.
  const std::vector<Point>& fundamental_orbit(std::size_t level) const {
    return levels_.at(level).orbit;
  }

  /// Coset representative u with base^u == point.
  Permutation transversal(std::size_t level, Point point) const {
    const Level& l = levels_.at(level);
    if (l.edge.at(point) == -1) throw PreconditionError("point is not in the fundamental orbit");
    Permutation back(degree_);
    Point b = point;
    while (l.edge[b] != -2) {
      const auto s = static_cast<std::size_t>(l.edge[b]);
      back.then(l.inverses[s]);
      b = l.inverses[s](b);
    }
    // back maps point to base; we want the inverse.
    return back.inverse();
  }

  /// Strips g through the chain from `from_level`. Returns the residue and
  /// the level at which stripping stopped (levels().size() if it went through).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from_level = 0) const {
    for (std::size_t i = from_level; i < levels_.size(); ++i) {
      const Level& l = levels_[i];
      Point b = g(l.base);
      if (l.edge[b] == -1) return {std::move(g), i};
      while (l.edge[b] != -2) {
        const auto s = static_cast<std::size_t>(l.edge[b]);
        g.then(l.inverses[s]);
        b = l.inverses[s](b);
      }
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) {
      throw PreconditionError("degree mismatch: chain has degree " + std::to_string(degree_) +
                              ", element has " + std::to_string(g.degree()));
    }
    return sift(g).first.is_identity();
  }

  /// Seeds level 0 with the given generators (identity entries ignored).
  void seed(const std::vector<Permutation>& generators) {
    for (const auto& g : generators) {
      if (g.degree() != degree_) throw PreconditionError("generator degree mismatch");
    }
    std::vector<Permutation> moving;
    for (const auto& g : generators) {
      if (!g.is_identity()) moving.push_back(g);
    }
    if (moving.empty()) return;
    std::size_t first = degree_;
    for (const auto& g : moving) first = std::min(first, g.first_moved());
    if (levels_.empty()) push_level(static_cast<Point>(first));
    for (const auto& g : moving) add_generator(0, g);
  }

  /// Deterministic Schreier-Sims completion: afterwards every Schreier
  /// generator of every level sifts to the identity.
  void complete() {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      const auto lvl = static_cast<std::size_t>(i);
      bool restarted = false;
      for (std::size_t pos = 0; pos < levels_[lvl].orbit.size() && !restarted; ++pos) {
        while (levels_[lvl].checked[pos] < levels_[lvl].generators.size()) {
          const std::size_t s = levels_[lvl].checked[pos]++;
          const Level& l = levels_[lvl];
          const Point beta = l.orbit[pos];
          // u_beta * s * u_{beta^s}^-1, stripped from the next level down.
          Permutation g = transversal(lvl, beta);
          g.then(l.generators[s]);
          Point b = g(l.base);
          while (l.edge[b] != -2) {
            const auto e = static_cast<std::size_t>(l.edge[b]);
            g.then(l.inverses[e]);
            b = l.inverses[e](b);
          }
          if (g.is_identity()) continue;
          auto [h, stop] = sift(std::move(g), lvl + 1);
          if (h.is_identity()) continue;
          if (stop == levels_.size()) push_level(static_cast<Point>(h.first_moved()));
          for (std::size_t j = lvl + 1; j <= stop; ++j) add_generator(j, h);
          i = static_cast<std::ptrdiff_t>(stop);
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }
  }

  /// Sifts one element; a nontrivial residue becomes a new strong generator.
  /// Returns true if the chain grew.
  bool absorb(const Permutation& g) {
    auto [h, stop] = sift(g);
    if (h.is_identity()) return false;
    if (stop == levels_.size()) push_level(static_cast<Point>(h.first_moved()));
    // Level 0 already generates the whole group; a residue stopping deeper
    // only enlarges the stabilizers.
    for (std::size_t j = (stop == 0 ? 0 : 1); j <= stop; ++j) add_generator(j, h);
    return true;
  }

 private:
  void push_level(Point base) {
    Level l;
    l.base = base;
    l.edge.assign(degree_, -1);
    l.edge[base] = -2;
    l.orbit.push_back(base);
    l.checked.push_back(0);
    levels_.push_back(std::move(l));
  }

  void add_generator(std::size_t level, const Permutation& g) {
    Level& l = levels_[level];
    const std::size_t first_new = l.generators.size();
    l.generators.push_back(g);
    l.inverses.push_back(g.inverse());
    const std::size_t old_size = l.orbit.size();
    for (std::size_t idx = 0; idx < l.orbit.size(); ++idx) {
      const std::size_t start = idx < old_size ? first_new : 0;
      for (std::size_t s = start; s < l.generators.size(); ++s) {
        const Point img = l.generators[s](l.orbit[idx]);
        if (l.edge[img] == -1) {
          l.edge[img] = static_cast<std::int32_t>(s);
          l.orbit.push_back(img);
          l.checked.push_back(0);
        }
      }
    }
  }

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
};

/// Deterministic Schreier-Sims. Generators must share one degree.
inline StabilizerChain build_chain(const std::vector<Permutation>& generators,
                                   std::size_t degree_cap = kDefaultDegreeCap) {
  if (generators.empty()) throw PreconditionError("build_chain needs at least one generator");
  const std::size_t n = generators.front().degree();
  if (n > degree_cap) {
    throw LimitExceeded("degree " + std::to_string(n) + " exceeds cap " +
                        std::to_string(degree_cap));
  }
  StabilizerChain chain(n);
  chain.seed(generators);
  chain.complete();
  return chain;
}

inline bool contains(const StabilizerChain& chain, const Permutation& g) {
  return chain.contains(g);
}

/// Chain for <generators> built toward a known order. Seeded random sifting
/// stops as soon as the order reaches `target`, which certifies completeness
/// since a partial chain only under-counts; it also stops once the order
/// exceeds `target`. If sifting goes quiet first, the chain is completed
/// deterministically. The caller compares the returned order with the target.
inline StabilizerChain build_chain_toward(const std::vector<Permutation>& generators, const BigInt& target,
                                          std::uint64_t seed = 0x9e3779b97f4a7c15ull,
                                          std::size_t degree_cap = kDefaultDegreeCap) {
  if (generators.empty()) throw PreconditionError("no generators");
  const std::size_t n = generators.front().degree();
  if (n > degree_cap) {
    throw LimitExceeded("degree " + std::to_string(n) + " exceeds the cap of " + std::to_string(degree_cap));
  }
  StabilizerChain chain(n);
  chain.seed(generators);
  if (chain.order() >= target) return chain;

  // Product replacement over a padded copy of the generators.
  std::vector<Permutation> pool = generators;
  while (pool.size() < 10) pool.push_back(generators[pool.size() % generators.size()]);
  Permutation accumulator(n);
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
  auto step = [&] {
    std::size_t a = pick(pool.size());
    std::size_t b = pick(pool.size() - 1);
    if (b >= a) ++b;
    if (rng() & 1u) {
      pool[a].then(pool[b]);
    } else {
      pool[a].then(pool[b].inverse());
    }
    accumulator.then(pool[a]);
    return accumulator;
  };
  for (int i = 0; i < 50; ++i) step();

  int quiet = 0;
  while (quiet < 40) {
    if (chain.absorb(step())) {
      quiet = 0;
      if (chain.order() >= target) return chain;
    } else {
      ++quiet;
    }
  }
  chain.complete();
  return chain;
}

/// Exact test of |<generators>| == target for a target known to bound the
/// order from above (e.g. the generators lie in a group of that order).
/// Random sifting is seeded, so the result and the cost are reproducible.
inline bool generates_group_of_order(const std::vector<Permutation>& generators,
                                     const BigInt& target, std::uint64_t seed = 0x9e3779b97f4a7c15ull) {
  const std::size_t n = generators.empty() ? 0 : generators.front().degree();
  return build_chain_toward(generators, target, seed, std::max(n, kDefaultDegreeCap)).order() == target;
}

}  // namespace grr
