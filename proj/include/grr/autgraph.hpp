#pragma once

// Full automorphism groups of simple graphs by individualization and
// equitable refinement.
//
// The search follows a first path of the tree down to a discrete leaf. Level
// by level, deepest first, every vertex w of the level's target cell that is
// not yet in the orbit of the first-path vertex gets its own subtree searched
// for a leaf equivalent to the first leaf. Generators found at level d fix the
// first d path vertices, so |Aut| is the product over levels of the orbit of
// the first-path vertex under everything found so far. Leaves are always
// verified edge by edge; node invariants only prune.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "grr/cayley.hpp"
#include "grr/chain.hpp"
#include "grr/error.hpp"
#include "grr/graph.hpp"
#include "grr/grouptab.hpp"
#include "grr/orbits.hpp"
#include "grr/perm.hpp"

namespace grr {

/// Ordered vertex coloring; cells[c] holds the vertices of color c.
struct Coloring {
  std::vector<std::size_t> color_of;
  std::vector<std::vector<Vertex>> cells;

  static Coloring unit(std::size_t n) {
    Coloring c;
    c.color_of.assign(n, 0);
    if (n > 0) {
      c.cells.emplace_back(n);
      for (std::size_t v = 0; v < n; ++v) c.cells[0][v] = static_cast<Vertex>(v);
    }
    return c;
  }

  /// Colors are ranked by value; the resulting ids are contiguous.
  static Coloring from_colors(const std::vector<std::size_t>& colors) {
    std::vector<std::size_t> values = colors;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    Coloring c;
    c.color_of.resize(colors.size());
    c.cells.resize(values.size());
    for (std::size_t v = 0; v < colors.size(); ++v) {
      const auto id = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), colors[v]) -
                                               values.begin());
      c.color_of[v] = id;
      c.cells[id].push_back(static_cast<Vertex>(v));
    }
    return c;
  }

  std::size_t cell_count() const { return cells.size(); }
  bool is_discrete() const { return cells.size() == color_of.size(); }
};

struct AutGroup {
  std::vector<Permutation> generators;
  StabilizerChain chain;
  BigInt order = 1;
};

struct AutSearchConfig {
  std::size_t vertex_limit = 10'000;
  std::uint64_t node_budget = 100'000'000;
};

/// True iff `map` (vertex -> vertex) is a bijection preserving adjacency.
inline bool is_automorphism(const Graph& g, std::span<const Point> map) {
  const std::size_t n = g.vertex_count();
  if (map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Point p : map) {
    if (p >= n || hit[p]) return false;
    hit[p] = true;
  }
  for (Vertex v = 0; v < n; ++v) {
    const Vertex gv = map[v];
    if (g.degree(v) != g.degree(gv)) return false;
    for (Vertex u : g.neighbors(v)) {
      if (!g.has_edge(gv, map[u])) return false;
    }
  }
  return true;
}

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 29;
  return h;
}

// Ordered partition: cells are contiguous ranges of `lab`, named by their
// start position, which makes the naming equivariant under relabelling.
struct Partition {
  std::vector<Vertex> lab;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> cell;  // start of the cell holding each vertex
  std::vector<std::uint32_t> len;   // meaningful at cell starts only
  std::size_t cell_count = 0;

  std::size_t size() const { return lab.size(); }
  bool discrete() const { return cell_count == lab.size(); }

  static Partition from_coloring(const Coloring& c) {
    Partition p;
    const std::size_t n = c.color_of.size();
    p.lab.reserve(n);
    p.pos.resize(n);
    p.cell.resize(n);
    p.len.assign(n, 0);
    for (const auto& cellv : c.cells) {
      if (cellv.empty()) continue;
      const auto start = static_cast<std::uint32_t>(p.lab.size());
      std::vector<Vertex> sorted = cellv;
      std::sort(sorted.begin(), sorted.end());
      for (Vertex v : sorted) {
        p.pos[v] = static_cast<std::uint32_t>(p.lab.size());
        p.cell[v] = start;
        p.lab.push_back(v);
      }
      p.len[start] = static_cast<std::uint32_t>(sorted.size());
      ++p.cell_count;
    }
    return p;
  }

  std::vector<std::uint32_t> cell_starts() const {
    std::vector<std::uint32_t> s;
    for (std::uint32_t i = 0; i < lab.size(); i += len[i]) s.push_back(i);
    return s;
  }

  /// First non-singleton cell of minimum size.
  std::uint32_t target_cell() const {
    std::uint32_t best = static_cast<std::uint32_t>(lab.size());
    std::uint32_t best_len = 0;
    for (std::uint32_t i = 0; i < lab.size(); i += len[i]) {
      if (len[i] > 1 && (best_len == 0 || len[i] < best_len)) {
        best = i;
        best_len = len[i];
      }
    }
    return best;
  }

  Coloring to_coloring() const {
    Coloring c;
    c.color_of.resize(lab.size());
    for (std::uint32_t i = 0; i < lab.size(); i += len[i]) {
      c.cells.emplace_back(lab.begin() + i, lab.begin() + i + len[i]);
      std::sort(c.cells.back().begin(), c.cells.back().end());
      for (Vertex v : c.cells.back()) c.color_of[v] = c.cells.size() - 1;
    }
    return c;
  }
};

class Refiner {
 public:
  explicit Refiner(const Graph& g)
      : g_(g), count_(g.vertex_count(), 0), hits_(g.vertex_count(), 0), queued_(g.vertex_count(), 0) {}

  /// Refines p to the coarsest equitable partition below it, using the given
  /// cells as initial splitters. Returns a hash of the splitting history.
  std::uint64_t refine(Partition& p, const std::vector<std::uint32_t>& splitters) {
    std::uint64_t h = mix(0x243f6a8885a308d3ull, p.cell_count);
    std::deque<std::uint32_t> queue;
    for (auto s : splitters) {
      if (!queued_[s]) {
        queued_[s] = 1;
        queue.push_back(s);
      }
    }
    std::vector<Vertex> splitter;
    std::vector<std::uint32_t> touched_cells;
    std::vector<Vertex> scratch;
    while (!queue.empty()) {
      const std::uint32_t w = queue.front();
      queue.pop_front();
      queued_[w] = 0;
      if (p.discrete()) continue;
      splitter.assign(p.lab.begin() + w, p.lab.begin() + w + p.len[w]);
      touched_.clear();
      touched_cells.clear();
      for (Vertex x : splitter) {
        for (Vertex u : g_.neighbors(x)) {
          if (count_[u]++ == 0) {
            touched_.push_back(u);
            if (hits_[p.cell[u]]++ == 0) touched_cells.push_back(p.cell[u]);
          }
        }
      }
      std::sort(touched_cells.begin(), touched_cells.end());
      h = mix(h, w);
      for (std::uint32_t c : touched_cells) {
        const std::uint32_t l = p.len[c];
        const std::uint32_t hit = hits_[c];
        hits_[c] = 0;
        if (l == 1) continue;
        bool uniform = hit == l;
        if (uniform) {
          const std::uint32_t first = count_[p.lab[c]];
          for (std::uint32_t i = c + 1; i < c + l && uniform; ++i) uniform = count_[p.lab[i]] == first;
        }
        if (uniform) continue;
        scratch.assign(p.lab.begin() + c, p.lab.begin() + c + l);
        std::sort(scratch.begin(), scratch.end(), [&](Vertex a, Vertex b) {
          return count_[a] != count_[b] ? count_[a] < count_[b] : a < b;
        });
        // Fragment boundaries.
        std::vector<std::uint32_t> starts;
        for (std::uint32_t i = 0; i < l; ++i) {
          if (i == 0 || count_[scratch[i]] != count_[scratch[i - 1]]) starts.push_back(c + i);
        }
        starts.push_back(c + l);
        const bool was_queued = queued_[c] != 0;
        std::uint32_t largest = 0;
        h = mix(h, c);
        h = mix(h, starts.size() - 1);
        for (std::size_t f = 0; f + 1 < starts.size(); ++f) {
          const std::uint32_t fs = starts[f], fl = starts[f + 1] - starts[f];
          p.len[fs] = fl;
          for (std::uint32_t i = fs; i < fs + fl; ++i) {
            const Vertex v = scratch[i - c];
            p.lab[i] = v;
            p.pos[v] = i;
            p.cell[v] = fs;
          }
          h = mix(h, (static_cast<std::uint64_t>(count_[scratch[fs - c]]) << 32) | fl);
          if (fl > p.len[starts[largest]]) largest = static_cast<std::uint32_t>(f);
        }
        p.cell_count += starts.size() - 2;
        for (std::size_t f = 0; f + 1 < starts.size(); ++f) {
          const std::uint32_t fs = starts[f];
          if (was_queued ? f == 0 : f == largest) continue;
          if (!queued_[fs]) {
            queued_[fs] = 1;
            queue.push_back(fs);
          }
        }
      }
      for (Vertex u : touched_) count_[u] = 0;
    }
    return mix(h, p.cell_count);
  }

  /// Splits v off the front of its cell and refines. Returns the node hash.
  std::uint64_t individualize(Partition& p, Vertex v) {
    const std::uint32_t c = p.cell[v];
    const std::uint32_t l = p.len[c];
    const std::uint32_t at = p.pos[v];
    const Vertex front = p.lab[c];
    p.lab[c] = v;
    p.pos[v] = c;
    p.lab[at] = front;
    p.pos[front] = at;
    p.len[c] = 1;
    p.len[c + 1] = l - 1;
    for (std::uint32_t i = c + 1; i < c + l; ++i) p.cell[p.lab[i]] = c + 1;
    ++p.cell_count;
    return mix(refine(p, {c}), c);
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> hits_;
  std::vector<char> queued_;
  std::vector<Vertex> touched_;
};

}  // namespace detail

/// Coarsest equitable refinement; cells split by neighbor-count signature,
/// fragments ordered by ascending count.
inline Coloring refine_equitable(const Graph& g, const Coloring& coloring) {
  if (coloring.color_of.size() != g.vertex_count()) throw PreconditionError("coloring size mismatch");
  auto p = detail::Partition::from_coloring(coloring);
  detail::Refiner r(g);
  r.refine(p, p.cell_starts());
  return p.to_coloring();
}

inline bool is_equitable(const Graph& g, const Coloring& c) {
  for (const auto& cell : c.cells) {
    std::vector<std::size_t> ref;
    for (std::size_t idx = 0; idx < cell.size(); ++idx) {
      std::vector<std::size_t> counts(c.cells.size(), 0);
      for (Vertex u : g.neighbors(cell[idx])) ++counts[c.color_of[u]];
      if (idx == 0) {
        ref = counts;
      } else if (counts != ref) {
        return false;
      }
    }
  }
  return true;
}

namespace detail {

class AutSearch {
 public:
  AutSearch(const Graph& g, const AutSearchConfig& cfg) : g_(g), cfg_(cfg), refiner_(g), uf_(g.vertex_count()) {}

  AutGroup run(const Coloring& initial) {
    const std::size_t n = g_.vertex_count();
    AutGroup out;
    if (n == 0) return out;
    Partition root = Partition::from_coloring(initial);
    const std::uint64_t root_hash = refiner_.refine(root, root.cell_starts());
    path_.push_back(Node{std::move(root), root_hash, 0, 0});
    while (!path_.back().p.discrete()) {
      Node& cur = path_.back();
      cur.target = cur.p.target_cell();
      cur.vertex = cur.p.lab[cur.target];
      Partition child = cur.p;
      const std::uint64_t h = refiner_.individualize(child, cur.vertex);
      charge();
      path_.push_back(Node{std::move(child), h, 0, 0});
    }
    first_leaf_ = path_.back().p.lab;

    BigInt order = 1;
    for (std::size_t d = path_.size() - 1; d-- > 0;) {
      const Node& node = path_[d];
      const Vertex v = node.vertex;
      std::vector<Vertex> cell(node.p.lab.begin() + node.target,
                               node.p.lab.begin() + node.target + node.p.len[node.target]);
      std::sort(cell.begin(), cell.end());
      std::vector<Vertex> failed;
      for (Vertex w : cell) {
        if (uf_.find(w) == uf_.find(v)) continue;
        bool known_bad = false;
        for (Vertex f : failed) {
          if (uf_.find(f) == uf_.find(w)) {
            known_bad = true;
            break;
          }
        }
        if (known_bad) continue;
        Partition child = node.p;
        const std::uint64_t h = refiner_.individualize(child, w);
        charge();
        std::optional<std::vector<Point>> found;
        if (matches(child, h, d + 1)) found = descend(child, d + 1);
        if (found) {
          add_generator(Permutation(std::move(*found)));
        } else {
          failed.push_back(w);
        }
      }
      std::size_t orbit_size = 0;
      const Vertex root_v = uf_.find(v);
      for (Vertex u = 0; u < n; ++u) {
        if (uf_.find(u) == root_v) ++orbit_size;
      }
      order *= orbit_size;
    }
    out.generators = generators_;
    out.order = order;
    return out;
  }

 private:
  struct Node {
    Partition p;
    std::uint64_t hash;
    std::uint32_t target;
    Vertex vertex;
  };

  void charge() {
    if (++nodes_ > cfg_.node_budget) {
      throw LimitExceeded("automorphism search exceeded its node budget of " +
                          std::to_string(cfg_.node_budget));
    }
  }

  bool matches(const Partition& p, std::uint64_t h, std::size_t depth) const {
    return depth < path_.size() && h == path_[depth].hash && p.cell_count == path_[depth].p.cell_count;
  }

  std::optional<std::vector<Point>> descend(const Partition& p, std::size_t depth) {
    if (p.discrete()) {
      std::vector<Point> map(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) map[first_leaf_[i]] = p.lab[i];
      if (is_automorphism(g_, map)) return map;
      return std::nullopt;
    }
    const std::uint32_t t = p.target_cell();
    if (t != path_[depth].target || p.len[t] != path_[depth].p.len[t]) return std::nullopt;
    std::vector<Vertex> cell(p.lab.begin() + t, p.lab.begin() + t + p.len[t]);
    std::sort(cell.begin(), cell.end());
    for (Vertex u : cell) {
      Partition child = p;
      const std::uint64_t h = refiner_.individualize(child, u);
      charge();
      if (!matches(child, h, depth + 1)) continue;
      if (auto r = descend(child, depth + 1)) return r;
    }
    return std::nullopt;
  }

  void add_generator(Permutation gen) {
    for (Vertex u = 0; u < g_.vertex_count(); ++u) uf_.unite(u, gen(u));
    generators_.push_back(std::move(gen));
  }

  const Graph& g_;
  AutSearchConfig cfg_;
  Refiner refiner_;
  UnionFind uf_;
  std::vector<Node> path_;
  std::vector<Vertex> first_leaf_;
  std::vector<Permutation> generators_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Automorphisms preserving `initial` (the unit coloring when absent).
/// The returned chain is rebuilt from the generators by Schreier-Sims, aimed at
/// the search's orbit product; the two orders must agree.
inline AutGroup automorphism_group(const Graph& g, const std::optional<Coloring>& initial = std::nullopt,
                                   const AutSearchConfig& cfg = {}) {
  const std::size_t n = g.vertex_count();
  if (n > cfg.vertex_limit) {
    throw LimitExceeded("graph has " + std::to_string(n) + " vertices, limit is " +
                        std::to_string(cfg.vertex_limit));
  }
  const Coloring start = initial ? *initial : Coloring::unit(n);
  if (start.color_of.size() != n) throw PreconditionError("initial coloring size mismatch");
  detail::AutSearch search(g, cfg);
  AutGroup a = search.run(start);
  a.chain = StabilizerChain(n);
  if (!a.generators.empty()) {
    a.chain = build_chain_toward(a.generators, a.order, 0x9e3779b97f4a7c15ull, std::max(n, kDefaultDegreeCap));
  }
  if (a.chain.order() != a.order) {
    throw InconsistencyError("automorphism search order " + a.order.str() +
                             " disagrees with Schreier-Sims order " + a.chain.order().str());
  }
  return a;
}

/// |A_v| = |A| / |v^A|.
inline BigInt vertex_stabilizer_order(const AutGroup& aut, Vertex v) {
  const std::size_t n = aut.chain.degree();
  if (v >= n && n > 0) throw PreconditionError("vertex out of range");
  if (aut.generators.empty()) return aut.order;
  return aut.order / orbit(aut.generators, v, n).size();
}

/// True iff every generator maps blocks onto blocks.
inline bool is_partition_invariant(const AutGroup& aut, const CosetPartition& partition) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  for (const auto& g : aut.generators) {
    if (g.degree() != partition.block_of.size()) throw PreconditionError("partition size mismatch");
    std::vector<std::size_t> block_image(partition.block_count(), kUnset);
    for (std::size_t v = 0; v < g.degree(); ++v) {
      const std::size_t from = partition.block_of[v];
      const std::size_t to = partition.block_of[g(static_cast<Point>(v))];
      if (block_image[from] == kUnset) {
        block_image[from] = to;
      } else if (block_image[from] != to) {
        return false;
      }
    }
  }
  return true;
}

/// Permutations induced on the blocks of an invariant partition.
inline std::vector<Permutation> induced_block_action(const AutGroup& aut, const CosetPartition& partition) {
  if (!is_partition_invariant(aut, partition)) throw PreconditionError("partition is not invariant");
  std::vector<Permutation> out;
  for (const auto& g : aut.generators) {
    std::vector<Point> img(partition.block_count());
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
      img[b] = static_cast<Point>(partition.block_of[g(static_cast<Point>(partition.blocks[b].front()))]);
    }
    out.emplace_back(std::move(img));
  }
  return out;
}

/// |N_A(G)| for the right regular copy of G inside A = Aut(Cay(G,S)).
///
/// Since G is regular, N_A(G) = G (N_A(G) ∩ A_1), so it suffices to run
/// through the stabilizer A_1 of the identity vertex (read off the chain) and
/// count the elements that conjugate each right-translation generator back
/// into G.
inline BigInt normalizer_order_of_regular_subgroup(const AutGroup& aut, const GroupTable& table,
                                                   std::size_t guard = 64) {
  const std::size_t n = table.order();
  if (aut.chain.degree() != n) throw PreconditionError("automorphism group and table differ in size");
  if (aut.order / n > guard || aut.order % n != 0) {
    throw LimitExceeded("|A|/|G| exceeds the enumeration guard of " + std::to_string(guard));
  }
  std::vector<Permutation> translations;
  for (std::size_t s : table.generator_indices()) {
    std::vector<Point> map = right_translation(table, s);
    Permutation r(std::move(map));
    if (!aut.chain.contains(r)) throw PreconditionError("right translations are not automorphisms");
    translations.push_back(std::move(r));
  }
  auto is_translation = [&](const Permutation& p) {
    const std::size_t h = p(0);
    for (std::size_t v = 0; v < n; ++v) {
      if (p(static_cast<Point>(v)) != table.mul(v, h)) return false;
    }
    return true;
  };

  // Elements of A_1: with the chain's first base point at vertex 0, these are
  // the products of transversal elements of the deeper levels.
  std::vector<Permutation> stab{Permutation(n)};
  const auto& levels = aut.chain.levels();
  std::size_t first = 0;
  if (!levels.empty() && levels[0].base == 0) {
    first = 1;
  } else if (!levels.empty()) {
    throw InconsistencyError("chain base does not start at the identity vertex");
  }
  for (std::size_t l = levels.size(); l-- > first;) {
    std::vector<Permutation> next;
    for (Point b : levels[l].orbit) {
      const Permutation u = aut.chain.transversal(l, b);
      for (const auto& s : stab) next.push_back(s * u);
    }
    stab = std::move(next);
  }
  std::size_t normalizing = 0;
  for (const auto& a : stab) {
    const Permutation ainv = a.inverse();
    bool ok = true;
    for (const auto& r : translations) {
      if (!is_translation(ainv * r * a)) {
        ok = false;
        break;
      }
    }
    if (ok) ++normalizing;
  }
  return BigInt(n) * normalizing;
}

/// Exhaustive scan of all n! vertex permutations; only for n <= 10.
inline AutGroup brute_force_automorphisms(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 10) throw LimitExceeded("brute force is limited to 10 vertices");
  AutGroup a;
  a.chain = StabilizerChain(n);
  std::vector<Point> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Point>(i);
  std::size_t count = 0;
  do {
    if (!is_automorphism(g, perm)) continue;
    ++count;
    Permutation p(perm);
    if (p.is_identity() || a.chain.contains(p)) continue;
    a.generators.push_back(std::move(p));
    a.chain = build_chain(a.generators);
  } while (std::next_permutation(perm.begin(), perm.end()));
  a.order = count;
  if (a.chain.order() != a.order) throw InconsistencyError("brute-force count disagrees with chain order");
  return a;
}

}  // namespace grr
