#pragma once

// Cayley graphs Cay(G, S) on an enumerated group: vertex g is adjacent to s*g
// for every s in S. Vertex i is element i of the table, so vertex 0 is the
// identity.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "grr/error.hpp"
#include "grr/graph.hpp"
#include "grr/grouptab.hpp"

namespace grr {

/// Inverse-closed subset of G \ {1}, as sorted element indices.
struct ConnectionSet {
  std::vector<std::size_t> members;

  std::size_t size() const { return members.size(); }
  bool contains(std::size_t i) const { return std::binary_search(members.begin(), members.end(), i); }
};

/// Validates and normalizes a candidate connection set.
inline ConnectionSet make_connection_set(const GroupTable& table, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::size_t s : members) {
    if (s >= table.order()) throw PreconditionError("connection set member outside the group");
    if (s == 0) throw PreconditionError("connection set contains the identity");
  }
  for (std::size_t s : members) {
    if (!std::binary_search(members.begin(), members.end(), table.inv(s))) {
      throw PreconditionError("connection set is not inverse-closed: missing inverse of " +
                              table.element(s).to_string());
    }
  }
  return ConnectionSet{std::move(members)};
}

/// The connection set of Gamma_k(G, x, y):
///   {x^{+-1}, ..., x^{+-floor((k-1)/2)}, y}                k odd
///   {x^{+-1}, ..., x^{+-floor((k-1)/2)}, y, x^-1 y x}      k even
inline ConnectionSet gamma_k_connection_set(const GroupTable& table, std::size_t x, std::size_t y,
                                            int k) {
  if (k < 5) throw PreconditionError("k must be at least 5, got " + std::to_string(k));
  const int half = (k - 1) / 2;
  const std::size_t ox = table.element_order(x);
  if (ox <= static_cast<std::size_t>(2 * half)) {
    throw PreconditionError("|x| = " + std::to_string(ox) + " must exceed 2*floor((k-1)/2) = " +
                            std::to_string(2 * half));
  }
  if (table.element_order(y) != 2) {
    throw PreconditionError("y must be an involution, but |y| = " +
                            std::to_string(table.element_order(y)));
  }
  const std::size_t yx = table.conj(y, x);  // x^-1 y x
  if (k % 2 == 0 && yx == y) {
    throw PreconditionError(
        "k is even but x^-1 y x = y, so |S| < k; this also violates yxy outside <x> "
        "(yxy = x would lie in <x>)");
  }
  std::vector<std::size_t> listed;
  for (int i = 1; i <= half; ++i) {
    listed.push_back(table.pow(x, i));
    listed.push_back(table.pow(x, -i));
  }
  listed.push_back(y);
  if (k % 2 == 0) listed.push_back(yx);
  std::set<std::size_t> seen;
  for (std::size_t s : listed) {
    if (!seen.insert(s).second) {
      throw PreconditionError("connection set members collide at " + table.element(s).to_string());
    }
  }
  return make_connection_set(table, std::move(listed));
}

struct CayleyGraph {
  Graph graph;
  ConnectionSet connection_set;
  std::size_t group_order = 0;
};

inline CayleyGraph build_cayley(const GroupTable& table, const ConnectionSet& s) {
  std::vector<std::vector<Vertex>> adj(table.order());
  for (std::size_t g = 0; g < table.order(); ++g) {
    adj[g].reserve(s.size());
    for (std::size_t m : s.members) adj[g].push_back(static_cast<Vertex>(table.mul(m, g)));
  }
  return CayleyGraph{Graph::from_adjacency(std::move(adj)), s, table.order()};
}

inline bool is_connected(const CayleyGraph& c) { return is_connected(c.graph); }

/// Sorted elements of <generators> as a subset of the table.
inline std::vector<std::size_t> subgroup_closure(const GroupTable& table,
                                                 const std::vector<std::size_t>& generators) {
  std::vector<bool> in(table.order(), false);
  std::vector<std::size_t> members{0};
  in[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t s : generators) {
      std::size_t n = table.mul(members[i], s);
      if (!in[n]) {
        in[n] = true;
        members.push_back(n);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

struct CosetPartition {
  std::vector<std::size_t> block_of;
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t block_count() const { return blocks.size(); }
};

/// Right cosets Hg. Throws PreconditionError unless `subgroup` is a subgroup.
inline CosetPartition coset_partition(const GroupTable& table, std::vector<std::size_t> subgroup) {
  std::sort(subgroup.begin(), subgroup.end());
  subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
  if (subgroup.empty() || subgroup.front() != 0) throw PreconditionError("subgroup must contain the identity");
  for (std::size_t h : subgroup) {
    if (h >= table.order()) throw PreconditionError("subgroup member outside the group");
  }
  // Grow a generating set greedily; H is a subgroup iff <H> == H.
  std::vector<std::size_t> gens;
  std::vector<std::size_t> span{0};
  for (std::size_t h : subgroup) {
    if (std::binary_search(span.begin(), span.end(), h)) continue;
    gens.push_back(h);
    span = subgroup_closure(table, gens);
    if (span.size() > subgroup.size()) break;
  }
  if (span != subgroup) throw PreconditionError("the given set is not a subgroup");

  CosetPartition p;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  p.block_of.assign(table.order(), kUnset);
  for (std::size_t g = 0; g < table.order(); ++g) {
    if (p.block_of[g] != kUnset) continue;
    std::vector<std::size_t> block;
    block.reserve(subgroup.size());
    for (std::size_t h : subgroup) block.push_back(table.mul(h, g));
    std::sort(block.begin(), block.end());
    for (std::size_t b : block) p.block_of[b] = p.blocks.size();
    p.blocks.push_back(std::move(block));
  }
  return p;
}

/// Blocks adjacent iff some edge crosses between them; loops dropped.
inline Graph quotient_graph(const Graph& g, const CosetPartition& p) {
  if (p.block_of.size() != g.vertex_count()) throw PreconditionError("partition does not cover the vertex set");
  std::vector<std::vector<Vertex>> adj(p.block_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const auto bu = static_cast<Vertex>(p.block_of[u]);
    for (Vertex v : g.neighbors(u)) {
      const auto bv = static_cast<Vertex>(p.block_of[v]);
      if (bu != bv) adj[bu].push_back(bv);
    }
  }
  return Graph::from_adjacency(std::move(adj));
}

inline std::size_t edges_between_blocks(const Graph& g, const CosetPartition& p, std::size_t a,
                                        std::size_t b) {
  if (a == b) throw PreconditionError("edges_between_blocks needs two distinct blocks");
  std::size_t count = 0;
  for (std::size_t u : p.blocks.at(a)) {
    for (Vertex v : g.neighbors(static_cast<Vertex>(u))) {
      if (p.block_of[v] == b) ++count;
    }
  }
  return count;
}

/// Right translation v -> v * h as a vertex map.
inline std::vector<Vertex> right_translation(const GroupTable& table, std::size_t h) {
  std::vector<Vertex> map(table.order());
  for (std::size_t v = 0; v < table.order(); ++v) map[v] = static_cast<Vertex>(table.mul(v, h));
  return map;
}

}  // namespace grr
