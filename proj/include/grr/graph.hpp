#pragma once

// Undirected simple graphs in compressed sparse row form, plus the graph6 and
// DIMACS edge-list encodings.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grr/error.hpp"

namespace grr {

using Vertex = std::uint32_t;

class Graph {
 public:
  Graph() : offsets_{0} {}

  /// Builds from an edge list; duplicate edges collapse, loops are rejected.
  Graph(std::size_t vertex_count, std::vector<std::pair<Vertex, Vertex>> edges)
      : vertex_count_(vertex_count) {
    std::vector<std::vector<Vertex>> adj(vertex_count);
    for (auto [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count) throw PreconditionError("edge endpoint out of range");
      if (u == v) throw PreconditionError("loops are not allowed in a simple graph");
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    *this = from_adjacency(std::move(adj));
  }

  /// Adjacency lists must already be symmetric and loop-free.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adj) {
    Graph g;
    g.vertex_count_ = adj.size();
    g.offsets_.assign(adj.size() + 1, 0);
    for (std::size_t v = 0; v < adj.size(); ++v) {
      auto& row = adj[v];
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      g.offsets_[v + 1] = g.offsets_[v] + row.size();
    }
    g.neighbors_.reserve(g.offsets_.back());
    for (auto& row : adj) g.neighbors_.insert(g.neighbors_.end(), row.begin(), row.end());
    for (std::size_t v = 0; v < g.vertex_count_; ++v) {
      for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
        if (u == v) throw PreconditionError("loops are not allowed in a simple graph");
        if (!g.has_edge(u, static_cast<Vertex>(v))) throw PreconditionError("adjacency is not symmetric");
      }
    }
    return g;
  }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count_; ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool is_regular() const {
    for (Vertex v = 1; v < vertex_count_; ++v) {
      if (degree(v) != degree(0)) return false;
    }
    return true;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
};

/// Breadth-first reachability from vertex 0.
inline bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<Vertex> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Vertex u : g.neighbors(queue[i])) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return queue.size() == g.vertex_count();
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u) e.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  return Graph(n, std::move(e));
}

inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph(n, std::move(e));
}

// ---------------------------------------------------------------- graph6

/// Standard graph6 encoding, without header and without trailing newline.
inline std::string to_graph6(const Graph& g) {
  const std::uint64_t n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out += static_cast<char>(63 + n);
  } else if (n <= 258047) {
    out += static_cast<char>(126);
    for (int shift = 12; shift >= 0; shift -= 6) out += static_cast<char>(63 + ((n >> shift) & 63));
  } else {
    out += static_cast<char>(126);
    out += static_cast<char>(126);
    for (int shift = 30; shift >= 0; shift -= 6) out += static_cast<char>(63 + ((n >> shift) & 63));
  }
  unsigned acc = 0;
  int bits = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1u : 0u);
      if (++bits == 6) {
        out += static_cast<char>(63 + acc);
        acc = 0;
        bits = 0;
      }
    }
  }
  if (bits > 0) out += static_cast<char>(63 + (acc << (6 - bits)));
  return out;
}

inline Graph from_graph6(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  if (s.starts_with(">>graph6<<")) s.remove_prefix(10);
  std::size_t pos = 0;
  auto byte = [&]() -> unsigned {
    if (pos >= s.size()) throw ParseError("graph6: truncated input");
    const auto c = static_cast<unsigned char>(s[pos++]);
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range");
    return c - 63u;
  };
  std::uint64_t n = byte();
  if (n == 63) {
    n = 0;
    const bool big = pos < s.size() && s[pos] == 126;
    if (big) ++pos;
    for (int i = 0; i < (big ? 6 : 3); ++i) n = (n << 6) | byte();
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  unsigned acc = 0;
  int bits = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      if (bits == 0) {
        acc = byte();
        bits = 6;
      }
      --bits;
      if ((acc >> bits) & 1u) edges.emplace_back(i, j);
    }
  }
  if (pos != s.size()) throw ParseError("graph6: trailing bytes");
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

// ---------------------------------------------------------------- DIMACS

/// `p edge n m` followed by `e u v` lines, 1-indexed, u < v, lexicographic.
inline std::string to_dimacs(const Graph& g) {
  std::ostringstream os;
  os << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) os << "e " << (u + 1) << ' ' << (v + 1) << '\n';
  return os.str();
}

inline Graph from_dimacs(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<std::pair<Vertex, Vertex>> edges;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      std::size_t m = 0;
      if (!(ls >> kind >> n >> m) || kind != "edge") throw ParseError("DIMACS: bad problem line");
      have_header = true;
    } else if (tag == "e") {
      std::size_t u = 0, v = 0;
      if (!have_header || !(ls >> u >> v) || u < 1 || v < 1 || u > n || v > n) {
        throw ParseError("DIMACS: bad edge line: " + line);
      }
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      throw ParseError("DIMACS: unknown line: " + line);
    }
  }
  if (!have_header) throw ParseError("DIMACS: missing problem line");
  return Graph(n, std::move(edges));
}

}  // namespace grr
