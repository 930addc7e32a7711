#pragma once

// Permutations on {0,...,n-1}. Points act on the right: i^(ab) = (i^a)^b,
// so compose(a, b) applies a first. All text I/O is 1-indexed cycle notation.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grr/error.hpp"

namespace grr {

using Point = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultDegreeCap = 4096;

class Permutation {
 public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  /// Takes an image table; throws PreconditionError unless it is a bijection.
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw PreconditionError("image table is not a bijection");
      }
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point i) const { return images_[i]; }
  Point operator[](Point i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  /// In place: *this = *this * other.
  Permutation& then(const Permutation& other) {
    for (auto& p : images_) p = other.images_[p];
    return *this;
  }

  /// Smallest moved point, or degree() for the identity.
  std::size_t first_moved() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return i;
    }
    return images_.size();
  }

  /// Disjoint cycles of length >= 2, each starting at its smallest point, sorted.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<Point> c;
      for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
        seen[j] = true;
        c.push_back(j);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  /// 1-indexed cycle notation; the identity prints as "()".
  std::string to_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& c : cs) {
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i] + 1);
      }
      s += ')';
    }
    return s;
  }

  std::size_t hash() const {
    // FNV-1a over the image table.
    std::uint64_t h = 1469598103934665603ull;
    for (Point p : images_) {
      h ^= p;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

/// i -> b(a(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw PreconditionError("degree mismatch: " + std::to_string(a.degree()) + " vs " +
                            std::to_string(b.degree()));
  }
  Permutation r = a;
  r.then(b);
  return r;
}

inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

inline Permutation inverse(const Permutation& g) { return g.inverse(); }

/// h^-1 g h, i.e. g^h in exponent notation.
inline Permutation conjugate(const Permutation& g, const Permutation& h) {
  return h.inverse() * g * h;
}

/// lcm of the cycle lengths.
inline BigInt order_of(const Permutation& g) {
  BigInt r = 1;
  for (const auto& c : g.cycles()) r = boost::multiprecision::lcm(r, BigInt(c.size()));
  return r;
}

/// g^e for any integer e (negative allowed), computed cyclewise.
inline Permutation power(const Permutation& g, const BigInt& e) {
  std::vector<Point> img(g.images().begin(), g.images().end());
  for (const auto& c : g.cycles()) {
    const BigInt len = c.size();
    BigInt shift = e % len;
    if (shift < 0) shift += len;
    const auto s = static_cast<std::size_t>(shift);
    for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + s) % c.size()];
  }
  return Permutation(std::move(img));
}

inline Permutation power(const Permutation& g, long long e) { return power(g, BigInt(e)); }

inline bool is_even(const Permutation& g) {
  std::size_t transpositions = 0;
  for (const auto& c : g.cycles()) transpositions += c.size() - 1;
  return transpositions % 2 == 0;
}

inline std::vector<Point> fixed_points(const Permutation& g) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < g.degree(); ++i) {
    if (g(static_cast<Point>(i)) == i) out.push_back(static_cast<Point>(i));
  }
  return out;
}

/// Parses `cycle*` with `cycle := "(" int ("," int)* ")"`, 1-indexed, whitespace
/// ignored. Cycles multiply left to right. Empty text is the identity.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  if (degree == 0) throw PreconditionError("degree must be positive");
  Permutation result(degree);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r')) {
      ++pos;
    }
  };
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("cycle notation: " + what + " at offset " + std::to_string(pos) + " in \"" +
                     std::string(text) + "\"");
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    skip_ws();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      skip_ws();
      continue;
    }
    std::vector<Point> cycle;
    std::vector<bool> in_cycle(degree, false);
    for (;;) {
      skip_ws();
      std::size_t start = pos;
      unsigned long long value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + static_cast<unsigned>(text[pos] - '0');
        if (value > degree) break;
        ++pos;
      }
      if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        throw ParseError("point out of range (degree " + std::to_string(degree) + ") in \"" +
                         std::string(text) + "\"");
      }
      if (pos == start) fail("expected a point");
      if (value < 1 || value > degree) {
        throw ParseError("point " + std::to_string(value) + " out of range 1.." +
                         std::to_string(degree));
      }
      const auto p = static_cast<Point>(value - 1);
      if (in_cycle[p]) fail("point " + std::to_string(value) + " repeated within a cycle");
      in_cycle[p] = true;
      cycle.push_back(p);
      skip_ws();
      if (pos >= text.size()) fail("unbalanced parenthesis");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      fail("expected ',' or ')'");
    }
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    for (std::size_t i = 0; i < cycle.size(); ++i) img[cycle[i]] = cycle[(i + 1) % cycle.size()];
    result.then(Permutation(std::move(img)));
    skip_ws();
  }
  return result;
}

/// Largest point mentioned in a cycle string (1-indexed), 0 if none. Used to
/// infer degrees for generator lists given without one.
inline std::size_t max_point_in(std::string_view text) {
  std::size_t best = 0;
  std::size_t cur = 0;
  bool in_num = false;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      cur = cur * 10 + static_cast<std::size_t>(c - '0');
      in_num = true;
    } else {
      if (in_num) best = std::max(best, cur);
      cur = 0;
      in_num = false;
    }
  }
  if (in_num) best = std::max(best, cur);
  return best;
}

}  // namespace grr
