#pragma once

// Exhaustively enumerated permutation groups. Elements are indexed in
// breadth-first order from the identity (index 0) and looked up by hashing
// their image tables, so a product costs one composition plus one lookup.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "grr/error.hpp"
#include "grr/perm.hpp"

namespace grr {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

class GroupTable {
 public:
  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  const Permutation& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<std::size_t>& generator_indices() const { return generator_indices_; }

  std::optional<std::size_t> find(const Permutation& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Permutation& g) const {
    auto i = find(g);
    if (!i) throw PreconditionError("element " + g.to_string() + " is not in the group");
    return *i;
  }

  /// left_mul(s)[i] is the index of generators()[s] * element(i).
  std::span<const std::size_t> left_mul(std::size_t s) const { return left_mul_.at(s); }

  std::size_t mul(std::size_t a, std::size_t b) const {
    return index_.at(elements_[a] * elements_[b]);
  }

  std::size_t inv(std::size_t a) const { return inverse_[a]; }

  /// b^-1 a b
  std::size_t conj(std::size_t a, std::size_t b) const { return mul(mul(inverse_[b], a), b); }

  std::size_t element_order(std::size_t a) const {
    return static_cast<std::size_t>(order_of(elements_[a]));
  }

  std::size_t pow(std::size_t a, long long e) const { return index_of(power(elements_[a], e)); }

  friend GroupTable enumerate(const std::vector<Permutation>& generators, std::size_t cap);

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
  std::vector<std::size_t> generator_indices_;
  std::vector<std::vector<std::size_t>> left_mul_;
  std::vector<std::size_t> inverse_;
};

/// Breadth-first closure; throws LimitExceeded (with the partial count) past `cap`.
inline GroupTable enumerate(const std::vector<Permutation>& generators,
                            std::size_t cap = kDefaultEnumerationCap) {
  if (generators.empty()) throw PreconditionError("enumerate needs at least one generator");
  if (cap == 0) throw PreconditionError("enumeration cap must be positive");
  GroupTable t;
  t.degree_ = generators.front().degree();
  for (const auto& g : generators) {
    if (g.degree() != t.degree_) throw PreconditionError("generator degree mismatch");
  }
  t.generators_ = generators;
  t.elements_.push_back(Permutation(t.degree_));
  t.index_.emplace(t.elements_.back(), 0);
  for (std::size_t i = 0; i < t.elements_.size(); ++i) {
    for (const auto& s : generators) {
      Permutation next = t.elements_[i] * s;
      if (t.index_.contains(next)) continue;
      if (t.elements_.size() >= cap) {
        throw LimitExceeded("group exceeds enumeration cap " + std::to_string(cap) + " (" +
                            std::to_string(t.elements_.size()) + " elements found so far)");
      }
      t.index_.emplace(next, t.elements_.size());
      t.elements_.push_back(std::move(next));
    }
  }
  for (const auto& s : generators) t.generator_indices_.push_back(t.index_.at(s));
  t.left_mul_.resize(generators.size());
  for (std::size_t s = 0; s < generators.size(); ++s) {
    auto& row = t.left_mul_[s];
    row.resize(t.elements_.size());
    for (std::size_t i = 0; i < t.elements_.size(); ++i) {
      row[i] = t.index_.at(generators[s] * t.elements_[i]);
    }
  }
  t.inverse_.resize(t.elements_.size());
  for (std::size_t i = 0; i < t.elements_.size(); ++i) {
    t.inverse_[i] = t.index_.at(t.elements_[i].inverse());
  }
  return t;
}

/// Automorphism of a GroupTable, as a permutation of element indices.
struct ElementAutomorphism {
  std::vector<std::size_t> images;

  std::size_t operator()(std::size_t i) const { return images[i]; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] != i) return false;
    }
    return true;
  }

  /// Apply *this first, then other.
  ElementAutomorphism then(const ElementAutomorphism& other) const {
    ElementAutomorphism r;
    r.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) r.images[i] = other.images[images[i]];
    return r;
  }

  ElementAutomorphism inverse() const {
    ElementAutomorphism r;
    r.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) r.images[images[i]] = i;
    return r;
  }

  friend bool operator==(const ElementAutomorphism&, const ElementAutomorphism&) = default;
};

namespace detail {

/// Extends sources[i] -> target_images[i] to a homomorphism from `table` into
/// `target` by breadth-first word propagation. nullopt if some relation fails.
/// Throws PreconditionError if the sources do not generate `table`.
inline std::optional<std::vector<std::size_t>> extend_homomorphism(
    const GroupTable& table, std::span<const std::size_t> sources, const GroupTable& target,
    std::span<const std::size_t> target_images) {
  if (sources.size() != target_images.size()) {
    throw PreconditionError("source and target lists differ in length");
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> phi(table.order(), kUnset);
  std::vector<std::size_t> queue{0};
  phi[0] = 0;
  bool consistent = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t g = queue[q];
    for (std::size_t j = 0; j < sources.size(); ++j) {
      const std::size_t next = table.mul(g, sources[j]);
      const std::size_t img = target.mul(phi[g], target_images[j]);
      if (phi[next] == kUnset) {
        phi[next] = img;
        queue.push_back(next);
      } else if (phi[next] != img) {
        consistent = false;
      }
    }
  }
  if (queue.size() != table.order()) {
    throw PreconditionError("the source elements do not generate the group");
  }
  if (!consistent) return std::nullopt;
  return phi;
}

}  // namespace detail

/// The unique automorphism with sources[i] -> targets[i], if that map extends
/// to a bijective homomorphism.
inline std::optional<ElementAutomorphism> extend_generator_map(
    const GroupTable& table, std::span<const std::size_t> sources,
    std::span<const std::size_t> targets) {
  auto phi = detail::extend_homomorphism(table, sources, table, targets);
  if (!phi) return std::nullopt;
  std::vector<bool> hit(table.order(), false);
  for (std::size_t v : *phi) {
    if (hit[v]) return std::nullopt;
    hit[v] = true;
  }
  return ElementAutomorphism{std::move(*phi)};
}

inline std::optional<ElementAutomorphism> extend_generator_map(
    const GroupTable& table, const std::vector<std::size_t>& sources,
    const std::vector<std::size_t>& targets) {
  return extend_generator_map(table, std::span<const std::size_t>(sources),
                              std::span<const std::size_t>(targets));
}

/// Conjugacy classes, each sorted, ordered by smallest member (identity first).
inline std::vector<std::vector<std::size_t>> conjugacy_classes(const GroupTable& table) {
  const std::size_t n = table.order();
  std::vector<bool> done(n, false);
  std::vector<std::vector<std::size_t>> classes;
  const auto& gens = table.generator_indices();
  for (std::size_t start = 0; start < n; ++start) {
    if (done[start]) continue;
    std::vector<std::size_t> cls{start};
    done[start] = true;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t s : gens) {
        const std::size_t c = table.conj(cls[i], s);
        if (!done[c]) {
          done[c] = true;
          cls.push_back(c);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

struct SmallIndexWitness {
  bool present = false;
  /// Normal subgroup N with |G/N| in {2, 3, 6} (sorted element indices).
  std::vector<std::size_t> normal_subgroup;
  std::size_t quotient_order = 0;
  /// A proper subgroup of index 2 or 3 contained between N and G.
  std::vector<std::size_t> subgroup;
  std::size_t index = 0;
};

/// Whether G has a proper subgroup of index 2 or 3.
///
/// Such a subgroup exists iff G has a nontrivial homomorphism into S_3: a
/// subgroup of index 2 or 3 gives one through the coset action, and
/// conversely a nontrivial image of order 2, 3 or 6 has a subgroup of index 2
/// or 3 whose preimage has the same index. Candidate homomorphisms are
/// enumerated by generator images and verified by word propagation.
inline SmallIndexWitness has_subgroup_of_index_lt4(const GroupTable& table) {
  static const GroupTable s3 =
      enumerate({parse_cycles("(1,2,3)", 3), parse_cycles("(1,2)", 3)});
  SmallIndexWitness w;
  const auto& gens = table.generator_indices();
  const std::size_t d = gens.size();
  std::vector<std::size_t> gen_order(d);
  for (std::size_t j = 0; j < d; ++j) gen_order[j] = table.element_order(gens[j]);
  std::vector<std::size_t> choice(d, 0);
  for (;;) {
    bool nontrivial = false;
    bool orders_ok = true;
    for (std::size_t j = 0; j < d; ++j) {
      if (choice[j] != 0) nontrivial = true;
      if (gen_order[j] % s3.element_order(choice[j]) != 0) orders_ok = false;
    }
    if (nontrivial && orders_ok) {
      auto phi = detail::extend_homomorphism(table, gens, s3, choice);
      if (phi) {
        std::vector<bool> in_image(6, false);
        std::size_t image_size = 0;
        for (std::size_t v : *phi) {
          if (!in_image[v]) {
            in_image[v] = true;
            ++image_size;
          }
        }
        w.present = true;
        w.quotient_order = image_size;
        for (std::size_t i = 0; i < table.order(); ++i) {
          if ((*phi)[i] == 0) w.normal_subgroup.push_back(i);
        }
        if (image_size == 6) {
          // Preimage of the even permutations.
          for (std::size_t i = 0; i < table.order(); ++i) {
            if (is_even(s3.element((*phi)[i]))) w.subgroup.push_back(i);
          }
          w.index = 2;
        } else {
          w.subgroup = w.normal_subgroup;
          w.index = image_size;
        }
        return w;
      }
    }
    std::size_t j = 0;
    while (j < d && ++choice[j] == 6) choice[j++] = 0;
    if (j == d) break;
  }
  return w;
}

/// True iff g is a power of x.
inline bool cyclic_membership(const GroupTable& table, std::size_t x, std::size_t g) {
  std::size_t cur = 0;
  do {
    if (cur == g) return true;
    cur = table.mul(cur, x);
  } while (cur != 0);
  return false;
}

/// Elements of order exactly 2.
inline std::size_t count_involutions(const GroupTable& table) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < table.order(); ++i) {
    const auto& e = table.element(i);
    bool inv = true;
    for (std::size_t p = 0; p < e.degree(); ++p) {
      if (e(e(static_cast<Point>(p))) != p) {
        inv = false;
        break;
      }
    }
    if (inv) ++n;
  }
  return n;
}

}  // namespace grr
