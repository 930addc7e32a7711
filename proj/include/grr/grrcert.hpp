#pragma once

// GRR certification for Cayley graphs Gamma_k(G, x, y) of (2,p)-generated
// groups, and the alternating-group construction with its checks.
//
// certify_theorem1 never builds the graph. Under the hypotheses
//   G = <x,y>, |x| = p prime, |y| = 2, yxy not in <x>, p >= 3*ceil(k/2) - 2,
//   no proper subgroup of index < 4,
// Cay(G,S) is a GRR iff Aut(G,S) = 1, and Aut(G,S) is found exactly by trying
// at most four generator maps: an S-preserving automorphism permutes the
// order-p elements of S (the set R), hence normalizes <x> = <R>, and its
// restriction to <x> preserves R, which for p >= (3m-1)/2 with
// m = 2*floor((k-1)/2) + 1 leaves only x -> x and x -> x^-1. The involutions
// of S are y alone (k odd) or y and x^-1 y x (k even).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "grr/autgraph.hpp"
#include "grr/cayley.hpp"
#include "grr/error.hpp"
#include "grr/grouptab.hpp"
#include "grr/perm.hpp"

namespace grr {

inline bool is_prime(std::uint64_t n) {
  if (n < 4) return n >= 2;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

inline int ceil_half(int k) { return (k + 1) / 2; }

/// Smallest prime allowed for valency k: 3*ceil(k/2) - 2.
inline int min_prime_for_valency(int k) { return 3 * ceil_half(k) - 2; }

/// Primes p with (n+4)/2 < p <= n-3, ascending.
inline std::vector<int> prime_window(int n) {
  if (n < 14) throw PreconditionError("prime window needs n >= 14, got " + std::to_string(n));
  std::vector<int> out;
  for (int p = n - 3; 2 * p > n + 4; --p) {
    if (is_prime(static_cast<std::uint64_t>(p))) out.push_back(p);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// Largest k with n >= 6*ceil(k/2) - 12.
inline int k_max(int n) { return 2 * ((n + 12) / 6); }

/// Whether (n, p, k) satisfies the alternating-group existence statement's
/// constraints: n >= max(14, 6*ceil(k/2) - 12), p in the window, and
/// p > 2*floor((k-1)/2).
inline bool an_certificate_applies(int n, int p, int k) {
  if (k < 5 || n < 14 || n < 6 * ceil_half(k) - 12) return false;
  const auto w = prime_window(n);
  if (std::find(w.begin(), w.end(), p) == w.end()) return false;
  return p > 2 * ((k - 1) / 2);
}

/// |{u in (Z/lZ)^* : uR = R}| for R = {+-1, ..., +-(m-1)/2} mod l.
inline std::size_t lemma6_multiplier_count(int m, int l) {
  if (m < 5 || m % 2 == 0) throw PreconditionError("m must be odd and at least 5");
  if (2 * l < 3 * m - 1) throw PreconditionError("l must be at least (3m-1)/2");
  std::vector<bool> in_r(static_cast<std::size_t>(l), false);
  for (int i = 1; i <= (m - 1) / 2; ++i) {
    in_r[static_cast<std::size_t>(i % l)] = true;
    in_r[static_cast<std::size_t>((l - i) % l)] = true;
  }
  std::size_t count = 0;
  for (int u = 1; u < l; ++u) {
    if (std::gcd(u, l) != 1) continue;
    bool ok = true;
    for (int r = 0; r < l && ok; ++r) {
      if (in_r[static_cast<std::size_t>(r)]) {
        ok = in_r[static_cast<std::size_t>((static_cast<long long>(u) * r) % l)];
      }
    }
    if (ok) ++count;
  }
  return count;
}

// ------------------------------------------------------------ Construction

struct AnConstruction {
  enum class Parity { odd, even };
  int n = 0;
  int p = 0;
  Permutation x;
  Permutation y;
  Parity parity_branch = Parity::odd;
};

/// x = (1,...,p);
/// y = (p,p+1) prod_{i=2}^{n-p} (i,i+p)             for odd n,
/// y = (p-2,p-1)(p,p+1) prod_{i=2}^{n-p} (i,i+p)    for even n.
/// Defaults to the largest window prime. Generation of A_n is checked.
inline AnConstruction construct_an(int n, std::optional<int> p = std::nullopt) {
  const auto window = prime_window(n);
  const int q = p.value_or(window.back());
  if (std::find(window.begin(), window.end(), q) == window.end()) {
    throw PreconditionError("p = " + std::to_string(q) + " is outside the window (" +
                            std::to_string(n + 4) + "/2, " + std::to_string(n - 3) + "]");
  }
  AnConstruction c;
  c.n = n;
  c.p = q;
  c.parity_branch = n % 2 ? AnConstruction::Parity::odd : AnConstruction::Parity::even;
  const auto deg = static_cast<std::size_t>(n);
  std::string xs = "(";
  for (int i = 1; i <= q; ++i) xs += (i > 1 ? "," : "") + std::to_string(i);
  xs += ")";
  c.x = parse_cycles(xs, deg);
  std::string ys;
  auto tr = [](int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };
  if (n % 2 == 0) ys += tr(q - 2, q - 1);
  ys += tr(q, q + 1);
  for (int i = 2; i <= n - q; ++i) ys += tr(i, i + q);
  c.y = parse_cycles(ys, deg);
  if (!is_even(c.y) || order_of(c.y) != 2) {
    throw InconsistencyError("constructed y is not an even involution");
  }
  BigInt half_factorial = 1;
  for (int i = 3; i <= n; ++i) half_factorial *= i;
  if (!generates_group_of_order({c.x, c.y}, half_factorial)) {
    throw InconsistencyError("constructed x and y do not generate A_" + std::to_string(n));
  }
  return c;
}

struct FixedPointSets {
  std::vector<Point> fix_y;       // 0-indexed points
  std::vector<Point> fix_conj_y;  // fixed points of x^-1 y x
};

/// The closed forms, 0-indexed. Odd n: Fix(y) = {1} + [n-p+1, p-1],
/// Fix(x^-1yx) = {2} + [n-p+2, p]; even n: the ranges end at p-3 and p-2.
inline FixedPointSets fixed_point_closed_form(int n, int p) {
  FixedPointSets f;
  const int y_end = n % 2 ? p - 1 : p - 3;
  const int c_end = n % 2 ? p : p - 2;
  f.fix_y.push_back(0);
  for (int i = n - p + 1; i <= y_end; ++i) f.fix_y.push_back(static_cast<Point>(i - 1));
  f.fix_conj_y.push_back(1);
  for (int i = n - p + 2; i <= c_end; ++i) f.fix_conj_y.push_back(static_cast<Point>(i - 1));
  return f;
}

/// Computed fixed points of y and x^-1 y x; throws InconsistencyError if they
/// differ from the closed forms.
inline FixedPointSets fixed_point_sets(const AnConstruction& c) {
  FixedPointSets f;
  f.fix_y = fixed_points(c.y);
  f.fix_conj_y = fixed_points(conjugate(c.y, c.x));
  const FixedPointSets closed = fixed_point_closed_form(c.n, c.p);
  if (f.fix_y != closed.fix_y || f.fix_conj_y != closed.fix_conj_y) {
    throw InconsistencyError("fixed point sets disagree with the closed form for n=" +
                             std::to_string(c.n) + ", p=" + std::to_string(c.p));
  }
  return f;
}

// ------------------------------------------------------------ Aut(G,S)

/// Connection set of Gamma_k as permutations: R then y (then x^-1 y x).
inline std::vector<Permutation> gamma_k_members(const Permutation& x, const Permutation& y, int k) {
  std::vector<Permutation> s;
  for (int i = 1; i <= (k - 1) / 2; ++i) {
    s.push_back(power(x, i));
    s.push_back(power(x, -i));
  }
  s.push_back(y);
  if (k % 2 == 0) s.push_back(conjugate(y, x));
  return s;
}

namespace detail {

inline void require_gamma_shape(const GroupTable& table, std::size_t x, std::size_t y, int k) {
  if (k < 5) throw PreconditionError("k must be at least 5");
  const std::size_t p = table.element_order(x);
  if (!is_prime(p)) throw PreconditionError("|x| = " + std::to_string(p) + " is not prime");
  if (table.element_order(y) != 2) throw PreconditionError("y is not an involution");
  if (static_cast<int>(p) < min_prime_for_valency(k)) {
    throw PreconditionError("p = " + std::to_string(p) + " is below 3*ceil(k/2)-2 = " +
                            std::to_string(min_prime_for_valency(k)));
  }
  if (subgroup_closure(table, {x, y}).size() != table.order()) {
    throw PreconditionError("x and y do not generate the group");
  }
  if (cyclic_membership(table, x, table.mul(table.mul(y, x), y))) {
    throw PreconditionError("yxy lies in <x>");
  }
}

}  // namespace detail

/// Aut(G,S) for S the connection set of Gamma_k(G,x,y), identity first.
inline std::vector<ElementAutomorphism> aut_gs_theorem1(const GroupTable& table, std::size_t x,
                                                        std::size_t y, int k) {
  detail::require_gamma_shape(table, x, y, k);
  const ConnectionSet s = gamma_k_connection_set(table, x, y, k);
  const std::size_t xinv = table.inv(x);
  std::vector<std::size_t> y_targets{y};
  if (k % 2 == 0) y_targets.push_back(table.conj(y, x));
  std::vector<ElementAutomorphism> result;
  for (std::size_t tx : {x, xinv}) {
    for (std::size_t ty : y_targets) {
      auto sigma = extend_generator_map(table, std::vector<std::size_t>{x, y}, std::vector<std::size_t>{tx, ty});
      if (!sigma) continue;
      bool preserves = true;
      for (std::size_t m : s.members) {
        if (!s.contains((*sigma)(m))) {
          preserves = false;
          break;
        }
      }
      if (preserves) result.push_back(std::move(*sigma));
    }
  }
  if (result.empty() || !result.front().is_identity()) {
    throw InconsistencyError("identity automorphism missing from Aut(G,S)");
  }
  for (const auto& a : result) {
    for (const auto& b : result) {
      if (std::find(result.begin(), result.end(), a.then(b)) == result.end()) {
        throw InconsistencyError("computed Aut(G,S) is not closed under composition");
      }
    }
  }
  return result;
}

/// The automorphism x -> x^-1, y -> y, if it exists; it is then an involution.
inline std::optional<ElementAutomorphism> inverting_involution_witness(const GroupTable& table, std::size_t x,
                                                                       std::size_t y) {
  if (subgroup_closure(table, {x, y}).size() != table.order()) {
    throw PreconditionError("x and y do not generate the group");
  }
  auto alpha = extend_generator_map(table, std::vector<std::size_t>{x, y},
                                    std::vector<std::size_t>{table.inv(x), y});
  if (alpha && !alpha->then(*alpha).is_identity()) {
    throw InconsistencyError("x -> x^-1, y -> y extends to a non-involution");
  }
  return alpha;
}

/// Aut(A_n, S) as the conjugating permutations g in S_n with S^g = S, for x a
/// p-cycle on {1,...,p}. The candidates are N_{S_n}(<x>): affine maps
/// c_i -> c_{ai+b} along the cycle of x, times Sym({p+1,...,n}).
inline std::vector<Permutation> aut_gs_alternating(int n, const Permutation& x, const Permutation& y, int k) {
  if (n == 6) throw PreconditionError("n = 6 is excluded (A_6 has outer automorphisms)");
  if (n < 7) throw PreconditionError("aut_gs_alternating needs n >= 7");
  if (x.degree() != static_cast<std::size_t>(n) || y.degree() != x.degree()) {
    throw PreconditionError("x and y must have degree n");
  }
  if (k < 5) throw PreconditionError("k must be at least 5");
  const auto cyc = x.cycles();
  if (cyc.size() != 1 || !is_prime(cyc[0].size())) throw PreconditionError("x must be a single p-cycle");
  const int p = static_cast<int>(cyc[0].size());
  for (Point i = 0; i < static_cast<Point>(p); ++i) {
    if (x(i) == i) throw PreconditionError("x must move exactly the points 1..p");
  }
  if (p <= 2 * ((k - 1) / 2)) throw PreconditionError("p must exceed 2*floor((k-1)/2)");
  if (order_of(y) != 2 || !is_even(y) || !is_even(x)) throw PreconditionError("x and y must lie in A_n");

  const auto s_members = gamma_k_members(x, y, k);
  std::vector<Permutation> r_sorted(s_members.begin(), s_members.begin() + 2 * ((k - 1) / 2));
  std::sort(r_sorted.begin(), r_sorted.end());
  std::vector<Permutation> m_sorted(s_members.begin() + 2 * ((k - 1) / 2), s_members.end());
  std::sort(m_sorted.begin(), m_sorted.end());

  std::vector<Point> rest;
  for (int i = p; i < n; ++i) rest.push_back(static_cast<Point>(i));
  const std::vector<Point>& c = cyc[0];
  std::vector<Permutation> out;
  std::vector<Point> g(static_cast<std::size_t>(n));
  std::vector<Point> conj_img(static_cast<std::size_t>(n));
  for (int a = 1; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      for (int i = 0; i < p; ++i) g[c[static_cast<std::size_t>(i)]] = c[static_cast<std::size_t>((a * i + b) % p)];
      for (std::size_t i = 0; i < rest.size(); ++i) g[rest[i]] = rest[i];
      // R^g depends only on the affine part.
      const Permutation g0(g);
      std::vector<Permutation> r_img;
      for (const auto& r : r_sorted) r_img.push_back(conjugate(r, g0));
      std::sort(r_img.begin(), r_img.end());
      if (r_img != r_sorted) continue;
      std::vector<Point> sigma = rest;
      do {
        for (std::size_t i = 0; i < rest.size(); ++i) g[rest[i]] = sigma[i];
        bool ok = true;
        std::vector<Permutation> m_img;
        for (const auto& m : m_sorted) {
          // m^g maps g(i) to g(m(i)).
          for (std::size_t i = 0; i < g.size(); ++i) conj_img[g[i]] = g[m(static_cast<Point>(i))];
          Permutation mg(conj_img);
          if (!std::binary_search(m_sorted.begin(), m_sorted.end(), mg)) {
            ok = false;
            break;
          }
          m_img.push_back(std::move(mg));
        }
        if (ok) out.emplace_back(g);
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------ certificate

enum class Verdict { grr_certified, not_grr_autgs_nontrivial, hypotheses_failed };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::grr_certified: return "GRR_certified";
    case Verdict::not_grr_autgs_nontrivial: return "not_GRR_autgs_nontrivial";
    case Verdict::hypotheses_failed: return "hypotheses_failed";
  }
  return "?";
}

struct HypothesisChecks {
  bool two_p_generated = false;
  bool y_is_involution = false;
  bool x_has_order_p = false;
  bool yxy_outside_cyclic = false;
  bool p_large_enough = false;
  bool no_small_index_subgroup = false;
  bool connection_set_size_k = false;

  bool all() const {
    return two_p_generated && y_is_involution && x_has_order_p && yxy_outside_cyclic && p_large_enough &&
           no_small_index_subgroup && connection_set_size_k;
  }
};

struct GrrCertificate {
  std::size_t group_order = 0;
  int k = 0;
  std::size_t p = 0;  // |x|
  HypothesisChecks checks;
  std::optional<std::size_t> aut_gs_order;  // set when every check passes
  Verdict verdict = Verdict::hypotheses_failed;
  std::optional<ElementAutomorphism> witness;  // nontrivial element of Aut(G,S)
};

inline GrrCertificate certify_theorem1(const GroupTable& table, std::size_t x, std::size_t y, int k) {
  GrrCertificate cert;
  cert.group_order = table.order();
  cert.k = k;
  cert.p = table.element_order(x);
  auto& ck = cert.checks;
  ck.y_is_involution = table.element_order(y) == 2;
  ck.x_has_order_p = is_prime(cert.p);
  ck.two_p_generated = subgroup_closure(table, {x, y}).size() == table.order();
  ck.yxy_outside_cyclic = !cyclic_membership(table, x, table.mul(table.mul(y, x), y));
  ck.p_large_enough = k >= 5 && static_cast<long long>(cert.p) >= min_prime_for_valency(k);
  ck.no_small_index_subgroup = !has_subgroup_of_index_lt4(table).present;
  if (k >= 5) {
    try {
      ck.connection_set_size_k = gamma_k_connection_set(table, x, y, k).size() == static_cast<std::size_t>(k);
    } catch (const PreconditionError&) {
      ck.connection_set_size_k = false;
    }
  }
  if (!ck.all()) {
    cert.verdict = Verdict::hypotheses_failed;
    return cert;
  }
  auto aut = aut_gs_theorem1(table, x, y, k);
  cert.aut_gs_order = aut.size();
  if (aut.size() == 1) {
    cert.verdict = Verdict::grr_certified;
  } else {
    cert.verdict = Verdict::not_grr_autgs_nontrivial;
    cert.witness = aut[1];
  }
  return cert;
}

/// |Aut(graph)| == |G|, by the full automorphism search.
inline bool verify_grr_exhaustive(const Graph& graph, const GroupTable& table, const AutSearchConfig& cfg = {}) {
  if (graph.vertex_count() != table.order()) throw PreconditionError("graph is not on the group's elements");
  return automorphism_group(graph, std::nullopt, cfg).order == table.order();
}

}  // namespace grr
