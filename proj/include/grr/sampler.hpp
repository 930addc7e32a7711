#pragma once

// Primitive prime divisors, seeded random sampling in permutation groups, and
// Monte Carlo estimates of the probability that x and a random involution
// generate the whole group.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "grr/chain.hpp"
#include "grr/error.hpp"
#include "grr/perm.hpp"

namespace grr {

// ------------------------------------------------------------ ppd

namespace detail {

inline bool probably_prime(const BigInt& n) {
  if (n < 2) return false;
  static const std::mt19937_64::result_type kSeed = 0x5eed;
  std::mt19937_64 gen(kSeed);
  return boost::multiprecision::miller_rabin_test(n, 25, gen);
}

inline BigInt pollard_brent(const BigInt& n, std::uint64_t c) {
  if (n % 2 == 0) return 2;
  auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
  BigInt x = 2, y = 2, d = 1;
  while (d == 1) {
    x = f(x);
    y = f(f(y));
    d = boost::multiprecision::gcd(x > y ? BigInt(x - y) : BigInt(y - x), n);
  }
  return d;
}

inline void factor_into(BigInt n, std::vector<BigInt>& out) {
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (probably_prime(n)) {
    out.push_back(n);
    return;
  }
  for (std::uint64_t c = 1;; ++c) {
    BigInt d = pollard_brent(n, c);
    if (d != n) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

inline unsigned multiplicative_order(const BigInt& r, const BigInt& p) {
  BigInt v = r % p;
  unsigned k = 1;
  while (v != 1) {
    v = (v * r) % p;
    ++k;
  }
  return k;
}

}  // namespace detail

/// Sorted distinct prime factors.
inline std::vector<BigInt> prime_factors(BigInt n) {
  if (n < 1) throw PreconditionError("prime_factors needs a positive integer");
  std::vector<BigInt> f;
  detail::factor_into(std::move(n), f);
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

/// Primes p | r^m - 1 with r of multiplicative order exactly m mod p, ascending.
inline std::vector<BigInt> primitive_prime_divisors(unsigned r, unsigned m) {
  if (!detail::probably_prime(r)) throw PreconditionError(std::to_string(r) + " is not prime");
  if (m < 2) throw PreconditionError("exponent must be at least 2");
  const BigInt base = r;
  BigInt rest = boost::multiprecision::pow(base, m) - 1;
  // Strip every prime that already divides some r^j - 1 with j < m.
  for (unsigned j = 1; j < m; ++j) {
    if (m % j != 0) continue;
    const BigInt lower = boost::multiprecision::pow(base, j) - 1;
    for (BigInt g = boost::multiprecision::gcd(rest, lower); g > 1; g = boost::multiprecision::gcd(rest, lower)) {
      rest /= g;
    }
  }
  std::vector<BigInt> out;
  for (const BigInt& p : prime_factors(rest)) {
    if (detail::multiplicative_order(base, p) != m) {
      throw InconsistencyError("non-primitive prime survived stripping");
    }
    out.push_back(p);
  }
  return out;
}

// ------------------------------------------------------------ sampling

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t word_length = 64;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// One independent stream per (seed, stream_id); platform-independent.
class WordSampler {
 public:
  WordSampler(const std::vector<Permutation>& generators, const SamplerConfig& cfg, std::uint64_t stream_id)
      : rng_(splitmix64(splitmix64(cfg.seed) ^ stream_id)), length_(cfg.word_length) {
    if (generators.empty()) throw PreconditionError("no generators");
    if (cfg.word_length == 0) throw PreconditionError("word_length must be positive");
    for (const auto& g : generators) {
      letters_.push_back(g);
      letters_.push_back(g.inverse());
    }
  }

  Permutation next() {
    Permutation w(letters_.front().degree());
    for (std::size_t i = 0; i < length_; ++i) w.then(letters_[bounded(letters_.size())]);
    return w;
  }

 private:
  std::size_t bounded(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = rng_();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
  }

  std::mt19937_64 rng_;
  std::size_t length_;
  std::vector<Permutation> letters_;
};

}  // namespace detail

inline constexpr std::size_t kInvolutionRetryCap = 10'000;
inline constexpr std::size_t kElementOfOrderRetryCap = 100'000;

/// Product of word_length uniformly chosen generators or inverses.
inline Permutation random_element(const std::vector<Permutation>& generators, const SamplerConfig& cfg,
                                  std::uint64_t stream_id) {
  return detail::WordSampler(generators, cfg, stream_id).next();
}

/// g^(|g|/2) for the first sampled g of even order.
inline Permutation random_involution(const std::vector<Permutation>& generators, const SamplerConfig& cfg,
                                     std::uint64_t stream_id) {
  detail::WordSampler s(generators, cfg, stream_id);
  for (std::size_t i = 0; i < kInvolutionRetryCap; ++i) {
    Permutation g = s.next();
    const BigInt o = order_of(g);
    if (o % 2 == 0) return power(g, o / 2);
  }
  throw LimitExceeded("no element of even order in " + std::to_string(kInvolutionRetryCap) +
                      " draws; the group probably has odd order");
}

/// g^(|g|/p) for the first sampled g with p dividing |g|; nullopt past the cap.
inline std::optional<Permutation> element_of_order(const std::vector<Permutation>& generators, unsigned p,
                                                   const SamplerConfig& cfg, std::uint64_t stream_id = 0) {
  detail::WordSampler s(generators, cfg, stream_id);
  for (std::size_t i = 0; i < kElementOfOrderRetryCap; ++i) {
    Permutation g = s.next();
    const BigInt o = order_of(g);
    if (o % p == 0) return power(g, o / p);
  }
  return std::nullopt;
}

struct GenerationEstimate {
  std::size_t successes = 0;
  std::size_t trials = 0;

  double value() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

/// Fraction of trials t whose involution y (stream t) gives <x, y> = G.
inline GenerationEstimate estimate_generation_probability(const std::vector<Permutation>& generators,
                                                          const Permutation& x, const SamplerConfig& cfg) {
  if (cfg.trials == 0) throw PreconditionError("trials must be positive");
  const StabilizerChain full = build_chain(generators, std::max<std::size_t>(x.degree(), kDefaultDegreeCap));
  if (!full.contains(x)) throw PreconditionError("x is not in the group");
  const BigInt target = full.order();
  GenerationEstimate est;
  est.trials = cfg.trials;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Permutation y = random_involution(generators, cfg, t);
    if (generates_group_of_order({x, y}, target, detail::splitmix64(cfg.seed + t))) ++est.successes;
  }
  return est;
}

// ------------------------------------------------------------ fixtures

struct GeneratorFixture {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

/// `degree n` then one permutation per line in cycle notation. Blank lines
/// and lines starting with '#' are skipped.
inline GeneratorFixture read_generator_fixture(std::istream& in) {
  GeneratorFixture f;
  std::string line;
  bool have_degree = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!have_degree) {
      std::istringstream ls(line);
      std::string tag;
      if (!(ls >> tag >> f.degree) || tag != "degree" || f.degree == 0) {
        throw ParseError("fixture line " + std::to_string(line_no) + ": expected 'degree n'");
      }
      have_degree = true;
      continue;
    }
    try {
      f.generators.push_back(parse_cycles(line, f.degree));
    } catch (const ParseError& e) {
      throw ParseError("fixture line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_degree) throw ParseError("fixture is missing the 'degree n' line");
  return f;
}

}  // namespace grr
