#pragma once

// Group specifications on the command line: A<n>, S<n>, C<n>, or a
// ';'-separated list of generators in cycle notation.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "grr/error.hpp"
#include "grr/perm.hpp"

namespace grr {

struct GroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

namespace detail {

inline std::string cycle_text(std::size_t from, std::size_t to) {
  std::string s = "(";
  for (std::size_t i = from; i <= to; ++i) s += (i > from ? "," : "") + std::to_string(i);
  return s + ")";
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = text.find(sep, start);
    out.emplace_back(detail::trim(text.substr(start, at == std::string_view::npos ? at : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

inline GroupSpec parse_group_spec(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw ParseError("empty group specification");
  GroupSpec g;
  g.name = std::string(text);
  const char kind = text.front();
  if ((kind == 'A' || kind == 'S' || kind == 'C') && text.size() > 1) {
    std::size_t n = 0;
    for (char c : text.substr(1)) {
      if (c < '0' || c > '9') throw ParseError("bad group name \"" + g.name + "\"");
      n = n * 10 + static_cast<std::size_t>(c - '0');
      if (n > kDefaultDegreeCap) throw ParseError("degree in \"" + g.name + "\" is too large");
    }
    g.degree = n;
    using detail::cycle_text;
    if (kind == 'C') {
      if (n < 1) throw ParseError("C<n> needs n >= 1");
      g.generators = {parse_cycles(cycle_text(1, n), n)};
    } else if (kind == 'S') {
      if (n < 2) throw ParseError("S<n> needs n >= 2");
      g.generators = {parse_cycles("(1,2)", n), parse_cycles(cycle_text(1, n), n)};
    } else {
      if (n < 3) throw ParseError("A<n> needs n >= 3");
      g.generators = {parse_cycles("(1,2,3)", n)};
      if (n > 3) g.generators.push_back(parse_cycles(n % 2 ? cycle_text(1, n) : cycle_text(2, n), n));
    }
    return g;
  }
  const auto parts = split(text, ';');
  for (const auto& p : parts) g.degree = std::max(g.degree, max_point_in(p));
  if (g.degree == 0) throw ParseError("generator list names no points: \"" + g.name + "\"");
  for (const auto& p : parts) {
    if (p.empty()) throw ParseError("empty generator in \"" + g.name + "\"");
    g.generators.push_back(parse_cycles(p, g.degree));
  }
  return g;
}

}  // namespace grr
