#pragma once

#include <cstdint>
#include <vector>

namespace orbichar {

// A permutation of {0..d-1} in one-line notation: p[i] is the image of i.
using Perm = std::vector<std::uint16_t>;

inline Perm identity_perm(std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint16_t>(i);
  return p;
}

// (a*b)(x) = a(b(x)); b is applied first.
inline Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Perm invert(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint16_t>(i);
  return r;
}

inline bool is_identity(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

inline bool is_bijection(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  for (auto v : a) {
    if (v >= a.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Lexicographic rank of a permutation among all permutations of its degree.
inline std::uint64_t perm_rank(const Perm& p) {
  std::uint64_t rank = 0;
  const std::size_t n = p.size();
  std::uint64_t fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= i;
  for (std::size_t i = 0; i < n; ++i) {
    fact /= (n - i);
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += smaller * fact;
  }
  return rank;
}

inline Perm perm_unrank(std::size_t n, std::uint64_t rank) {
  std::vector<std::uint16_t> avail;
  for (std::size_t i = 0; i < n; ++i) avail.push_back(static_cast<std::uint16_t>(i));
  std::uint64_t fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= i;
  Perm p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    fact /= (n - i);
    std::size_t idx = static_cast<std::size_t>(rank / fact);
    rank %= fact;
    p.push_back(avail[idx]);
    avail.erase(avail.begin() + static_cast<long>(idx));
  }
  return p;
}

// Cycles of a permutation, each starting at its minimal point, sorted by that point.
inline std::vector<std::vector<std::uint16_t>> perm_cycles(const Perm& p) {
  std::vector<std::vector<std::uint16_t>> cycles;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::uint16_t> cyc;
    std::uint16_t x = static_cast<std::uint16_t>(i);
    while (!seen[x]) {
      seen[x] = true;
      cyc.push_back(x);
      x = p[x];
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace orbichar
