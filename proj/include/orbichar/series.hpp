#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace orbichar::series {

// Coefficient rings are objects exposing Value, zero/one, add/neg/mul and
// equality; series never read or write beyond their truncation order.
template <class R>
struct TruncatedSeries {
  const R* ring = nullptr;
  int order = 0;  // N: coefficients of t^0 .. t^N are significant
  std::vector<typename R::Value> c;

  static TruncatedSeries one(const R& r, int n) {
    TruncatedSeries s{&r, n, std::vector<typename R::Value>(static_cast<std::size_t>(n) + 1, r.zero())};
    s.c[0] = r.one();
    return s;
  }
  static TruncatedSeries zero(const R& r, int n) {
    return {&r, n, std::vector<typename R::Value>(static_cast<std::size_t>(n) + 1, r.zero())};
  }
  static TruncatedSeries from_coeffs(const R& r, int n, std::vector<typename R::Value> coeffs) {
    coeffs.resize(static_cast<std::size_t>(n) + 1, r.zero());
    return {&r, n, std::move(coeffs)};
  }

  const typename R::Value& at(int i) const { return c[static_cast<std::size_t>(i)]; }
  typename R::Value& at(int i) { return c[static_cast<std::size_t>(i)]; }

  bool has_unit_constant() const { return ring->equal(c[0], ring->one()); }
};

template <class R>
bool series_equal(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  if (a.order != b.order) return false;
  for (int i = 0; i <= a.order; ++i)
    if (!a.ring->equal(a.at(i), b.at(i))) return false;
  return true;
}

template <class R>
TruncatedSeries<R> series_add(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  TruncatedSeries<R> r = TruncatedSeries<R>::zero(*a.ring, a.order);
  for (int i = 0; i <= a.order; ++i) r.at(i) = a.ring->add(a.at(i), b.at(i));
  return r;
}

template <class R>
TruncatedSeries<R> series_mul(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
  const R& ring = *a.ring;
  TruncatedSeries<R> r = TruncatedSeries<R>::zero(ring, a.order);
  for (int i = 0; i <= a.order; ++i)
    for (int j = 0; i + j <= a.order && j <= b.order; ++j)
      r.at(i + j) = ring.add(r.at(i + j), ring.mul(a.at(i), b.at(j)));
  return r;
}

// multiplicative inverse; requires constant term 1
template <class R>
TruncatedSeries<R> series_inverse(const TruncatedSeries<R>& a) {
  const R& ring = *a.ring;
  if (!a.has_unit_constant()) throw std::invalid_argument("series inverse needs constant term 1");
  TruncatedSeries<R> r = TruncatedSeries<R>::zero(ring, a.order);
  r.at(0) = ring.one();
  for (int n = 1; n <= a.order; ++n) {
    typename R::Value acc = ring.zero();
    for (int i = 1; i <= n; ++i) acc = ring.add(acc, ring.mul(a.at(i), r.at(n - i)));
    r.at(n) = ring.neg(acc);
  }
  return r;
}

// t -> t^k
template <class R>
TruncatedSeries<R> substitute_power(const TruncatedSeries<R>& a, int k) {
  if (k < 1) throw std::invalid_argument("substitution power must be positive");
  TruncatedSeries<R> r = TruncatedSeries<R>::zero(*a.ring, a.order);
  for (int i = 0; i * k <= a.order; ++i) r.at(i * k) = a.at(i);
  return r;
}

// plain integer power by repeated multiplication (negative via inverse)
template <class R>
TruncatedSeries<R> series_pow_int(const TruncatedSeries<R>& a, long long m) {
  const R& ring = *a.ring;
  if (m < 0) return series_pow_int(series_inverse(a), -m);
  TruncatedSeries<R> acc = TruncatedSeries<R>::one(ring, a.order);
  TruncatedSeries<R> base = a;
  while (m > 0) {
    if (m & 1) acc = series_mul(acc, base);
    m >>= 1;
    if (m) base = series_mul(base, base);
  }
  return acc;
}

namespace detail {

// partitions of n into parts 1..maxpart as multiplicity vectors k[i] for part i+1
inline void partitions_rec(int n, int maxpart, std::vector<int>& mult,
                           const std::function<void(const std::vector<int>&)>& emit) {
  if (n == 0) {
    emit(mult);
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    ++mult[static_cast<std::size_t>(p - 1)];
    partitions_rec(n - p, p, mult, emit);
    --mult[static_cast<std::size_t>(p - 1)];
  }
}

}  // namespace detail

// The natural power structure over Z written as the closed multinomial
// formula for a power of a series, applied with coefficients in any
// commutative ring and an integer exponent:
//   (1 + a_1 t + ...)^m = 1 + sum_k ( sum_{ {k_i} : sum i k_i = k }
//       m(m-1)...(m - sum k_i + 1) / prod k_i!  *  prod a_i^{k_i} ) t^k
template <class R>
TruncatedSeries<R> power_standard_int(const TruncatedSeries<R>& a, long long m) {
  const R& ring = *a.ring;
  if (!a.has_unit_constant()) throw std::invalid_argument("power needs constant term 1");
  TruncatedSeries<R> r = TruncatedSeries<R>::one(ring, a.order);
  for (int k = 1; k <= a.order; ++k) {
    typename R::Value coeff = ring.zero();
    std::vector<int> mult(static_cast<std::size_t>(k), 0);
    detail::partitions_rec(k, k, mult, [&](const std::vector<int>& ks) {
      long long s = 0;
      for (int v : ks) s += v;
      // falling factorial over s! times the multinomial s! / prod k_i!
      __int128 fall = 1;
      for (long long i = 0; i < s; ++i) fall *= (m - i);
      __int128 sfact = 1;
      for (long long i = 2; i <= s; ++i) sfact *= i;
      __int128 binom = fall / sfact;  // exact: binomial(m, s)
      __int128 multi = sfact;
      for (int v : ks)
        for (long long i = 2; i <= v; ++i) multi /= i;
      long long weight = static_cast<long long>(binom * multi);
      if (weight == 0) return;
      typename R::Value prod = ring.one();
      for (int i = 0; i < k; ++i)
        for (int rep = 0; rep < ks[static_cast<std::size_t>(i)]; ++rep) prod = ring.mul(prod, a.at(i + 1));
      coeff = ring.add(coeff, ring.int_scale(prod, weight));
    });
    r.at(k) = coeff;
  }
  return r;
}

// A lambda-structure: an additive-to-multiplicative generator
// m -> lambda_m(t) = 1 + m t + ... evaluated to a requested order.
template <class R>
struct LambdaStructure {
  const R* ring = nullptr;
  std::function<TruncatedSeries<R>(const typename R::Value&, int)> gen;
};

// unique factorization A(t) = prod_i lambda_{b_i}(t^i)
template <class R>
std::vector<typename R::Value> lambda_factorize(const TruncatedSeries<R>& a, const LambdaStructure<R>& ls) {
  const R& ring = *a.ring;
  if (!a.has_unit_constant()) throw std::invalid_argument("factorization needs constant term 1");
  TruncatedSeries<R> remainder = a;
  std::vector<typename R::Value> bs;  // bs[i-1] = b_i
  for (int i = 1; i <= a.order; ++i) {
    typename R::Value bi = remainder.at(i);
    bs.push_back(bi);
    if (!ring.equal(bi, ring.zero())) {
      auto lam = substitute_power(ls.gen(bi, a.order), i);
      remainder = series_mul(remainder, series_inverse(lam));
    }
  }
  return bs;
}

// (A(t))^m := prod_i lambda_{m b_i}(t^i)
template <class R>
TruncatedSeries<R> power_via_lambda(const TruncatedSeries<R>& a, const typename R::Value& m,
                                    const LambdaStructure<R>& ls) {
  const R& ring = *a.ring;
  auto bs = lambda_factorize(a, ls);
  TruncatedSeries<R> r = TruncatedSeries<R>::one(ring, a.order);
  for (int i = 1; i <= a.order; ++i) {
    const auto& bi = bs[static_cast<std::size_t>(i - 1)];
    if (ring.equal(bi, ring.zero())) continue;
    auto mb = ring.mul(m, bi);
    if (ring.equal(mb, ring.zero())) continue;
    r = series_mul(r, substitute_power(ls.gen(mb, a.order), i));
  }
  return r;
}

// opposite structure: lambda'_a(t) = (lambda_a(-t))^(-1)
template <class R>
LambdaStructure<R> opposite_lambda(const LambdaStructure<R>& ls) {
  const R* ring = ls.ring;
  auto inner = ls.gen;
  LambdaStructure<R> out;
  out.ring = ring;
  out.gen = [ring, inner](const typename R::Value& m, int n) {
    auto lam = inner(m, n);
    for (int i = 1; i <= n; i += 2) lam.at(i) = ring->neg(lam.at(i));
    return series_inverse(lam);
  };
  return out;
}

}  // namespace orbichar::series
