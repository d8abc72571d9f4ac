#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbichar/rings.hpp"

using namespace orbichar;
using namespace orbichar::series;

namespace {

const IntRing zring;
const LPolyRing lring;

TruncatedSeries<IntRing> zseries(int n, std::vector<long long> coeffs) {
  return TruncatedSeries<IntRing>::from_coeffs(zring, n, std::move(coeffs));
}

TruncatedSeries<IntRing> random_unit_series(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long long> pick(-3, 3);
  std::vector<long long> c{1};
  for (int i = 1; i <= n; ++i) c.push_back(pick(rng));
  return zseries(n, std::move(c));
}

LPolynomial random_lpoly(std::mt19937_64& rng) {
  static const std::vector<Rational> qs = {Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  std::uniform_int_distribution<int> nterms(0, 2), pickq(0, static_cast<int>(qs.size()) - 1);
  std::uniform_int_distribution<long long> coeff(-2, 2);
  LPolynomial p;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) p += LPolynomial::power_of_l(qs[static_cast<std::size_t>(pickq(rng))], coeff(rng));
  return p;
}

TruncatedSeries<LPolyRing> random_lpoly_series(std::mt19937_64& rng, int n) {
  std::vector<LPolynomial> c{LPolynomial(1)};
  for (int i = 1; i <= n; ++i) c.push_back(random_lpoly(rng));
  return TruncatedSeries<LPolyRing>::from_coeffs(lring, n, std::move(c));
}

}  // namespace

TEST_CASE("basic series arithmetic") {
  // (1-t) * (1+t+t^2+...) = 1
  auto geo = zseries(6, {1, 1, 1, 1, 1, 1, 1});
  auto one_minus_t = zseries(6, {1, -1});
  CHECK(series_equal(series_mul(one_minus_t, geo), TruncatedSeries<IntRing>::one(zring, 6)));
  CHECK(series_equal(series_inverse(one_minus_t), geo));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto a = random_unit_series(rng, 6);
    CHECK(series_equal(series_inverse(series_inverse(a)), a));
  }

  auto sub = substitute_power(zseries(6, {1, 1}), 2);
  CHECK(series_equal(sub, zseries(6, {1, 0, 1})));

  CHECK_THROWS_AS(series_inverse(zseries(3, {2, 1})), std::invalid_argument);
}

TEST_CASE("standard integer power structure") {
  // (1+t)^{-1}
  auto a = zseries(6, {1, 1});
  auto inv = power_standard_int(a, -1);
  CHECK(series_equal(inv, zseries(6, {1, -1, 1, -1, 1, -1, 1})));
  // (1-t)^{-2} has coefficients n+1
  auto b = zseries(6, {1, -1});
  auto sq = power_standard_int(b, -2);
  for (int n = 0; n <= 6; ++n) CHECK(sq.at(n) == n + 1);
  // A^0 = 1, A^1 = A
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    auto r = random_unit_series(rng, 6);
    CHECK(series_equal(power_standard_int(r, 0), TruncatedSeries<IntRing>::one(zring, 6)));
    CHECK(series_equal(power_standard_int(r, 1), r));
  }
  // matches repeated multiplication
  for (int t = 0; t < 30; ++t) {
    auto r = random_unit_series(rng, 6);
    for (long long m : {-3LL, -1LL, 2LL, 4LL}) CHECK(series_equal(power_standard_int(r, m), series_pow_int(r, m)));
  }
}

TEST_CASE("power structure axioms over Z") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long long> exp(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_unit_series(rng, 6);
    auto b = random_unit_series(rng, 6);
    long long m = exp(rng), n = exp(rng);
    // (1) and (2)
    CHECK(series_equal(power_standard_int(a, 0), TruncatedSeries<IntRing>::one(zring, 6)));
    CHECK(series_equal(power_standard_int(a, 1), a));
    // (3) (AB)^m = A^m B^m
    CHECK(series_equal(power_standard_int(series_mul(a, b), m),
                       series_mul(power_standard_int(a, m), power_standard_int(b, m))));
    // (4) A^{m+n} = A^m A^n
    CHECK(series_equal(power_standard_int(a, m + n),
                       series_mul(power_standard_int(a, m), power_standard_int(a, n))));
    // (5) A^{mn} = (A^n)^m
    CHECK(series_equal(power_standard_int(a, m * n), power_standard_int(power_standard_int(a, n), m)));
    // (6) linear coefficient
    CHECK(power_standard_int(a, m).at(1) == m * a.at(1));
    // (7) substitution
    CHECK(series_equal(power_standard_int(substitute_power(a, 2), m),
                       substitute_power(power_standard_int(a, m), 2)));
  }
}

TEST_CASE("lambda factorization") {
  auto zeta = int_zeta_lambda(zring);
  // A = lambda_c(t) factorizes as b_1 = c
  for (long long c : {-2LL, 1LL, 3LL}) {
    auto lam = zeta.gen(c, 6);
    auto bs = lambda_factorize(lam, zeta);
    CHECK(bs[0] == c);
    for (std::size_t i = 1; i < bs.size(); ++i) CHECK(bs[i] == 0);
  }
  // A = 1 + t + t^2 under the zeta structure: b = (1, 0, -1, 0, ...)
  auto a = zseries(6, {1, 1, 1});
  auto bs = lambda_factorize(a, zeta);
  CHECK(bs == std::vector<long long>{1, 0, -1, 0, 0, 0});
  // reconstruction
  auto rebuilt = TruncatedSeries<IntRing>::one(zring, 6);
  for (int i = 1; i <= 6; ++i)
    if (bs[static_cast<std::size_t>(i - 1)] != 0)
      rebuilt = series_mul(rebuilt, substitute_power(zeta.gen(bs[static_cast<std::size_t>(i - 1)], 6), i));
  CHECK(series_equal(rebuilt, a));
  // A = 1 has all b_i = 0
  for (long long b : lambda_factorize(TruncatedSeries<IntRing>::one(zring, 6), zeta)) CHECK(b == 0);
  // reconstruction property on random series for both structures
  std::mt19937_64 rng(31);
  auto config = int_config_lambda(zring);
  for (int t = 0; t < 40; ++t) {
    auto r = random_unit_series(rng, 6);
    for (const auto* ls : {&zeta, &config}) {
      auto bv = lambda_factorize(r, *ls);
      auto re = TruncatedSeries<IntRing>::one(zring, 6);
      for (int i = 1; i <= 6; ++i)
        if (bv[static_cast<std::size_t>(i - 1)] != 0)
          re = series_mul(re, substitute_power(ls->gen(bv[static_cast<std::size_t>(i - 1)], 6), i));
      CHECK(series_equal(re, r));
    }
  }
}

TEST_CASE("factorization-based powers equal the closed form over Z") {
  auto zeta = int_zeta_lambda(zring);
  auto config = int_config_lambda(zring);
  // ((1-t)^{-1})^m = sum binom(m+n-1, n) t^n
  auto geo = zseries(6, {1, 1, 1, 1, 1, 1, 1});
  for (long long m : {1LL, 2LL, 5LL}) {
    auto p = power_via_lambda(geo, m, zeta);
    long long binom = 1;
    for (int n = 0; n <= 6; ++n) {
      if (n > 0) binom = binom * (m + n - 1) / n;
      CHECK(p.at(n) == binom);
    }
  }
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<long long> exp(-4, 4);
  for (int t = 0; t < 100; ++t) {
    auto a = random_unit_series(rng, 6);
    long long m = exp(rng);
    auto std_pow = power_standard_int(a, m);
    CHECK(series_equal(power_via_lambda(a, m, zeta), std_pow));
    CHECK(series_equal(power_via_lambda(a, m, config), std_pow));
  }
  // (A)^{m+n} = (A)^m (A)^n through the factorization route
  for (int t = 0; t < 30; ++t) {
    auto a = random_unit_series(rng, 5);
    long long m = exp(rng), n = exp(rng);
    CHECK(series_equal(power_via_lambda(a, m + n, zeta),
                       series_mul(power_via_lambda(a, m, zeta), power_via_lambda(a, n, zeta))));
  }
}

TEST_CASE("opposite lambda structures") {
  auto zeta = int_zeta_lambda(zring);
  auto config = int_config_lambda(zring);
  auto opp = opposite_lambda(zeta);
  // opposite of zeta is the configuration structure: (1 - (-t))^{-m} inverted
  for (long long m : {-3LL, -1LL, 1LL, 2LL, 4LL})
    CHECK(series_equal(opp.gen(m, 6), config.gen(m, 6)));
  // double opposite is the identity on generators
  auto oppopp = opposite_lambda(opp);
  for (long long m : {-2LL, 1LL, 3LL}) CHECK(series_equal(oppopp.gen(m, 6), zeta.gen(m, 6)));
  // opposite is additive-to-multiplicative
  for (long long m : {-2LL, 1LL, 3LL})
    for (long long n : {-1LL, 2LL})
      CHECK(series_equal(opp.gen(m + n, 6), series_mul(opp.gen(m, 6), opp.gen(n, 6))));
}

TEST_CASE("finite determinacy") {
  auto zeta = int_zeta_lambda(zring);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> exp(-3, 3);
  for (int t = 0; t < 30; ++t) {
    // A = 1 mod t^3
    auto a = zseries(6, {1, 0, 0, exp(rng), exp(rng), exp(rng), exp(rng)});
    long long m = exp(rng);
    auto p = power_via_lambda(a, m, zeta);
    CHECK(p.at(1) == 0);
    CHECK(p.at(2) == 0);
    auto q = power_standard_int(a, m);
    CHECK(q.at(1) == 0);
    CHECK(q.at(2) == 0);
  }
}

TEST_CASE("lambda structure on Z[L^q]") {
  auto zl = zeta_power_l(lring);
  // zeta_1(t) = (1-t)^{-1}
  auto z1 = zl.gen(LPolynomial(1), 5);
  for (int n = 0; n <= 5; ++n) CHECK(z1.at(n) == LPolynomial(1));
  // zeta_L(t) = 1 + L t + L^2 t^2 + ...
  auto zL = zl.gen(LPolynomial::power_of_l(Rational(1)), 5);
  for (int n = 0; n <= 5; ++n) {
    LPolynomial expect = LPolynomial::power_of_l(Rational(n));
    CHECK(zL.at(n) == expect);
  }
  // Kapranov identity: zeta_{L*m}(t) = zeta_m(L t)
  std::mt19937_64 rng(123);
  for (int t = 0; t < 25; ++t) {
    auto m = random_lpoly(rng);
    auto lhs = zl.gen(m * LPolynomial::power_of_l(Rational(1)), 5);
    auto rhs = zl.gen(m, 5);
    for (int n = 0; n <= 5; ++n) rhs.at(n) = rhs.at(n) * LPolynomial::power_of_l(Rational(n));
    CHECK(series_equal(lhs, rhs));
  }
  // additive-to-multiplicative
  for (int t = 0; t < 25; ++t) {
    auto m = random_lpoly(rng);
    auto n = random_lpoly(rng);
    CHECK(series_equal(zl.gen(m + n, 4), series_mul(zl.gen(m, 4), zl.gen(n, 4))));
  }
}

TEST_CASE("power structure axioms over Z[L^q]") {
  auto zl = zeta_power_l(lring);
  std::mt19937_64 rng(20240602);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_lpoly_series(rng, 6);
    auto b = random_lpoly_series(rng, 6);
    auto m = random_lpoly(rng);
    auto n = random_lpoly(rng);
    CHECK(series_equal(power_via_lambda(a, LPolynomial(0), zl), TruncatedSeries<LPolyRing>::one(lring, 6)));
    CHECK(series_equal(power_via_lambda(a, LPolynomial(1), zl), a));
    CHECK(series_equal(power_via_lambda(series_mul(a, b), m, zl),
                       series_mul(power_via_lambda(a, m, zl), power_via_lambda(b, m, zl))));
    CHECK(series_equal(power_via_lambda(a, m + n, zl),
                       series_mul(power_via_lambda(a, m, zl), power_via_lambda(a, n, zl))));
    // (5) with a ring exponent pair
    CHECK(series_equal(power_via_lambda(a, m * n, zl),
                       power_via_lambda(power_via_lambda(a, n, zl), m, zl)));
    // (6)
    CHECK(power_via_lambda(a, m, zl).at(1) == m * a.at(1));
    // (7)
    CHECK(series_equal(power_via_lambda(substitute_power(a, 2), m, zl),
                       substitute_power(power_via_lambda(a, m, zl), 2)));
  }
}
