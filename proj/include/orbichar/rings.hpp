#pragma once

#include "orbichar/k0fgr.hpp"
#include "orbichar/lpoly.hpp"
#include "orbichar/rational.hpp"
#include "orbichar/series.hpp"

namespace orbichar::series {

struct IntRing {
  using Value = long long;
  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value add(Value a, Value b) const { return a + b; }
  Value neg(Value a) const { return -a; }
  Value mul(Value a, Value b) const { return a * b; }
  Value int_scale(Value a, long long c) const { return a * c; }
  bool equal(Value a, Value b) const { return a == b; }
};

struct RatRing {
  using Value = Rational;
  Value zero() const { return Rational(0); }
  Value one() const { return Rational(1); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value int_scale(const Value& a, long long c) const { return a * Rational(c); }
  bool equal(const Value& a, const Value& b) const { return a == b; }
};

struct LPolyRing {
  using Value = LPolynomial;
  Value zero() const { return LPolynomial(); }
  Value one() const { return LPolynomial(1); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value int_scale(const Value& a, long long c) const { return a * LPolynomial(c); }
  bool equal(const Value& a, const Value& b) const { return a == b; }
};

struct FgrRing {
  k0fgr::Registry* reg = nullptr;
  using Value = k0fgr::FgrClass;
  Value zero() const { return k0fgr::fgr_zero(); }
  Value one() const { return k0fgr::fgr_unit(*reg); }
  Value add(const Value& a, const Value& b) const { return k0fgr::fgr_add(a, b); }
  Value neg(const Value& a) const { return k0fgr::fgr_neg(a); }
  Value mul(const Value& a, const Value& b) const { return k0fgr::fgr_mul(*reg, a, b); }
  Value int_scale(const Value& a, long long c) const { return k0fgr::fgr_scale(a, c); }
  bool equal(const Value& a, const Value& b) const { return k0fgr::fgr_equals(a, b); }
};

// lambda_m(t) = (1-t)^{-m} over Z: the Kapranov zeta structure
LambdaStructure<IntRing> int_zeta_lambda(const IntRing& ring);
// lambda_m(t) = (1+t)^m over Z: the configuration-space structure
LambdaStructure<IntRing> int_config_lambda(const IntRing& ring);

// lambda structure on Z[L^Q] generated by zeta_{c L^q}(t) = (1 - L^q t)^{-c},
// extended additively-to-multiplicatively over terms
LambdaStructure<LPolyRing> zeta_power_l(const LPolyRing& ring);

}  // namespace orbichar::series
