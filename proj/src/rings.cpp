#include "orbichar/rings.hpp"

namespace orbichar::series {

LambdaStructure<IntRing> int_zeta_lambda(const IntRing& ring) {
  LambdaStructure<IntRing> ls;
  ls.ring = &ring;
  ls.gen = [&ring](const long long& m, int n) {
    auto one_minus_t = TruncatedSeries<IntRing>::one(ring, n);
    one_minus_t.at(1) = -1;
    return power_standard_int(one_minus_t, -m);
  };
  return ls;
}

LambdaStructure<IntRing> int_config_lambda(const IntRing& ring) {
  LambdaStructure<IntRing> ls;
  ls.ring = &ring;
  ls.gen = [&ring](const long long& m, int n) {
    auto one_plus_t = TruncatedSeries<IntRing>::one(ring, n);
    one_plus_t.at(1) = 1;
    return power_standard_int(one_plus_t, m);
  };
  return ls;
}

LambdaStructure<LPolyRing> zeta_power_l(const LPolyRing& ring) {
  LambdaStructure<LPolyRing> ls;
  ls.ring = &ring;
  ls.gen = [&ring](const LPolynomial& m, int n) {
    auto acc = TruncatedSeries<LPolyRing>::one(ring, n);
    for (const auto& [q, c] : m.terms) {
      auto factor = TruncatedSeries<LPolyRing>::one(ring, n);
      factor.at(1) = -LPolynomial::power_of_l(q);  // 1 - L^q t
      acc = series_mul(acc, power_standard_int(factor, -c));
    }
    return acc;
  };
  return ls;
}

}  // namespace orbichar::series
