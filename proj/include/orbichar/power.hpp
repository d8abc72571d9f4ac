#pragma once

#include <string>
#include <vector>

#include "orbichar/euler.hpp"
#include "orbichar/rings.hpp"

namespace orbichar::power {

using series::FgrRing;
using series::IntRing;
using series::LambdaStructure;
using series::TruncatedSeries;

// zeta_{(Z,G)}(t): coefficient n is [(Z^n, G_n)]
TruncatedSeries<FgrRing> kapranov_zeta_model(const FgrRing& ring, const gset::GSet& z, int order);

// lambda_{(Z,G)}(t): coefficient n is [(Z^n minus the big G-diagonal, G_n)]
TruncatedSeries<FgrRing> lambda_series_model(const FgrRing& ring, const gset::GSet& z, int order);

// The two lambda-structures on the modeled ring, extended
// additively-to-multiplicatively from basis terms (S, d): the zeta structure
// takes wreath powers of a d-cell, the configuration structure is 1 + b t on
// basis terms.
LambdaStructure<FgrRing> fgr_zeta_lambda(const FgrRing& ring);
LambdaStructure<FgrRing> fgr_config_lambda(const FgrRing& ring);

// Effective power (A(t))^{[(M,G)]} for A(t) = 1 + [A_1] t + ... + [A_s] t^s:
// the coefficient of t^k is the sum over {k_i : sum i k_i = k} of the class
// of (M^{sum k_i} minus the big G-diagonal) x prod A_i^{k_i} under the
// twisted product group, with each S_{k_i} permuting its block of M- and
// A_i-coordinates simultaneously.
TruncatedSeries<FgrRing> effective_power(const FgrRing& ring, const std::vector<gset::GSet>& coeffs,
                                         const gset::GSet& exponent, int order);

// prod over r_1..r_k >= 1 with r_1...r_k <= N of
//   (1 - t^{r_1...r_k})^{r_2 r_3^2 ... r_k^{k-1}}, raised to -chi
TruncatedSeries<IntRing> macdonald_rhs(const IntRing& ring, long long chi, int k, int order);

struct TamanoiReport {
  std::vector<long long> lhs;  // chi^(k)(X^n, G_n), n = 0..N (1 at n=0)
  std::vector<long long> rhs;
  bool ok = false;
};

// chi^(k)(wreath_power(X, n)) against the Macdonald-type series of
// chi^(k)(X, G), coefficient by coefficient
TamanoiReport verify_tamanoi(k0fgr::Registry& reg, const gset::GSet& x, int k, int order);

struct DivergenceReport {
  k0fgr::FgrClass diagonal_class;     // [(big G-diagonal in Z^2, G_2)]
  k0fgr::FgrClass product_class;      // [(Z, G x S_2)], S_2 acting trivially
  bool differ = false;
  k0fgr::FgrClass zeta_t2;            // t^2 coefficient of (1+t)^[(Z,G)] in the zeta structure
  k0fgr::FgrClass lambda_t2;          // t^2 coefficient in the lambda structure
};

// the t^2 comparison between the zeta- and lambda-power structures
DivergenceReport zeta_lambda_divergence(k0fgr::Registry& reg, const gset::GSet& z);

}  // namespace orbichar::power
