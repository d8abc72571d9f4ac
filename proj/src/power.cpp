#include "orbichar/power.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace orbichar::power {

using gset::CellId;
using gset::GSet;
using grp::Elem;
using grp::FiniteGroup;
using grp::GroupPtr;
using k0fgr::FgrClass;

TruncatedSeries<FgrRing> kapranov_zeta_model(const FgrRing& ring, const GSet& z, int order) {
  auto s = TruncatedSeries<FgrRing>::one(ring, order);
  for (int n = 1; n <= order; ++n) s.at(n) = k0fgr::class_of(*ring.reg, gset::wreath_power(z, n));
  return s;
}

TruncatedSeries<FgrRing> lambda_series_model(const FgrRing& ring, const GSet& z, int order) {
  auto s = TruncatedSeries<FgrRing>::one(ring, order);
  for (int n = 1; n <= order; ++n)
    s.at(n) = k0fgr::class_of(*ring.reg, gset::big_diagonal_complement(z, n));
  return s;
}

namespace {

// basis term (S, d) realized as a single d-cell over the registry
// representative of S
GSet basis_gset(k0fgr::Registry& reg, const FgrClass::Term& term) {
  return gset::point(reg.rep(term.first), term.second);
}

}  // namespace

LambdaStructure<FgrRing> fgr_zeta_lambda(const FgrRing& ring) {
  LambdaStructure<FgrRing> ls;
  ls.ring = &ring;
  const FgrRing* rp = &ring;
  ls.gen = [rp](const FgrClass& m, int n) {
    auto acc = TruncatedSeries<FgrRing>::one(*rp, n);
    for (const auto& [term, coeff] : m.terms) {
      auto zeta = kapranov_zeta_model(*rp, basis_gset(*rp->reg, term), n);
      acc = series_mul(acc, series::series_pow_int(zeta, coeff));
    }
    return acc;
  };
  return ls;
}

LambdaStructure<FgrRing> fgr_config_lambda(const FgrRing& ring) {
  LambdaStructure<FgrRing> ls;
  ls.ring = &ring;
  const FgrRing* rp = &ring;
  // on a basis term the big-diagonal complement of a transitive set is empty
  // past degree one, so the generator is exactly 1 + b t
  ls.gen = [rp](const FgrClass& m, int n) {
    auto lin = TruncatedSeries<FgrRing>::one(*rp, n);
    if (n >= 1) {
      auto acc = TruncatedSeries<FgrRing>::one(*rp, n);
      for (const auto& [term, coeff] : m.terms) {
        auto one_plus_bt = TruncatedSeries<FgrRing>::one(*rp, n);
        FgrClass b;
        b.add_term(term.first, term.second, 1);
        one_plus_bt.at(1) = b;
        acc = series_mul(acc, series::series_pow_int(one_plus_bt, coeff));
      }
      return acc;
    }
    return lin;
  };
  return ls;
}

TruncatedSeries<FgrRing> effective_power(const FgrRing& ring, const std::vector<GSet>& coeffs,
                                         const GSet& exponent, int order) {
  auto& reg = *ring.reg;
  const GSet& m = exponent;
  const int s = static_cast<int>(coeffs.size());
  for (const auto& a : coeffs)
    if (a.group() == nullptr) throw std::invalid_argument("bad coefficient space");

  // orbit label per cell of M, for the big G-diagonal condition
  std::vector<CellId> orbit_label(m.size(), 0);
  {
    auto dec = gset::quotient(m);
    for (CellId i = 0; i < dec.orbits.size(); ++i)
      for (CellId c : dec.orbits[i].cells) orbit_label[c] = i;
  }

  auto result = TruncatedSeries<FgrRing>::one(ring, order);
  for (int k = 1; k <= order; ++k) {
    FgrClass coeff_k;
    std::vector<int> mult(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> enumerate = [&](int rem, int maxpart) {
      if (rem == 0) {
        // one partition {k_i}: reject parts beyond the coefficient list
        for (int i = s; i < k; ++i)
          if (mult[static_cast<std::size_t>(i)] > 0) return;
        // assemble the factors: part i contributes wreath_power(M x A_i, k_i)
        std::vector<GSet> parts;
        struct PartInfo {
          int ki;
          std::size_t pair_size;  // |M x A_i|
          std::size_t a_size;     // |A_i|
        };
        std::vector<PartInfo> info;
        for (int i = 0; i < k; ++i) {
          int ki = mult[static_cast<std::size_t>(i)];
          if (ki == 0) continue;
          const GSet& ai = coeffs[static_cast<std::size_t>(i)];
          parts.push_back(gset::wreath_power(gset::product(m, ai), ki));
          info.push_back({ki, m.size() * ai.size(), ai.size()});
        }
        if (parts.empty()) return;
        GSet full = gset::product_many(parts);
        // keep tuples whose M-coordinates lie in pairwise distinct G-orbits
        std::vector<CellId> keep;
        for (CellId c = 0; c < full.size(); ++c) {
          std::vector<CellId> part_cells(parts.size());
          std::size_t rem_idx = c;
          for (std::size_t p = parts.size(); p-- > 0;) {
            part_cells[p] = static_cast<CellId>(rem_idx % parts[p].size());
            rem_idx /= parts[p].size();
          }
          std::set<CellId> seen;
          bool distinct = true;
          for (std::size_t p = 0; p < parts.size() && distinct; ++p) {
            // slots of the part cell inside (M x A_i)^{k_i}, most significant first
            std::size_t cell = part_cells[p];
            std::vector<std::size_t> slots(static_cast<std::size_t>(info[p].ki));
            for (std::size_t sl = slots.size(); sl-- > 0;) {
              slots[sl] = cell % info[p].pair_size;
              cell /= info[p].pair_size;
            }
            for (std::size_t slot : slots) {
              CellId m_cell = static_cast<CellId>(slot / info[p].a_size);
              if (!seen.insert(orbit_label[m_cell]).second) {
                distinct = false;
                break;
              }
            }
          }
          if (distinct) keep.push_back(c);
        }
        if (!keep.empty()) coeff_k = k0fgr::fgr_add(coeff_k, k0fgr::class_of(reg, gset::sub_gset(full, keep)));
        return;
      }
      for (int p = std::min(rem, maxpart); p >= 1; --p) {
        ++mult[static_cast<std::size_t>(p - 1)];
        enumerate(rem - p, p);
        --mult[static_cast<std::size_t>(p - 1)];
      }
    };
    enumerate(k, k);
    result.at(k) = coeff_k;
  }
  return result;
}

TruncatedSeries<IntRing> macdonald_rhs(const IntRing& ring, long long chi, int k, int order) {
  auto prod = TruncatedSeries<IntRing>::one(ring, order);
  // enumerate r_1..r_k with product <= order; weight r_2 r_3^2 ... r_k^{k-1}
  std::vector<int> r(static_cast<std::size_t>(k), 1);
  std::function<void(int, long long)> rec = [&](int pos, long long p) {
    if (pos == k) {
      long long weight = 1;
      for (int j = 1; j < k; ++j)
        for (int rep = 0; rep < j; ++rep) weight *= r[static_cast<std::size_t>(j)];
      auto factor = TruncatedSeries<IntRing>::one(ring, order);
      if (p <= order) factor.at(static_cast<int>(p)) = -1;
      prod = series_mul(prod, series::series_pow_int(factor, weight));
      return;
    }
    for (long long v = 1; p * v <= order; ++v) {
      r[static_cast<std::size_t>(pos)] = static_cast<int>(v);
      rec(pos + 1, p * v);
    }
  };
  rec(0, 1);
  return series::power_standard_int(prod, -chi);
}

TamanoiReport verify_tamanoi(k0fgr::Registry& reg, const GSet& x, int k, int order) {
  (void)reg;
  TamanoiReport report;
  report.lhs.push_back(1);
  for (int n = 1; n <= order; ++n)
    report.lhs.push_back(euler::chi_k_recursive(gset::wreath_power(x, n), k));
  long long chi = euler::chi_k_recursive(x, k);
  IntRing ring;
  auto rhs = macdonald_rhs(ring, chi, k, order);
  for (int n = 0; n <= order; ++n) report.rhs.push_back(rhs.at(n));
  report.ok = report.lhs == report.rhs;
  return report;
}

DivergenceReport zeta_lambda_divergence(k0fgr::Registry& reg, const GSet& z) {
  DivergenceReport rep;
  rep.diagonal_class = k0fgr::class_of(reg, gset::big_diagonal(z, 2));
  auto s2 = FiniteGroup::symmetric(2);
  rep.product_class = k0fgr::class_of(reg, gset::product(z, gset::point(s2)));
  rep.differ = !k0fgr::fgr_equals(rep.diagonal_class, rep.product_class);

  FgrRing ring{&reg};
  auto one_plus_t = TruncatedSeries<FgrRing>::one(ring, 2);
  one_plus_t.at(1) = k0fgr::fgr_unit(reg);
  auto m = k0fgr::class_of(reg, z);
  rep.zeta_t2 = series::power_via_lambda(one_plus_t, m, fgr_zeta_lambda(ring)).at(2);
  rep.lambda_t2 = series::power_via_lambda(one_plus_t, m, fgr_config_lambda(ring)).at(2);
  return rep;
}

}  // namespace orbichar::power
