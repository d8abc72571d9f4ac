#pragma once

#include <string>
#include <vector>

#include "orbichar/gset.hpp"
#include "orbichar/k0fgr.hpp"

namespace orbichar::euler {

// chi of the cell model: every cell contributes 1 (chi(L^d) = 1)
long long euler_char(const gset::GSet& x);

// chi^(k) as the normalized sum over pairwise-commuting (k+1)-tuples of
// chi(X^<g..>); requires k >= 1. Throws if the division by |G| is not exact.
long long chi_k_tuples(const gset::GSet& x, int k);

// chi^(k) by the recursion over conjugacy classes and centralizers;
// chi^(0)(X,G) = chi(X/G).
long long chi_k_recursive(const gset::GSet& x, int k);

struct InductionCheck {
  int k = 0;
  long long lhs_recursive = 0;  // chi^(k)(ind Z, H)
  long long rhs_recursive = 0;  // chi^(k)(Z, G)
  long long lhs_tuples = 0;     // k >= 1 only
  long long rhs_tuples = 0;
  bool ok = false;
};

struct LemmaCheck {
  grp::Elem rep = 0;  // class representative in G (source side)
  bool ok = false;
  std::string detail;
};

struct InductionReport {
  std::vector<InductionCheck> checks;
  std::vector<LemmaCheck> lemma;  // fixed-set decomposition at orbit-class level
  bool all_ok = false;
};

// Checks chi^(k)(ind_G^H Z, H) = chi^(k)(Z, G) for k = 0..kmax under both
// definitions, and the fixed-set decomposition of the induced space at the
// level of orbit-class multisets.
InductionReport verify_induction_invariance(const gset::GSet& z, const grp::GroupPtr& h,
                                            const grp::GroupHom& embedding, int kmax,
                                            k0fgr::Registry& reg);

}  // namespace orbichar::euler
