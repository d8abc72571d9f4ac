#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "orbichar/gset.hpp"
#include "orbichar/group.hpp"

namespace orbichar::k0fgr {

using grp::GroupPtr;
using GroupClassId = std::uint32_t;

// Registry of pairwise non-isomorphic finite groups. Handles are equal iff
// the underlying groups are isomorphic (within the isomorphism bound).
// Supports concurrent insert-or-lookup.
class Registry {
 public:
  GroupClassId id_of(const GroupPtr& g);
  // also returns an isomorphism g -> representative (identity map when g is
  // the representative itself)
  std::pair<GroupClassId, grp::GroupIso> id_of_with_iso(const GroupPtr& g);
  GroupPtr rep(GroupClassId id) const;
  std::size_t count() const;

  // iso-class of the direct product of two registered classes (memoized)
  GroupClassId product(GroupClassId a, GroupClassId b);

  // chi^(k)(point, rep(id)) (memoized)
  long long chi_k_point(GroupClassId id, int k);

  // automorphism group of a representative, enumerated once
  const std::vector<grp::GroupIso>& automorphisms(GroupClassId id);

 private:
  mutable std::mutex mutex_;
  std::vector<GroupPtr> reps_;
  std::map<std::pair<GroupClassId, GroupClassId>, GroupClassId> product_memo_;
  std::map<std::pair<GroupClassId, int>, long long> chi_memo_;
  std::map<GroupClassId, std::vector<grp::GroupIso>> aut_memo_;
};

// Normal-form element of the modeled K0^fGr(Var): an integer combination of
// basis terms (group iso-class, dimension). The basis term (S, d) stands for
// the class of an L^d-cell with a transitive action whose stabilizer is S,
// i.e. for [(pt, S)] * L^d after the induction relation.
struct FgrClass {
  using Term = std::pair<GroupClassId, std::uint32_t>;
  std::map<Term, long long> terms;  // no zero coefficients

  bool is_zero() const { return terms.empty(); }
  FgrClass& add_term(GroupClassId g, std::uint32_t dim, long long coeff);

  friend bool operator==(const FgrClass& a, const FgrClass& b) { return a.terms == b.terms; }
  friend bool operator<(const FgrClass& a, const FgrClass& b) { return a.terms < b.terms; }
};

FgrClass fgr_zero();
FgrClass fgr_unit(Registry& reg);  // [(pt, trivial)]
FgrClass fgr_add(const FgrClass& a, const FgrClass& b);
FgrClass fgr_neg(const FgrClass& a);
FgrClass fgr_sub(const FgrClass& a, const FgrClass& b);
FgrClass fgr_mul(Registry& reg, const FgrClass& a, const FgrClass& b);
FgrClass fgr_scale(const FgrClass& a, long long c);
bool fgr_equals(const FgrClass& a, const FgrClass& b);
// all coefficients >= 0: the class lies in the image of the modeled semiring
bool is_effective(const FgrClass& a);

// normal form of a G-set: one term per orbit, (stabilizer iso-class, dim)
FgrClass class_of(Registry& reg, const gset::GSet& x);

// i: plain-variety classes (supported on the trivial group) into the ring
FgrClass map_i(Registry& reg, const FgrClass& plain);
// p: [(Z,G)] -> [Z/G]; collapses every stabilizer to the trivial group
FgrClass map_p(Registry& reg, const FgrClass& a);

// linear extension of (S, d) -> chi^(k)(pt, S)
long long chi_k_class(Registry& reg, const FgrClass& a, int k);

// Getzler-Pandharipande product: ind_{S_m x S_n}^{S_{m+n}} (X x Y).
// Both inputs must act through the canonical symmetric-group realizations.
gset::GSet gp_box(const gset::GSet& x, const gset::GSet& y);

std::string fgr_to_string(Registry& reg, const FgrClass& a);

}  // namespace orbichar::k0fgr
