#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orbichar/group.hpp"
#include "orbichar/lpoly.hpp"

namespace orbichar::gset {

using grp::Elem;
using grp::GroupPtr;
using CellId = std::uint32_t;

// A finite set of dimension-weighted cells with a group action. A cell of
// weight d models a variety of class L^d on which its stabilizer acts
// trivially. Immutable after construction.
class GSet {
 public:
  GSet(GroupPtr group, std::vector<std::uint32_t> dims, std::vector<CellId> action);

  const GroupPtr& group() const { return group_; }
  std::size_t size() const { return dims_.size(); }
  std::uint32_t dim(CellId x) const { return dims_[x]; }
  const std::vector<std::uint32_t>& dims() const { return dims_; }
  CellId act(Elem g, CellId x) const { return action_[static_cast<std::size_t>(g) * size() + x]; }

  // g -> full image row
  std::span<const CellId> row(Elem g) const { return {action_.data() + static_cast<std::size_t>(g) * size(), size()}; }

  // action axiom check; exhaustive when |G|^2*|X| <= budget, sampled above
  void validate(std::size_t budget = 20000000) const;

 private:
  GroupPtr group_;
  std::vector<std::uint32_t> dims_;
  std::vector<CellId> action_;  // |G| x |X|
};

struct Orbit {
  std::vector<CellId> cells;  // sorted
  CellId basepoint = 0;       // minimal cell id
  grp::Subgroup stabilizer;   // stabilizer of the basepoint
  std::uint32_t dim = 0;
};

struct OrbitDecomposition {
  std::vector<Orbit> orbits;  // ordered by basepoint
};

// --- constructions ------------------------------------------------------------

// single cell of the given dimension, trivial action
GSet point(const GroupPtr& g, std::uint32_t dim = 0);
// cells with trivial action
GSet trivial_cells(const GroupPtr& g, const std::vector<std::uint32_t>& dims);
// G acting on itself by left translation
GSet regular_set(const GroupPtr& g);
// G acting on left cosets of the subgroup
GSet coset_space(const grp::Subgroup& s);
// action specified on the group's generators (images per generator), closed
// over the whole group; throws if the data is not an action
GSet from_generator_action(const GroupPtr& g, const std::vector<std::uint32_t>& dims,
                           const std::vector<std::vector<CellId>>& generator_images);

// --- operations ----------------------------------------------------------------

OrbitDecomposition quotient(const GSet& x);
LPolynomial quotient_class(const GSet& x);

// ids of cells fixed by every element of the set
std::vector<CellId> fixed_cells(const GSet& x, std::span<const Elem> elems);
// fixed cells as a GSet over the centralizer of the set (which preserves
// them); pass a subgroup explicitly to use a different invariant action
GSet fixed_set(const GSet& x, std::span<const Elem> elems);
GSet fixed_set(const GSet& x, std::span<const Elem> elems, const grp::Subgroup& acting);

GSet restrict_action(const GSet& x, const grp::Subgroup& s);
// subset of cells as a GSet over the same group; the subset must be invariant
GSet sub_gset(const GSet& x, std::span<const CellId> cells);

GSet disjoint_union(const GSet& x, const GSet& y);
GSet product(const GSet& x, const GSet& y);
GSet product_many(const std::vector<GSet>& factors);

// X^n over wreath(G,n); ((g),s) sends (x_1..x_n) to (g_i x_{s^-1(i)})_i
GSet wreath_power(const GSet& x, int n);
// tuples whose coordinates lie in pairwise distinct G-orbits
GSet big_diagonal_complement(const GSet& x, int n);
// tuples with at least two coordinates in one G-orbit
GSet big_diagonal(const GSet& x, int n);
// the same subsets as cell ids of wreath_power(x, n)
std::vector<CellId> big_diagonal_complement_cells(const GSet& x, int n);

// (H x Z) / (h,x)~(h g^-1, g x) with H acting on the left coordinate.
// When rep_pairs is given it receives, per induced cell, a representative
// pair (h, source cell).
GSet induced_gset(const GSet& z, const GroupPtr& h, const grp::GroupHom& embedding,
                  std::vector<std::pair<Elem, CellId>>* rep_pairs = nullptr);

// cell index of a tuple inside wreath_power(x, n)
CellId wreath_cell(const GSet& x, std::span<const CellId> tuple);
std::vector<CellId> wreath_cell_tuple(const GSet& x, int n, CellId cell);

// plain finite-set models: multisets / subsets of {0..m-1} of size n
std::vector<std::vector<std::uint32_t>> symmetric_power(std::size_t m, int n);
std::vector<std::vector<std::uint32_t>> configuration_space(std::size_t m, int n);

}  // namespace orbichar::gset
