#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbichar/gset.hpp"
#include "orbichar/k0fgr.hpp"
#include "orbichar/lpoly.hpp"
#include "orbichar/rings.hpp"

namespace orbichar::bundle {

using gset::CellId;
using gset::GSet;
using grp::Elem;
using grp::GroupPtr;

// An equivariant bundle over a G-set: per-cell fiber ranks together with the
// ages of fixing elements. Immutable.
class Bundle {
 public:
  virtual ~Bundle() = default;
  const GSet& space() const { return space_; }
  virtual int rank(CellId x) const = 0;
  // age of g at the cell x it fixes: the sum of the eigenphases (in [0,1))
  // of the fiber action
  virtual Rational age(CellId x, Elem g) const = 0;
  // eigenphases in a fixed per-cell line order when the fiber action of g at
  // x is diagonal in that order; empty optional otherwise
  virtual std::optional<std::vector<Rational>> diagonal_phases(CellId x, Elem g) const = 0;

 protected:
  explicit Bundle(GSet space) : space_(std::move(space)) {}
  GSet space_;
};

using BundlePtr = std::shared_ptr<const Bundle>;

// Bundle given by one-dimensional characters of orbit stabilizers:
// character value q stands for the eigenvalue exp(2 pi i q).
class CharacterBundle : public Bundle {
 public:
  struct OrbitData {
    CellId basepoint = 0;
    std::vector<Elem> stabilizer;                       // sorted parent ids
    std::vector<std::vector<Rational>> characters;      // [line][stabilizer index]
  };
  CharacterBundle(GSet space, std::vector<OrbitData> orbits);

  int rank(CellId x) const override;
  Rational age(CellId x, Elem g) const override;
  std::optional<std::vector<Rational>> diagonal_phases(CellId x, Elem g) const override;

  // phase of one fiber line at any cell of the orbit (g must fix x);
  // transport to the basepoint is by the minimal h with x = h . basepoint
  Rational line_phase(CellId x, std::size_t line, Elem g) const;
  // phase of the map E_x -> E_{gx} on one line, for arbitrary g, in the
  // transported bases
  Rational transition_phase(CellId x, std::size_t line, Elem g) const;
  const std::vector<OrbitData>& orbits() const { return orbits_; }
  std::size_t orbit_index(CellId x) const { return orbit_index_[x]; }

 private:
  std::vector<std::uint32_t> orbit_index_;
  std::vector<Elem> transport_;  // minimal h with x = h . basepoint(orbit(x))
  std::vector<OrbitData> orbits_;
};

std::shared_ptr<const CharacterBundle> zero_bundle(GSet space);

// E^n over wreath_power(base space, n): ages follow the cycle structure of
// the permutation part. For a cycle of length r with cycle product h fixing
// the base cell x, the eigenphases are (theta + m)/r for each base phase
// theta, m = 0..r-1, so the cycle contributes age_x(h) + rank(x)(r-1)/2.
class WreathPowerBundle : public Bundle {
 public:
  WreathPowerBundle(BundlePtr base, int n);
  int rank(CellId x) const override;
  Rational age(CellId x, Elem g) const override;
  std::optional<std::vector<Rational>> diagonal_phases(CellId x, Elem g) const override;
  const BundlePtr& base() const { return base_; }
  int power() const { return n_; }

 private:
  BundlePtr base_;
  int n_ = 0;
};

// --- stratifications and the generalized Euler characteristics ---------------

// fixed cells of g grouped by age value
std::map<Rational, std::vector<CellId>> age_stratify(const Bundle& b, Elem g);
// cells grouped by fiber rank
std::map<int, std::vector<CellId>> rank_stratify(const Bundle& b);

// [Z, E, G]^k with weights phi_1..: the order-k recursion over conjugacy
// classes, age strata and centralizers; the base case is the class of the
// quotient. The descent replaces the bundle over a stratum of g by the
// g-invariant subbundle of its restriction, which is what makes the
// wreath-power product identity hold for k >= 2 (for a tangent bundle this
// is exactly the tangent bundle of the fixed locus). Pass a cell subset to
// evaluate on an invariant subspace.
LPolynomial generalized_chi(const Bundle& b, int k, const std::vector<Rational>& phis);
LPolynomial generalized_chi(const Bundle& b, int k, const std::vector<Rational>& phis,
                            const std::vector<CellId>& cells);

// Phi_k(r) = phi_1 (r_1 - 1) + phi_2 r_1 (r_2 - 1) + ... +
//            phi_k r_1...r_{k-1} (r_k - 1)
Rational phi_k(const std::vector<int>& rs, const std::vector<Rational>& phis);

// --- classes with bundle data -------------------------------------------------

// Normal-form element of the modeled Grothendieck ring of varieties with
// equivariant bundles. A term is (stabilizer iso-class, dimension, fiber
// data); fiber data is either a canonical character matrix (minimized over
// automorphisms of the registry representative) or, when the stabilizer does
// not act diagonally, an opaque fingerprint of generalized chi values.
// Fingerprint equality is sound for inequality and heuristic for equality.
struct VectTerm {
  k0fgr::GroupClassId group = 0;
  std::uint32_t dim = 0;
  bool diagonal = true;
  std::string fiber_key;

  auto operator<=>(const VectTerm&) const = default;
};

struct VectClass {
  std::map<VectTerm, long long> terms;
  bool is_zero() const { return terms.empty(); }
  VectClass& add_term(const VectTerm& t, long long c);
  friend bool operator==(const VectClass& a, const VectClass& b) { return a.terms == b.terms; }
};

VectClass vect_unit(k0fgr::Registry& reg);
VectClass vect_add(const VectClass& a, const VectClass& b);
VectClass vect_neg(const VectClass& a);
VectClass vect_mul(k0fgr::Registry& reg, const VectClass& a, const VectClass& b);
bool vect_equals(const VectClass& a, const VectClass& b);
std::string vect_to_string(k0fgr::Registry& reg, const VectClass& a);
// forget the bundle: the underlying FgrClass
k0fgr::FgrClass vect_forget(const VectClass& a);

VectClass class_of_vect(k0fgr::Registry& reg, const Bundle& b);
VectClass class_of_vect(k0fgr::Registry& reg, const Bundle& b, const std::vector<CellId>& cells);

struct VectRing {
  k0fgr::Registry* reg = nullptr;
  using Value = VectClass;
  Value zero() const { return {}; }
  Value one() const { return vect_unit(*reg); }
  Value add(const Value& a, const Value& b) const { return vect_add(a, b); }
  Value neg(const Value& a) const { return vect_neg(a); }
  Value mul(const Value& a, const Value& b) const { return vect_mul(*reg, a, b); }
  Value int_scale(const Value& a, long long c) const {
    Value r;
    for (const auto& [t, coeff] : a.terms) r.add_term(t, coeff * c);
    return r;
  }
  bool equal(const Value& a, const Value& b) const { return vect_equals(a, b); }
};

// coefficient n: [(Z^n, E^n, G_n)]
series::TruncatedSeries<VectRing> zeta_vect_series(const VectRing& ring, const BundlePtr& base, int order);
// coefficient n: [(Z^n minus the big G-diagonal, E^n restricted, G_n)]
series::TruncatedSeries<VectRing> lambda_vect_series(const VectRing& ring, const BundlePtr& base, int order);

// --- constructions on character bundles ---------------------------------------

std::shared_ptr<const CharacterBundle> induced_bundle(const CharacterBundle& b, const GroupPtr& h,
                                                      const grp::GroupHom& embedding);
std::shared_ptr<const CharacterBundle> product_bundle(const CharacterBundle& a, const CharacterBundle& b);

// --- the wreath-power Macdonald-type identity ----------------------------------

struct WreathBundleReport {
  std::vector<LPolynomial> lhs;  // 1, [Z^n,E^n,G_n]^k for n = 1..N
  std::vector<LPolynomial> rhs;
  bool ok = false;
};

// LHS from first principles (conjugacy classes of the wreath groups, cycle
// ages, the order-k recursion); RHS as the product over ranks d of
//   ( prod_{r_1..r_k} (1 - L^{Phi_k(r) d/2} t^{r_1...r_k})^{r_2 r_3^2 ...} )
// raised to -[Z_d, E|, G]^k via the zeta power structure on Z[L^q].
WreathBundleReport verify_wreath_bundle_theorem(const BundlePtr& b, int k,
                                                const std::vector<Rational>& phis, int order);

}  // namespace orbichar::bundle
