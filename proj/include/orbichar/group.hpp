#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbichar/config.hpp"
#include "orbichar/perm.hpp"

namespace orbichar::grp {

using Elem = std::uint32_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

enum class Realization { permutation, table, product, wreath, twisted, subgroup_view };

// A subgroup is a closed subset of a parent group's elements.
struct Subgroup {
  GroupPtr parent;
  std::vector<Elem> members;  // sorted ascending, closed under mul/inv

  std::size_t size() const { return members.size(); }
  bool contains(Elem g) const;
  // Position of a parent element inside `members`, or npos.
  std::size_t index_of(Elem g) const;
  // The subgroup materialized as a group of its own. Element i corresponds
  // to members[i].
  GroupPtr as_group() const;
};

struct ConjugacyClass {
  Elem representative;  // minimal-id member
  std::vector<Elem> members;
};

// A verified homomorphism between two groups, given elementwise.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<Elem> images;  // images[g] for every source element

  Elem operator()(Elem g) const { return images[g]; }
  bool is_homomorphism() const;
  bool is_injective() const;
  bool is_bijective() const;
};

using GroupIso = GroupHom;

// An explicit finite group. Every group carries a faithful permutation
// action used for multiplication and indexing; small groups additionally
// cache their full multiplication table. Elements are dense ids.
// Groups are immutable after construction; queries are safe for concurrent
// use.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  std::size_t size() const { return size_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const;
  Elem inverse(Elem a) const { return inverse_[a]; }
  Elem conjugate(Elem g, Elem h) const { return mul(mul(inverse(h), g), h); }  // h^-1 g h
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

  int degree() const { return degree_; }
  std::span<const std::uint16_t> perm_of(Elem g) const {
    return {images_.data() + static_cast<std::size_t>(g) * degree_, static_cast<std::size_t>(degree_)};
  }
  std::optional<Elem> find_perm(const Perm& p) const;

  const std::vector<Elem>& generators() const { return generators_; }
  // BFS parents: for each non-identity element, (previous element, generator index)
  // with elem = mul(prev, generators[gi]). Useful for extending generator data.
  const std::vector<std::pair<Elem, std::uint32_t>>& bfs_words() const;

  int element_order(Elem g) const;
  bool is_abelian() const;
  std::size_t center_size() const;
  // histogram: order -> count
  std::map<int, std::size_t> order_histogram() const;

  const std::vector<ConjugacyClass>& conjugacy_classes() const;
  Subgroup centralizer(Elem g) const;
  Subgroup centralizer_of_set(std::span<const Elem> gens) const;
  Subgroup subgroup_generated(std::span<const Elem> gens) const;
  Subgroup full_subgroup() const;

  Realization realization() const { return realization_; }
  const std::string& name() const { return name_; }
  std::uint64_t uid() const { return uid_; }

  // --- structural accessors -------------------------------------------------
  // product
  const std::vector<GroupPtr>& product_factors() const;
  std::vector<Elem> product_split(Elem g) const;
  Elem product_make(std::span<const Elem> parts) const;
  // wreath (G^n x| S_n); multiplication convention:
  //   ((g),s)*((g'),s') = ((g_i * g'_{s^-1(i)})_i, s s')   with s s' = "apply s' first"
  const GroupPtr& wreath_base() const;
  int wreath_n() const;
  std::vector<Elem> wreath_tuple(Elem g) const;
  Perm wreath_perm(Elem g) const;
  Elem wreath_make(std::span<const Elem> tuple, const Perm& sigma) const;
  // twisted product G_{{k_i}} = prod_i wreath(G x G_i, k_i)
  struct TwistedPart {
    GroupPtr factor;  // G_i
    int k = 0;
  };
  const GroupPtr& twisted_base() const;  // G
  const std::vector<TwistedPart>& twisted_parts() const;
  // subgroup view
  const GroupPtr& view_parent() const;
  const std::vector<Elem>& view_members() const;

  // --- validation -----------------------------------------------------------
  // identity/inverse laws on all elements; associativity exhaustive for
  // |G| <= 24, on seeded random triples above.
  void validate() const;

  // --- factories ------------------------------------------------------------
  static GroupPtr from_permutations(int degree, const std::vector<Perm>& gens, std::string name = "");
  static GroupPtr from_table(const std::vector<std::vector<Elem>>& mul, std::string name = "");
  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
  static GroupPtr product_many(std::vector<GroupPtr> factors);
  static GroupPtr wreath_product(const GroupPtr& base, int n);
  static GroupPtr twisted_product(const GroupPtr& g, const std::vector<std::pair<GroupPtr, int>>& parts);

  static GroupPtr trivial();
  static GroupPtr cyclic(int m);
  static GroupPtr symmetric(int n);
  static GroupPtr klein_four();
  static GroupPtr dihedral8();        // symmetries of a square, degree 4
  static GroupPtr named(const std::string& name);

 private:
  friend struct Subgroup;
  FiniteGroup() = default;
  static std::shared_ptr<FiniteGroup> make_from_perms(int degree, std::vector<Perm> elements,
                                                      std::vector<Elem> generators, Realization kind,
                                                      std::string name);
  void build_index();
  void finish_construction();

  std::size_t size_ = 0;
  Elem identity_ = 0;
  int degree_ = 0;
  std::vector<std::uint16_t> images_;  // size_*degree_, flattened permutations
  std::vector<Elem> inverse_;
  std::vector<Elem> generators_;
  std::vector<Elem> multable_;  // size_*size_ if cached, else empty
  Realization realization_ = Realization::permutation;
  std::string name_;
  std::uint64_t uid_ = 0;

  // packed index when degree <= 16, ordered fallback otherwise
  std::unordered_map<std::uint64_t, Elem> packed_index_;
  std::map<Perm, Elem> map_index_;

  std::vector<GroupPtr> factors_;             // product
  GroupPtr wreath_base_;                      // wreath
  int wreath_n_ = 0;
  GroupPtr twisted_base_;                     // twisted
  std::vector<TwistedPart> twisted_parts_;
  GroupPtr view_parent_;                      // subgroup view
  std::vector<Elem> view_members_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<ConjugacyClass> classes_cache_;
  mutable bool classes_done_ = false;
  mutable std::vector<int> order_cache_;
  mutable std::vector<std::pair<Elem, std::uint32_t>> bfs_cache_;
  mutable bool bfs_done_ = false;
};

// Isomorphism test by invariant pre-screen plus backtracking on generator
// images. Bounded by Config::iso_bound; throws "isomorphism test out of
// range" above it. Returns a verified isomorphism when one exists.
std::optional<GroupIso> are_isomorphic(const GroupPtr& g, const GroupPtr& h);

// All isomorphisms g -> h (automorphisms when g == h), capped.
std::vector<GroupIso> all_isomorphisms(const GroupPtr& g, const GroupPtr& h, std::size_t cap = 20000);

// Some injective homomorphism g -> h, if any.
std::optional<GroupHom> find_embedding(const GroupPtr& g, const GroupPtr& h);

// Embedding of a.as_group() into b.as_group() when a.members is a subset of
// b.members of the same parent.
GroupHom inclusion_hom(const Subgroup& a, const Subgroup& b);

// Visits every pairwise-commuting tuple of the given arity exactly once.
// Coordinate i+1 only ranges over the intersection of the centralizers of
// the earlier coordinates. Returns the number of tuples visited.
unsigned long long commuting_tuples(const FiniteGroup& g, int arity,
                                    const std::function<void(std::span<const Elem>)>& visitor = nullptr);

}  // namespace orbichar::grp
