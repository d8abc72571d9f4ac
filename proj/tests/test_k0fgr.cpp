#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbichar/euler.hpp"
#include "orbichar/k0fgr.hpp"

using namespace orbichar;
using namespace orbichar::grp;
using namespace orbichar::gset;
using namespace orbichar::k0fgr;

namespace {

Subgroup order_subgroup(const GroupPtr& g, int order) {
  for (Elem e = 0; e < g->size(); ++e)
    if (g->element_order(e) == order) {
      std::vector<Elem> gens{e};
      return g->subgroup_generated(gens);
    }
  throw std::logic_error("no element of that order");
}

GroupHom subgroup_inclusion(const Subgroup& s) {
  GroupHom h;
  h.source = s.as_group();
  h.target = s.parent;
  h.images = s.members;
  return h;
}

// base groups of order <= max_order so that iterated products stay inside
// the isomorphism bound
FgrClass random_class(Registry& reg, std::mt19937_64& rng, std::size_t max_order = 6) {
  static const std::vector<GroupPtr> pool = {
      FiniteGroup::trivial(),  FiniteGroup::cyclic(2), FiniteGroup::cyclic(3),
      FiniteGroup::cyclic(4),  FiniteGroup::klein_four(), FiniteGroup::symmetric(3)};
  std::vector<GroupPtr> usable;
  for (const auto& g : pool)
    if (g->size() <= max_order) usable.push_back(g);
  std::uniform_int_distribution<int> nterms(1, 3), pick(0, static_cast<int>(usable.size()) - 1),
      dim(0, 2), coeff(-3, 3);
  FgrClass c;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    c.add_term(reg.id_of(usable[static_cast<std::size_t>(pick(rng))]), static_cast<std::uint32_t>(dim(rng)),
               coeff(rng));
  return c;
}

}  // namespace

TEST_CASE("registry identifies isomorphic groups") {
  Registry reg;
  auto a = reg.id_of(FiniteGroup::from_permutations(2, {{1, 0}}));
  auto b = reg.id_of(FiniteGroup::from_permutations(4, {{1, 0, 3, 2}}));
  CHECK(a == b);
  auto c = reg.id_of(FiniteGroup::cyclic(4));
  auto d = reg.id_of(FiniteGroup::klein_four());
  CHECK(c != d);
  CHECK(reg.id_of(FiniteGroup::wreath_product(FiniteGroup::cyclic(2), 2)) ==
        reg.id_of(FiniteGroup::dihedral8()));
}

TEST_CASE("class_of reduces orbits to stabilizers") {
  Registry reg;
  auto s3 = FiniteGroup::symmetric(3);
  auto c2sub = order_subgroup(s3, 2);
  // S3/C2 under S3 has the class of a point under C2
  auto cosets = coset_space(c2sub);
  auto cls = class_of(reg, cosets);
  FgrClass expect;
  expect.add_term(reg.id_of(FiniteGroup::cyclic(2)), 0, 1);
  CHECK(fgr_equals(cls, expect));

  // regular set reduces to the unit
  CHECK(fgr_equals(class_of(reg, regular_set(s3)), fgr_unit(reg)));

  // two fixed points under C2
  auto c2 = FiniteGroup::cyclic(2);
  auto two = trivial_cells(c2, {0, 0});
  FgrClass expect2;
  expect2.add_term(reg.id_of(c2), 0, 2);
  CHECK(fgr_equals(class_of(reg, two), expect2));

  // equality is invariant under cell relabeling: same space built twice
  auto two_b = trivial_cells(c2, {0, 0});
  CHECK(fgr_equals(class_of(reg, two_b), expect2));
}

TEST_CASE("induction invariance of class_of") {
  Registry reg;
  auto s3 = FiniteGroup::symmetric(3);
  struct Case {
    GroupPtr big;
    Subgroup small;
  };
  auto c4 = FiniteGroup::cyclic(4);
  std::vector<Case> cases;
  cases.push_back({s3, order_subgroup(s3, 2)});
  cases.push_back({s3, order_subgroup(s3, 3)});
  cases.push_back({c4, order_subgroup(c4, 2)});
  for (auto& [big, small] : cases) {
    auto emb = subgroup_inclusion(small);
    auto g = emb.source;
    for (auto z : {point(g), regular_set(g), disjoint_union(point(g), regular_set(g))}) {
      auto ind = induced_gset(z, big, emb);
      CHECK(fgr_equals(class_of(reg, z), class_of(reg, ind)));
    }
  }
}

TEST_CASE("ring structure") {
  Registry reg;
  std::mt19937_64 rng(7);
  auto one = fgr_unit(reg);
  for (int trial = 0; trial < 40; ++trial) {
    // triple products of base groups of order <= 4 stay within the bound
    auto a = random_class(reg, rng, 4);
    auto b = random_class(reg, rng, 4);
    auto c = random_class(reg, rng, 4);
    CHECK(fgr_equals(fgr_mul(reg, a, one), a));
    CHECK(fgr_equals(fgr_add(a, b), fgr_add(b, a)));
    CHECK(fgr_equals(fgr_mul(reg, a, b), fgr_mul(reg, b, a)));
    CHECK(fgr_equals(fgr_mul(reg, fgr_mul(reg, a, b), c), fgr_mul(reg, a, fgr_mul(reg, b, c))));
    CHECK(fgr_equals(fgr_mul(reg, a, fgr_add(b, c)),
                     fgr_add(fgr_mul(reg, a, b), fgr_mul(reg, a, c))));
    CHECK(fgr_equals(fgr_add(a, fgr_neg(a)), fgr_zero()));
  }

  // (C2,0)*(C2,0) = (C2xC2,0), not (C4,0)
  FgrClass c2term;
  c2term.add_term(reg.id_of(FiniteGroup::cyclic(2)), 0, 1);
  auto sq = fgr_mul(reg, c2term, c2term);
  FgrClass v4term, c4term;
  v4term.add_term(reg.id_of(FiniteGroup::klein_four()), 0, 1);
  c4term.add_term(reg.id_of(FiniteGroup::cyclic(4)), 0, 1);
  CHECK(fgr_equals(sq, v4term));
  CHECK_FALSE(fgr_equals(sq, c4term));

  // L * L^2 = L^3 on the trivial group
  FgrClass l1, l2, l3;
  auto triv = reg.id_of(FiniteGroup::trivial());
  l1.add_term(triv, 1, 1);
  l2.add_term(triv, 2, 1);
  l3.add_term(triv, 3, 1);
  CHECK(fgr_equals(fgr_mul(reg, l1, l2), l3));

  // (C2,0) != 2*(trivial,0)
  FgrClass two_pts;
  two_pts.add_term(triv, 0, 2);
  CHECK_FALSE(fgr_equals(c2term, two_pts));
}

TEST_CASE("class_of is additive and multiplicative") {
  Registry reg;
  auto s3 = FiniteGroup::symmetric(3);
  auto c2 = FiniteGroup::cyclic(2);
  auto x = coset_space(order_subgroup(s3, 2));
  auto y = regular_set(s3);
  CHECK(fgr_equals(class_of(reg, disjoint_union(x, y)),
                   fgr_add(class_of(reg, x), class_of(reg, y))));
  auto z = trivial_cells(c2, {0, 1});
  CHECK(fgr_equals(class_of(reg, product(x, z)),
                   fgr_mul(reg, class_of(reg, x), class_of(reg, z))));
  CHECK(fgr_equals(class_of(reg, product(y, z)),
                   fgr_mul(reg, class_of(reg, y), class_of(reg, z))));
}

TEST_CASE("maps i and p") {
  Registry reg;
  auto triv = reg.id_of(FiniteGroup::trivial());
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(0, 3), coeff(-4, 4);
  for (int t = 0; t < 20; ++t) {
    FgrClass plain;
    for (int i = 0; i < 3; ++i) plain.add_term(triv, static_cast<std::uint32_t>(dim(rng)), coeff(rng));
    CHECK(fgr_equals(map_p(reg, map_i(reg, plain)), plain));
  }
  FgrClass c2term;
  c2term.add_term(reg.id_of(FiniteGroup::cyclic(2)), 0, 1);
  FgrClass pt;
  pt.add_term(triv, 0, 1);
  CHECK(fgr_equals(map_p(reg, c2term), pt));
  // p of a regular-set class is 1 (one orbit)
  CHECK(fgr_equals(map_p(reg, class_of(reg, regular_set(FiniteGroup::symmetric(3)))), fgr_unit(reg)));
  // map_i rejects non-plain input
  CHECK_THROWS_AS(map_i(reg, c2term), std::invalid_argument);
}

TEST_CASE("gp_box matches ring multiplication") {
  Registry reg;
  // random small S_m-, S_n-sets with m + n <= 4
  struct Sp {
    int m;
    GSet x;
  };
  std::vector<Sp> spaces;
  for (int m = 1; m <= 2; ++m) {
    auto sm = FiniteGroup::symmetric(m);
    spaces.push_back({m, point(sm)});
    spaces.push_back({m, regular_set(sm)});
    spaces.push_back({m, trivial_cells(sm, {0, 1})});
  }
  for (const auto& a : spaces)
    for (const auto& b : spaces) {
      if (a.m + b.m > 4) continue;
      auto boxed = gp_box(a.x, b.x);
      // |box| = binomial(m+n, n) * |X| * |Y|
      auto binom = [](int n, int k) {
        long long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
        return r;
      };
      CHECK(boxed.size() ==
            static_cast<std::size_t>(binom(a.m + b.m, b.m)) * a.x.size() * b.x.size());
      CHECK(fgr_equals(class_of(reg, boxed),
                       fgr_mul(reg, class_of(reg, a.x), class_of(reg, b.x))));
    }
}

TEST_CASE("chi_k_class") {
  Registry reg;
  // chi^(k)(1) = 1
  for (int k = 0; k <= 3; ++k) CHECK(chi_k_class(reg, fgr_unit(reg), k) == 1);
  // chi^(1)((S3,0)) = number of classes of S3 = 3; chi^(2) = 8
  FgrClass s3term;
  s3term.add_term(reg.id_of(FiniteGroup::symmetric(3)), 0, 1);
  CHECK(chi_k_class(reg, s3term, 1) == 3);
  CHECK(chi_k_class(reg, s3term, 2) == 8);
  // dims contribute factor 1
  FgrClass s3dim;
  s3dim.add_term(reg.id_of(FiniteGroup::symmetric(3)), 2, 1);
  CHECK(chi_k_class(reg, s3dim, 1) == 3);
}

TEST_CASE("chi_k_class of class_of agrees with the direct computation") {
  Registry reg;
  auto s3 = FiniteGroup::symmetric(3);
  auto c2 = FiniteGroup::cyclic(2);
  std::vector<GSet> battery = {
      point(c2),
      regular_set(c2),
      point(s3),
      regular_set(s3),
      coset_space(order_subgroup(s3, 2)),
      disjoint_union(point(s3), coset_space(order_subgroup(s3, 3))),
      product(point(c2), regular_set(c2)),
  };
  for (const auto& x : battery)
    for (int k = 0; k <= 3; ++k)
      CHECK(chi_k_class(reg, class_of(reg, x), k) == euler::chi_k_recursive(x, k));
}

TEST_CASE("chi_k_class is multiplicative") {
  Registry reg;
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    auto a = random_class(reg, rng);
    auto b = random_class(reg, rng);
    for (int k = 0; k <= 3; ++k)
      CHECK(chi_k_class(reg, fgr_mul(reg, a, b), k) ==
            chi_k_class(reg, a, k) * chi_k_class(reg, b, k));
  }
}

TEST_CASE("effectiveness predicate") {
  Registry reg;
  auto cls = class_of(reg, regular_set(FiniteGroup::symmetric(3)));
  CHECK(is_effective(cls));
  CHECK_FALSE(is_effective(fgr_neg(cls)));
  CHECK(is_effective(fgr_zero()));
}

TEST_CASE("chi values separate the registry groups used in the tests") {
  // recorded as evidence, not proof: for every pair of distinct registry
  // classes built from the named battery, some chi^(k) with k <= 3 differs
  Registry reg;
  for (auto name : {"trivial", "C2", "C3", "C4", "V4", "S3", "D4", "S4"})
    (void)reg.id_of(FiniteGroup::named(name));
  (void)reg.id_of(FiniteGroup::wreath_product(FiniteGroup::cyclic(2), 2));
  (void)reg.id_of(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)));
  for (GroupClassId a = 0; a < reg.count(); ++a)
    for (GroupClassId b = a + 1; b < reg.count(); ++b) {
      bool separated = false;
      for (int k = 0; k <= 3 && !separated; ++k)
        separated = reg.chi_k_point(a, k) != reg.chi_k_point(b, k);
      CHECK(separated);
    }
}

TEST_CASE("registry supports concurrent insert-or-lookup") {
  Registry reg;
  std::vector<std::thread> workers;
  std::vector<GroupClassId> ids(8, 0);
  for (int t = 0; t < 8; ++t)
    workers.emplace_back([&reg, &ids, t]() {
      auto g = t % 2 == 0 ? FiniteGroup::klein_four()
                          : FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
      ids[static_cast<std::size_t>(t)] = reg.id_of(g);
    });
  for (auto& w : workers) w.join();
  for (int t = 1; t < 8; ++t) CHECK(ids[static_cast<std::size_t>(t)] == ids[0]);
}

TEST_CASE("registry bound enforcement") {
  Registry reg;
  auto& cfg = global_config();
  auto saved = cfg.iso_bound;
  cfg.iso_bound = 4;
  CHECK_THROWS_WITH((void)reg.id_of(FiniteGroup::symmetric(3)), "isomorphism bound exceeded");
  cfg.iso_bound = saved;
}
