#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "orbichar/gset.hpp"

using namespace orbichar;
using namespace orbichar::grp;
using namespace orbichar::gset;

namespace {

Subgroup transposition_subgroup(const GroupPtr& s3) {
  for (Elem e = 0; e < s3->size(); ++e)
    if (s3->element_order(e) == 2) {
      std::vector<Elem> g{e};
      return s3->subgroup_generated(g);
    }
  throw std::logic_error("no transposition");
}

}  // namespace

TEST_CASE("regular set and trivial cells") {
  auto s3 = FiniteGroup::symmetric(3);
  auto reg = regular_set(s3);
  reg.validate();
  CHECK(reg.size() == 6);
  auto dec = quotient(reg);
  REQUIRE(dec.orbits.size() == 1);
  CHECK(dec.orbits[0].stabilizer.size() == 1);
  CHECK(quotient_class(reg) == LPolynomial(1));

  auto triv = trivial_cells(s3, {0, 0, 0});
  CHECK(quotient(triv).orbits.size() == 3);
}

TEST_CASE("coset space of S3 mod C2") {
  auto s3 = FiniteGroup::symmetric(3);
  auto c2 = transposition_subgroup(s3);
  auto cosets = coset_space(c2);
  cosets.validate();
  CHECK(cosets.size() == 3);
  auto dec = quotient(cosets);
  REQUIRE(dec.orbits.size() == 1);
  CHECK(dec.orbits[0].stabilizer.size() == 2);

  // the generating transposition fixes exactly one coset
  Elem t = c2.members[1];
  std::vector<Elem> tt{t};
  CHECK(fixed_cells(cosets, tt).size() == 1);

  // a 3-cycle fixes nothing
  for (Elem e = 0; e < 6; ++e)
    if (s3->element_order(e) == 3) {
      std::vector<Elem> cc{e};
      CHECK(fixed_cells(cosets, cc).empty());
      break;
    }
}

TEST_CASE("fixed sets") {
  auto c2 = FiniteGroup::cyclic(2);
  auto reg = regular_set(c2);
  std::vector<Elem> id{c2->identity()};
  auto fixed_id = fixed_set(reg, id);
  CHECK(fixed_id.size() == reg.size());
  CHECK(fixed_id.group()->size() == 2);  // whole centralizer
  std::vector<Elem> g{1};
  CHECK(fixed_cells(reg, g).empty());

  // union distributes
  auto s3 = FiniteGroup::symmetric(3);
  auto x = coset_space(transposition_subgroup(s3));
  auto y = regular_set(s3);
  auto u = disjoint_union(x, y);
  for (Elem e = 0; e < 6; ++e) {
    std::vector<Elem> ee{e};
    CHECK(fixed_cells(u, ee).size() == fixed_cells(x, ee).size() + fixed_cells(y, ee).size());
  }
}

TEST_CASE("restrict_action") {
  auto s3 = FiniteGroup::symmetric(3);
  auto reg = regular_set(s3);
  auto whole = restrict_action(reg, s3->full_subgroup());
  CHECK(whole.size() == reg.size());
  CHECK(quotient(whole).orbits.size() == 1);

  // restrict the regular S3-set to C3: two free orbits
  for (Elem e = 0; e < 6; ++e)
    if (s3->element_order(e) == 3) {
      std::vector<Elem> gens{e};
      auto c3 = s3->subgroup_generated(gens);
      auto r = restrict_action(reg, c3);
      r.validate();
      auto dec = quotient(r);
      CHECK(dec.orbits.size() == 2);
      for (const auto& orb : dec.orbits) CHECK(orb.stabilizer.size() == 1);
      break;
    }

  // restriction to the trivial subgroup fixes everything
  std::vector<Elem> none;
  auto triv = s3->subgroup_generated(none);
  auto r0 = restrict_action(reg, triv);
  CHECK(quotient(r0).orbits.size() == 6);
}

TEST_CASE("products add dimensions") {
  auto c2 = FiniteGroup::cyclic(2);
  auto x = trivial_cells(c2, {1});
  auto y = trivial_cells(FiniteGroup::cyclic(3), {2});
  auto p = product(x, y);
  p.validate();
  CHECK(p.size() == 1);
  CHECK(p.dim(0) == 3);

  auto reg = regular_set(c2);
  auto q = product(reg, y);
  CHECK(q.size() == 2);
  CHECK(q.group()->size() == 6);

  // X x point = X up to relabeling
  auto pt = point(FiniteGroup::trivial());
  auto xpt = product(reg, pt);
  CHECK(xpt.size() == reg.size());
  CHECK(quotient(xpt).orbits.size() == quotient(reg).orbits.size());
}

TEST_CASE("wreath powers") {
  auto c2 = FiniteGroup::cyclic(2);
  auto pt = point(c2);
  auto w = wreath_power(pt, 3);
  CHECK(w.size() == 1);
  CHECK(w.group()->size() == 48);
  w.validate();

  // free C2-set of size 2, squared: transitive under wr(C2,2)
  auto reg = regular_set(c2);
  auto w2 = wreath_power(reg, 2);
  w2.validate();
  CHECK(w2.size() == 4);
  auto dec = quotient(w2);
  CHECK(dec.orbits.size() == 1);

  // action axioms exhaustively for |X| <= 3, n <= 3
  auto s3 = FiniteGroup::symmetric(3);
  auto cosets = coset_space(transposition_subgroup(s3));
  for (int n = 1; n <= 3; ++n) {
    auto wp = wreath_power(reg, n);
    wp.validate();
  }
  wreath_power(cosets, 2).validate();

  // dims add across coordinates
  auto weighted = trivial_cells(c2, {1, 2});
  auto wp = wreath_power(weighted, 2);
  std::multiset<std::uint32_t> dims(wp.dims().begin(), wp.dims().end());
  CHECK(dims == std::multiset<std::uint32_t>{2, 3, 3, 4});
}

TEST_CASE("fixed cells of wreath elements follow the cycle structure") {
  auto c2 = FiniteGroup::cyclic(2);
  auto x = disjoint_union(regular_set(c2), point(c2));
  auto w = wreath_power(x, 3);
  auto wg = w.group();
  auto base = wg->wreath_base();
  for (Elem e = 0; e < wg->size(); ++e) {
    auto tuple = wg->wreath_tuple(e);
    Perm sigma = wg->wreath_perm(e);
    Perm sigma_inv = invert(sigma);
    std::vector<Elem> ee{e};
    auto brute = fixed_cells(w, ee);
    // oracle: a tuple is fixed iff within each cycle of sigma the coordinates
    // are propagated by the g's and the representative is fixed by the cycle
    // product
    std::set<CellId> predicted;
    for (CellId c = 0; c < w.size(); ++c) {
      auto xt = wreath_cell_tuple(x, 3, c);
      bool ok = true;
      for (const auto& cyc : perm_cycles(sigma)) {
        std::uint16_t j = cyc.front();
        // cycle product: g_j g_{s^-1(j)} g_{s^-2(j)} ...
        Elem prod = base->identity();
        std::uint16_t cur = j;
        for (std::size_t step = 0; step < cyc.size(); ++step) {
          prod = base->mul(prod, tuple[cur]);
          cur = sigma_inv[cur];
        }
        if (x.act(prod, xt[j]) != xt[j]) {
          ok = false;
          break;
        }
        // remaining coordinates determined: x_i = g_i x_{s^-1(i)}
        cur = j;
        for (std::size_t step = 0; step + 1 < cyc.size(); ++step) {
          std::uint16_t nxt = sigma[cur];
          if (xt[nxt] != x.act(tuple[nxt], xt[cur])) {
            ok = false;
            break;
          }
          cur = nxt;
        }
        if (!ok) break;
      }
      if (ok) predicted.insert(c);
    }
    CHECK(std::set<CellId>(brute.begin(), brute.end()) == predicted);
  }
}

TEST_CASE("big diagonal and complement") {
  auto c2 = FiniteGroup::cyclic(2);
  // transitive X: complement empty for n = 2
  auto reg = regular_set(c2);
  CHECK(big_diagonal_complement(reg, 2).size() == 0);
  CHECK(big_diagonal(reg, 2).size() == 4);

  // two fixed points: complement has the two off-diagonal tuples
  auto t2 = trivial_cells(FiniteGroup::trivial(), {0, 0});
  auto comp = big_diagonal_complement(t2, 2);
  CHECK(comp.size() == 2);

  // n beyond the orbit count: empty by pigeonhole
  CHECK(big_diagonal_complement(reg, 3).size() == 0);

  // diagonal and complement partition the wreath power
  auto x = disjoint_union(reg, point(c2));
  auto w = wreath_power(x, 2);
  CHECK(big_diagonal(x, 2).size() + big_diagonal_complement(x, 2).size() == w.size());
  big_diagonal(x, 2).validate();
  big_diagonal_complement(x, 2).validate();
}

TEST_CASE("induction") {
  auto s3 = FiniteGroup::symmetric(3);
  auto c2sub = transposition_subgroup(s3);
  auto c2 = c2sub.as_group();
  auto pt = point(c2);
  grp::GroupHom emb;
  emb.source = c2;
  emb.target = s3;
  emb.images = {c2sub.members[0], c2sub.members[1]};
  if (c2sub.members[0] != s3->identity()) std::swap(emb.images[0], emb.images[1]);

  auto ind = induced_gset(pt, s3, emb);
  ind.validate();
  CHECK(ind.size() == 3);
  CHECK(quotient(ind).orbits.size() == 1);
  CHECK(quotient(ind).orbits[0].stabilizer.size() == 2);

  // ind_G^G(Z) = Z
  grp::GroupHom idh;
  idh.source = s3;
  idh.target = s3;
  idh.images.resize(6);
  for (Elem e = 0; e < 6; ++e) idh.images[e] = e;
  auto regs3 = regular_set(s3);
  auto ind_same = induced_gset(regs3, s3, idh);
  CHECK(ind_same.size() == regs3.size());
  CHECK(quotient(ind_same).orbits.size() == 1);

  // ind_trivial^G(point) is the regular set
  auto triv = FiniteGroup::trivial();
  grp::GroupHom emb0{triv, s3, {s3->identity()}};
  auto ind0 = induced_gset(point(triv), s3, emb0);
  CHECK(ind0.size() == 6);
  CHECK(quotient(ind0).orbits.size() == 1);
  CHECK(quotient(ind0).orbits[0].stabilizer.size() == 1);

  // dims ride along
  auto ptd = point(c2, 2);
  auto indd = induced_gset(ptd, s3, emb);
  CHECK(indd.dim(0) == 2);

  // rejects a non-homomorphic embedding
  grp::GroupHom bad{c2, s3, {s3->identity(), s3->identity()}};
  CHECK_THROWS_AS(induced_gset(pt, s3, bad), std::invalid_argument);
}

TEST_CASE("union with the empty gset changes nothing") {
  auto c2 = FiniteGroup::cyclic(2);
  auto x = regular_set(c2);
  GSet empty(c2, {}, {});
  auto u = disjoint_union(x, empty);
  CHECK(u.size() == x.size());
  for (Elem e = 0; e < c2->size(); ++e)
    for (CellId c = 0; c < x.size(); ++c) CHECK(u.act(e, c) == x.act(e, c));
}

TEST_CASE("disjoint union bookkeeping") {
  auto s3 = FiniteGroup::symmetric(3);
  auto a = coset_space(transposition_subgroup(s3));
  std::vector<Elem> c3gen;
  for (Elem e = 0; e < 6; ++e)
    if (s3->element_order(e) == 3) {
      c3gen.push_back(e);
      break;
    }
  auto b = coset_space(s3->subgroup_generated(c3gen));
  auto u = disjoint_union(a, b);
  u.validate();
  CHECK(u.size() == 5);
  CHECK(quotient(u).orbits.size() == 2);
  CHECK(quotient_class(u) == LPolynomial(2));
  // orbit counts add
  CHECK(quotient(u).orbits.size() == quotient(a).orbits.size() + quotient(b).orbits.size());
}

TEST_CASE("symmetric powers and configuration spaces") {
  for (int n = 0; n <= 6; ++n) CHECK(symmetric_power(2, n).size() == static_cast<std::size_t>(n + 1));
  CHECK(configuration_space(4, 2).size() == 6);
  CHECK(configuration_space(3, 3).size() == 1);
  CHECK(configuration_space(3, 4).size() == 0);
  CHECK(symmetric_power(3, 1).size() == 3);
  // stars and bars oracle
  auto binom = [](long long a, long long b) {
    if (b < 0 || b > a) return 0LL;
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - i + 1) / i;
    return r;
  };
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n <= 5; ++n) {
      CHECK(symmetric_power(static_cast<std::size_t>(m), n).size() ==
            static_cast<std::size_t>(binom(m + n - 1, n)));
      CHECK(configuration_space(static_cast<std::size_t>(m), n).size() ==
            static_cast<std::size_t>(binom(m, n)));
    }
}

TEST_CASE("from_generator_action closes and validates") {
  auto s3 = FiniteGroup::symmetric(3);
  // S3 on three cells mirroring its degree-3 permutation action
  std::vector<std::vector<CellId>> gen_images;
  for (Elem g : s3->generators()) {
    auto p = s3->perm_of(g);
    gen_images.push_back({p[0], p[1], p[2]});
  }
  auto x = from_generator_action(s3, {0, 0, 0}, gen_images);
  CHECK(x.size() == 3);
  CHECK(quotient(x).orbits.size() == 1);

  // non-action rejected: inconsistent images
  std::vector<std::vector<CellId>> bad = gen_images;
  bad[0] = {1, 2, 0};
  bool threw = false;
  try {
    auto y = from_generator_action(s3, {0, 0, 0}, bad);
    (void)y;
  } catch (const std::exception&) {
    threw = true;
  }
  CHECK(threw);
}
