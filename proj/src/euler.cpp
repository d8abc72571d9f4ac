#include "orbichar/euler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace orbichar::euler {

using grp::Elem;
using gset::CellId;
using gset::GSet;

long long euler_char(const GSet& x) { return static_cast<long long>(x.size()); }

namespace {

// Dense bitset over cells.
struct CellBits {
  std::vector<std::uint64_t> w;
  explicit CellBits(std::size_t n) : w((n + 63) / 64, 0) {}
  void set(std::size_t i) { w[i / 64] |= 1ull << (i % 64); }
  bool get(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
  CellBits and_with(const CellBits& o) const {
    CellBits r(w.size() * 64);
    r.w.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  long long count() const {
    long long c = 0;
    for (auto v : w) c += __builtin_popcountll(v);
    return c;
  }
};

CellBits fixed_bits(const GSet& x, Elem g) {
  CellBits b(x.size());
  for (CellId c = 0; c < x.size(); ++c)
    if (x.act(g, c) == c) b.set(c);
  return b;
}

// conjugacy classes of a sorted member subset (a subgroup) of x's group
std::vector<std::pair<Elem, std::size_t>> member_classes(const grp::FiniteGroup& g,
                                                         const std::vector<Elem>& members) {
  std::vector<std::pair<Elem, std::size_t>> out;  // (rep, class size)
  std::vector<bool> seen(members.size(), false);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (seen[i]) continue;
    Elem rep = members[i];
    std::size_t count = 0;
    std::set<Elem> cls;
    for (Elem h : members) cls.insert(g.conjugate(rep, h));
    for (Elem c : cls) {
      auto it = std::lower_bound(members.begin(), members.end(), c);
      if (it == members.end() || *it != c) throw std::logic_error("member set not closed under conjugation");
      seen[static_cast<std::size_t>(it - members.begin())] = true;
      ++count;
    }
    out.emplace_back(rep, count);
  }
  return out;
}

long long orbit_count(const GSet& x, const std::vector<Elem>& members, const std::vector<CellId>& cells) {
  std::vector<bool> seen(x.size(), false);
  std::vector<bool> in_subset(x.size(), false);
  for (CellId c : cells) in_subset[c] = true;
  long long orbits = 0;
  for (CellId c : cells) {
    if (seen[c]) continue;
    ++orbits;
    std::deque<CellId> work{c};
    seen[c] = true;
    while (!work.empty()) {
      CellId cur = work.front();
      work.pop_front();
      for (Elem m : members) {
        CellId nxt = x.act(m, cur);
        if (!in_subset[nxt]) throw std::logic_error("cell subset not invariant under the member set");
        if (!seen[nxt]) {
          seen[nxt] = true;
          work.push_back(nxt);
        }
      }
    }
  }
  return orbits;
}

struct ChiMemo {
  std::map<std::tuple<int, std::vector<Elem>, std::vector<CellId>>, long long> memo;
};

long long chi_rec_impl(const GSet& x, const std::vector<Elem>& members, const std::vector<CellId>& cells,
                       int k, ChiMemo& memo) {
  if (k == 0) return orbit_count(x, members, cells);
  auto key = std::make_tuple(k, members, cells);
  if (auto it = memo.memo.find(key); it != memo.memo.end()) return it->second;
  const auto& g = *x.group();
  long long total = 0;
  // at the top level reuse the group's cached classes
  std::vector<std::pair<Elem, std::size_t>> classes;
  if (members.size() == g.size()) {
    for (const auto& c : g.conjugacy_classes()) classes.emplace_back(c.representative, c.members.size());
  } else {
    classes = member_classes(g, members);
  }
  for (const auto& [rep, size] : classes) {
    (void)size;
    std::vector<Elem> cent;
    cent.reserve(members.size());
    for (Elem h : members)
      if (g.commute(h, rep)) cent.push_back(h);
    std::vector<CellId> fixed;
    for (CellId c : cells)
      if (x.act(rep, c) == c) fixed.push_back(c);
    total += chi_rec_impl(x, cent, fixed, k - 1, memo);
  }
  memo.memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

long long chi_k_recursive(const GSet& x, int k) {
  if (k < 0) throw std::invalid_argument("order must be nonnegative");
  std::vector<Elem> members(x.group()->size());
  for (Elem e = 0; e < x.group()->size(); ++e) members[e] = e;
  std::vector<CellId> cells(x.size());
  for (CellId c = 0; c < x.size(); ++c) cells[c] = c;
  ChiMemo memo;
  return chi_rec_impl(x, members, cells, k, memo);
}

long long chi_k_tuples(const GSet& x, int k) {
  if (k < 1) throw std::invalid_argument("order must be >= 1 for the tuple definition");
  const auto& g = *x.group();
  // The outer coordinate runs over class representatives weighted by class
  // size: conjugating a commuting tuple permutes the tuples with the same
  // chi contribution.
  long long total = 0;

  struct Frame {
    std::vector<Elem> candidates;
    CellBits fixed;
  };

  std::function<long long(const std::vector<Elem>&, const CellBits&, int)> rec =
      [&](const std::vector<Elem>& candidates, const CellBits& fixed, int remaining) -> long long {
    if (remaining == 0) return fixed.count();
    long long acc = 0;
    for (Elem cand : candidates) {
      std::vector<Elem> next;
      next.reserve(candidates.size());
      for (Elem other : candidates)
        if (g.commute(cand, other)) next.push_back(other);
      acc += rec(next, fixed.and_with(fixed_bits(x, cand)), remaining - 1);
    }
    return acc;
  };

  for (const auto& cls : g.conjugacy_classes()) {
    Elem rep = cls.representative;
    std::vector<Elem> cent;
    for (Elem h = 0; h < g.size(); ++h)
      if (g.commute(h, rep)) cent.push_back(h);
    // k more coordinates after the representative
    long long inner = rec(cent, fixed_bits(x, rep), k);
    total += static_cast<long long>(cls.members.size()) * inner;
  }
  if (total % static_cast<long long>(g.size()) != 0)
    throw std::logic_error("commuting-tuple sum not divisible by the group order");
  return total / static_cast<long long>(g.size());
}

InductionReport verify_induction_invariance(const GSet& z, const grp::GroupPtr& h,
                                            const grp::GroupHom& embedding, int kmax,
                                            k0fgr::Registry& reg) {
  InductionReport report;
  GSet ind = gset::induced_gset(z, h, embedding);
  for (int k = 0; k <= kmax; ++k) {
    InductionCheck chk;
    chk.k = k;
    chk.lhs_recursive = chi_k_recursive(ind, k);
    chk.rhs_recursive = chi_k_recursive(z, k);
    chk.ok = chk.lhs_recursive == chk.rhs_recursive;
    if (k >= 1) {
      chk.lhs_tuples = chi_k_tuples(ind, k);
      chk.rhs_tuples = chi_k_tuples(z, k);
      chk.ok = chk.ok && chk.lhs_tuples == chk.rhs_tuples && chk.lhs_tuples == chk.lhs_recursive;
    }
    report.checks.push_back(chk);
  }

  // Fixed-set decomposition: for g in G,
  //   ((ind Z)^<g>, C_H(g))  ~  |_| over [g'] in Conj G with [g']_H = [g]_H of
  //   ind_{C_G(g')}^{C_H(g')} Z^<g'>,
  // compared as orbit-class multisets (normal forms).
  const auto& g = z.group();
  // image of G inside H
  std::vector<Elem> gbar(g->size());
  for (Elem e = 0; e < g->size(); ++e) gbar[e] = embedding(e);
  std::vector<Elem> gbar_sorted = gbar;
  std::sort(gbar_sorted.begin(), gbar_sorted.end());
  grp::Subgroup gbar_sub{h, gbar_sorted};
  // Z with the action transported through the embedding
  GSet zbar = [&] {
    std::vector<CellId> action(gbar_sorted.size() * z.size());
    for (std::size_t i = 0; i < gbar_sorted.size(); ++i) {
      // element of G mapping to gbar_sorted[i]
      Elem src = 0;
      for (Elem e = 0; e < g->size(); ++e)
        if (gbar[e] == gbar_sorted[i]) src = e;
      for (CellId c = 0; c < z.size(); ++c) action[i * z.size() + c] = z.act(src, c);
    }
    return GSet(gbar_sub.as_group(), z.dims(), std::move(action));
  }();
  const auto& zbar_group = zbar.group();

  auto h_conjugate_test = [&](Elem a, Elem b) {
    for (Elem t = 0; t < h->size(); ++t)
      if (h->conjugate(a, t) == b) return true;
    return false;
  };

  for (const auto& cls : zbar_group->conjugacy_classes()) {
    Elem rep_bar = cls.representative;               // id inside zbar_group
    Elem rep_h = gbar_sorted[rep_bar];               // as an element of H
    LemmaCheck lc;
    lc.rep = rep_h;
    // LHS: (ind Z)^<rep_h> with the centralizer action
    std::vector<Elem> single{rep_h};
    GSet lhs = gset::fixed_set(ind, single);
    auto lhs_class = k0fgr::class_of(reg, lhs);
    // RHS: sum over classes [g'] of G with [g']_H = [rep]_H
    k0fgr::FgrClass rhs_class;
    for (const auto& cls2 : zbar_group->conjugacy_classes()) {
      Elem g2_bar = cls2.representative;
      Elem g2_h = gbar_sorted[g2_bar];
      if (!h_conjugate_test(rep_h, g2_h)) continue;
      std::vector<Elem> single2{g2_bar};
      GSet zfix = gset::fixed_set(zbar, single2);  // over C_Gbar(g2)
      // induce into C_H(g2)
      auto cg = zbar_group->centralizer_of_set(single2);
      // translate member ids back to H
      grp::Subgroup cg_in_h{h, {}};
      for (Elem m : cg.members) cg_in_h.members.push_back(gbar_sorted[m]);
      std::sort(cg_in_h.members.begin(), cg_in_h.members.end());
      std::vector<Elem> single_h{g2_h};
      auto ch = h->centralizer_of_set(single_h);
      auto incl = grp::inclusion_hom(cg_in_h, ch);
      // zfix is over cg.as_group(); rebuild it over cg_in_h.as_group() (same
      // member order, so the action table carries over)
      GSet zfix_h(incl.source, zfix.dims(), [&] {
        std::vector<CellId> a(incl.source->size() * zfix.size());
        for (Elem e = 0; e < incl.source->size(); ++e)
          for (CellId c = 0; c < zfix.size(); ++c) a[static_cast<std::size_t>(e) * zfix.size() + c] = zfix.act(e, c);
        return a;
      }());
      GSet induced_piece = gset::induced_gset(zfix_h, incl.target, incl);
      rhs_class = k0fgr::fgr_add(rhs_class, k0fgr::class_of(reg, induced_piece));
    }
    lc.ok = k0fgr::fgr_equals(lhs_class, rhs_class);
    lc.detail = "lhs=" + k0fgr::fgr_to_string(reg, lhs_class) + " rhs=" + k0fgr::fgr_to_string(reg, rhs_class);
    report.lemma.push_back(std::move(lc));
  }

  report.all_ok = true;
  for (const auto& c : report.checks) report.all_ok = report.all_ok && c.ok;
  for (const auto& c : report.lemma) report.all_ok = report.all_ok && c.ok;
  return report;
}

}  // namespace orbichar::euler
