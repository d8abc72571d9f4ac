#include "orbichar/k0fgr.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbichar::k0fgr {

namespace {

// chi^(k) of a one-point space under the subgroup spanned by `members` of
// `g`. Base case chi^(0) = 1; the recursion runs over conjugacy classes of
// the member set and their centralizers.
long long chi_point_members(const grp::FiniteGroup& g, const std::vector<grp::Elem>& members, int k) {
  if (k == 0) return 1;
  long long total = 0;
  std::vector<bool> seen(members.size(), false);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (seen[i]) continue;
    grp::Elem rep = members[i];
    // conjugacy class of rep within the member set
    for (std::size_t j = 0; j < members.size(); ++j) {
      grp::Elem conj = g.conjugate(rep, members[j]);
      auto it = std::lower_bound(members.begin(), members.end(), conj);
      seen[static_cast<std::size_t>(it - members.begin())] = true;
    }
    std::vector<grp::Elem> cent;
    for (grp::Elem h : members)
      if (g.commute(h, rep)) cent.push_back(h);
    total += chi_point_members(g, cent, k - 1);
  }
  return total;
}

}  // namespace

// --- Registry -----------------------------------------------------------------

GroupClassId Registry::id_of(const GroupPtr& g) { return id_of_with_iso(g).first; }

std::pair<GroupClassId, grp::GroupIso> Registry::id_of_with_iso(const GroupPtr& g) {
  if (g->size() > global_config().iso_bound) throw std::runtime_error("isomorphism bound exceeded");
  std::lock_guard<std::mutex> lock(mutex_);
  for (GroupClassId i = 0; i < reps_.size(); ++i) {
    if (reps_[i]->size() != g->size()) continue;
    if (auto iso = grp::are_isomorphic(g, reps_[i])) return {i, *iso};
  }
  reps_.push_back(g);
  grp::GroupIso identity{g, g, {}};
  identity.images.resize(g->size());
  for (grp::Elem e = 0; e < g->size(); ++e) identity.images[e] = e;
  return {static_cast<GroupClassId>(reps_.size() - 1), identity};
}

GroupPtr Registry::rep(GroupClassId id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return reps_.at(id);
}

std::size_t Registry::count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return reps_.size();
}

GroupClassId Registry::product(GroupClassId a, GroupClassId b) {
  if (a > b) std::swap(a, b);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = product_memo_.find({a, b});
    if (it != product_memo_.end()) return it->second;
  }
  auto prod = grp::FiniteGroup::direct_product(rep(a), rep(b));
  GroupClassId id = id_of(prod);
  std::lock_guard<std::mutex> lock(mutex_);
  product_memo_[{a, b}] = id;
  return id;
}

long long Registry::chi_k_point(GroupClassId id, int k) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = chi_memo_.find({id, k});
    if (it != chi_memo_.end()) return it->second;
  }
  auto g = rep(id);
  std::vector<grp::Elem> all(g->size());
  for (grp::Elem e = 0; e < g->size(); ++e) all[e] = e;
  long long v = chi_point_members(*g, all, k);
  std::lock_guard<std::mutex> lock(mutex_);
  chi_memo_[{id, k}] = v;
  return v;
}

const std::vector<grp::GroupIso>& Registry::automorphisms(GroupClassId id) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = aut_memo_.find(id);
    if (it != aut_memo_.end()) return it->second;
  }
  auto g = rep(id);
  auto autos = grp::all_isomorphisms(g, g);
  std::lock_guard<std::mutex> lock(mutex_);
  return aut_memo_.emplace(id, std::move(autos)).first->second;
}

// --- FgrClass -------------------------------------------------------------------

FgrClass& FgrClass::add_term(GroupClassId g, std::uint32_t dim, long long coeff) {
  if (coeff == 0) return *this;
  auto key = Term{g, dim};
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
  return *this;
}

FgrClass fgr_zero() { return {}; }

FgrClass fgr_unit(Registry& reg) {
  FgrClass c;
  c.add_term(reg.id_of(grp::FiniteGroup::trivial()), 0, 1);
  return c;
}

FgrClass fgr_add(const FgrClass& a, const FgrClass& b) {
  FgrClass r = a;
  for (const auto& [t, c] : b.terms) r.add_term(t.first, t.second, c);
  return r;
}

FgrClass fgr_neg(const FgrClass& a) {
  FgrClass r;
  for (const auto& [t, c] : a.terms) r.terms.emplace(t, -c);
  return r;
}

FgrClass fgr_sub(const FgrClass& a, const FgrClass& b) { return fgr_add(a, fgr_neg(b)); }

FgrClass fgr_scale(const FgrClass& a, long long c) {
  FgrClass r;
  if (c == 0) return r;
  for (const auto& [t, coeff] : a.terms) r.terms.emplace(t, coeff * c);
  return r;
}

FgrClass fgr_mul(Registry& reg, const FgrClass& a, const FgrClass& b) {
  FgrClass r;
  for (const auto& [ta, ca] : a.terms)
    for (const auto& [tb, cb] : b.terms)
      r.add_term(reg.product(ta.first, tb.first), ta.second + tb.second, ca * cb);
  return r;
}

bool fgr_equals(const FgrClass& a, const FgrClass& b) { return a.terms == b.terms; }

bool is_effective(const FgrClass& a) {
  for (const auto& [t, c] : a.terms)
    if (c < 0) return false;
  return true;
}

FgrClass class_of(Registry& reg, const gset::GSet& x) {
  FgrClass r;
  for (const auto& orb : gset::quotient(x).orbits)
    r.add_term(reg.id_of(orb.stabilizer.as_group()), orb.dim, 1);
  return r;
}

FgrClass map_i(Registry& reg, const FgrClass& plain) {
  GroupClassId triv = reg.id_of(grp::FiniteGroup::trivial());
  for (const auto& [t, c] : plain.terms)
    if (t.first != triv) throw std::invalid_argument("map_i needs a class supported on the trivial group");
  return plain;
}

FgrClass map_p(Registry& reg, const FgrClass& a) {
  GroupClassId triv = reg.id_of(grp::FiniteGroup::trivial());
  FgrClass r;
  for (const auto& [t, c] : a.terms) r.add_term(triv, t.second, c);
  return r;
}

long long chi_k_class(Registry& reg, const FgrClass& a, int k) {
  long long total = 0;
  for (const auto& [t, c] : a.terms) total += c * reg.chi_k_point(t.first, k);
  return total;
}

gset::GSet gp_box(const gset::GSet& x, const gset::GSet& y) {
  auto sym_degree = [](const GroupPtr& g) -> int {
    const auto& n = g->name();
    if (n.size() < 2 || n[0] != 'S') throw std::invalid_argument("gp_box needs symmetric-group realizations");
    return std::stoi(n.substr(1));
  };
  int m = sym_degree(x.group());
  int n = sym_degree(y.group());
  auto target = grp::FiniteGroup::symmetric(m + n);
  auto prod = gset::product(x, y);
  const auto& pg = prod.group();
  grp::GroupHom emb;
  emb.source = pg;
  emb.target = target;
  emb.images.resize(pg->size());
  for (grp::Elem e = 0; e < pg->size(); ++e) {
    auto parts = pg->product_split(e);
    Perm p(static_cast<std::size_t>(m + n));
    auto pa = x.group()->perm_of(parts[0]);
    auto pb = y.group()->perm_of(parts[1]);
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = pa[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i)
      p[static_cast<std::size_t>(m + i)] = static_cast<std::uint16_t>(m + pb[static_cast<std::size_t>(i)]);
    auto id = target->find_perm(p);
    if (!id) throw std::logic_error("symmetric embedding failed");
    emb.images[e] = *id;
  }
  return gset::induced_gset(prod, target, emb);
}

std::string fgr_to_string(Registry& reg, const FgrClass& a) {
  if (a.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [t, c] : a.terms) {
    if (!first) s += c >= 0 ? " + " : " - ";
    long long v = (!first && c < 0) ? -c : c;
    first = false;
    auto g = reg.rep(t.first);
    std::string gname = g->name().empty() ? ("#" + std::to_string(t.first) + "(|G|=" + std::to_string(g->size()) + ")")
                                          : g->name();
    s += std::to_string(v) + "*(" + gname;
    if (t.second) s += ",L^" + std::to_string(t.second);
    s += ")";
  }
  return s;
}

}  // namespace orbichar::k0fgr
