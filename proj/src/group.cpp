#include "orbichar/group.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>

namespace orbichar {

Config& global_config() {
  static Config cfg;
  return cfg;
}

}  // namespace orbichar

namespace orbichar::grp {

namespace {

std::uint64_t next_uid() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

std::uint64_t pack_perm(std::span<const std::uint16_t> p) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < p.size(); ++i) key |= static_cast<std::uint64_t>(p[i]) << (4 * i);
  return key;
}

void check_order_bound(unsigned long long order) {
  if (order == 0 || order > global_config().max_group_order) throw std::runtime_error("group too large");
}

// a*b with overflow saturation, for bound checks only
unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > (~0ULL) / b) return ~0ULL;
  return a * b;
}

}  // namespace

// --- Subgroup ---------------------------------------------------------------

bool Subgroup::contains(Elem g) const { return std::binary_search(members.begin(), members.end(), g); }

std::size_t Subgroup::index_of(Elem g) const {
  auto it = std::lower_bound(members.begin(), members.end(), g);
  if (it == members.end() || *it != g) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - members.begin());
}

GroupPtr Subgroup::as_group() const {
  const auto m = members.size();
  std::vector<Perm> perms;
  perms.reserve(m);
  for (Elem g : members) {
    auto sp = parent->perm_of(g);
    perms.emplace_back(sp.begin(), sp.end());
  }
  // generators: greedy small generating set over the subgroup
  std::vector<Elem> sub_gens;
  {
    std::set<Elem> closure{parent->identity()};
    for (std::size_t i = 0; i < m && closure.size() < m; ++i) {
      Elem cand = members[i];
      if (closure.count(cand)) continue;
      sub_gens.push_back(static_cast<Elem>(i));
      // close
      std::deque<Elem> work(closure.begin(), closure.end());
      closure.insert(cand);
      work.push_back(cand);
      std::vector<Elem> gen_elems;
      for (Elem gi : sub_gens) gen_elems.push_back(members[gi]);
      while (!work.empty()) {
        Elem x = work.front();
        work.pop_front();
        for (Elem gen : gen_elems) {
          Elem y = parent->mul(x, gen);
          if (closure.insert(y).second) work.push_back(y);
        }
      }
    }
  }
  auto g = FiniteGroup::make_from_perms(parent->degree(), std::move(perms), std::move(sub_gens),
                                        Realization::subgroup_view, "");
  g->view_parent_ = parent;
  g->view_members_ = members;
  return g;
}

// --- GroupHom ---------------------------------------------------------------

bool GroupHom::is_homomorphism() const {
  if (images.size() != source->size()) return false;
  for (Elem a = 0; a < source->size(); ++a)
    for (Elem b = 0; b < source->size(); ++b)
      if (images[source->mul(a, b)] != target->mul(images[a], images[b])) return false;
  return true;
}

bool GroupHom::is_injective() const {
  std::set<Elem> seen(images.begin(), images.end());
  return seen.size() == images.size();
}

bool GroupHom::is_bijective() const { return is_injective() && source->size() == target->size(); }

// --- construction core ------------------------------------------------------

std::shared_ptr<FiniteGroup> FiniteGroup::make_from_perms(int degree, std::vector<Perm> elements,
                                                          std::vector<Elem> generators, Realization kind,
                                                          std::string name) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->size_ = elements.size();
  g->degree_ = degree;
  g->realization_ = kind;
  g->name_ = std::move(name);
  g->uid_ = next_uid();
  g->generators_ = std::move(generators);
  g->images_.resize(g->size_ * static_cast<std::size_t>(degree));
  for (std::size_t i = 0; i < g->size_; ++i)
    std::copy(elements[i].begin(), elements[i].end(), g->images_.begin() + static_cast<long>(i * degree));
  g->finish_construction();
  return g;
}

void FiniteGroup::build_index() {
  if (degree_ <= 16) {
    packed_index_.reserve(size_ * 2);
    for (Elem i = 0; i < size_; ++i) {
      auto [it, fresh] = packed_index_.emplace(pack_perm(perm_of(i)), i);
      if (!fresh) throw std::logic_error("duplicate permutation in element table");
    }
  } else {
    for (Elem i = 0; i < size_; ++i) {
      auto sp = perm_of(i);
      auto [it, fresh] = map_index_.emplace(Perm(sp.begin(), sp.end()), i);
      if (!fresh) throw std::logic_error("duplicate permutation in element table");
    }
  }
}

void FiniteGroup::finish_construction() {
  build_index();
  // identity
  Perm id = identity_perm(static_cast<std::size_t>(degree_));
  auto found = find_perm(id);
  if (!found) throw std::logic_error("element table lacks the identity");
  identity_ = *found;
  // inverses
  inverse_.resize(size_);
  for (Elem i = 0; i < size_; ++i) {
    auto sp = perm_of(i);
    Perm inv = invert(Perm(sp.begin(), sp.end()));
    auto j = find_perm(inv);
    if (!j) throw std::logic_error("element table not closed under inversion");
    inverse_[i] = *j;
  }
  // mul table for small groups
  if (size_ <= global_config().mul_table_limit) {
    multable_.resize(size_ * size_);
    for (Elem a = 0; a < size_; ++a) {
      auto pa = perm_of(a);
      for (Elem b = 0; b < size_; ++b) {
        auto pb = perm_of(b);
        Perm prod(static_cast<std::size_t>(degree_));
        for (int x = 0; x < degree_; ++x) prod[static_cast<std::size_t>(x)] = pa[pb[static_cast<std::size_t>(x)]];
        auto c = find_perm(prod);
        if (!c) throw std::logic_error("element table not closed under multiplication");
        multable_[static_cast<std::size_t>(a) * size_ + b] = *c;
      }
    }
  }
}

std::optional<Elem> FiniteGroup::find_perm(const Perm& p) const {
  if (static_cast<int>(p.size()) != degree_) return std::nullopt;
  if (degree_ <= 16) {
    auto it = packed_index_.find(pack_perm(p));
    if (it == packed_index_.end()) return std::nullopt;
    return it->second;
  }
  auto it = map_index_.find(p);
  if (it == map_index_.end()) return std::nullopt;
  return it->second;
}

Elem FiniteGroup::mul(Elem a, Elem b) const {
  if (!multable_.empty()) return multable_[static_cast<std::size_t>(a) * size_ + b];
  auto pa = perm_of(a);
  auto pb = perm_of(b);
  if (degree_ <= 16) {
    std::uint64_t key = 0;
    for (int x = 0; x < degree_; ++x)
      key |= static_cast<std::uint64_t>(pa[pb[static_cast<std::size_t>(x)]]) << (4 * x);
    auto it = packed_index_.find(key);
    if (it == packed_index_.end()) throw std::logic_error("multiplication left the element table");
    return it->second;
  }
  Perm prod(static_cast<std::size_t>(degree_));
  for (int x = 0; x < degree_; ++x) prod[static_cast<std::size_t>(x)] = pa[pb[static_cast<std::size_t>(x)]];
  auto it = map_index_.find(prod);
  if (it == map_index_.end()) throw std::logic_error("multiplication left the element table");
  return it->second;
}

// --- factories --------------------------------------------------------------

GroupPtr FiniteGroup::from_permutations(int degree, const std::vector<Perm>& gens, std::string name) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree || !is_bijection(p))
      throw std::invalid_argument("generator is not a bijection of the domain");
  }
  // BFS closure from the identity, generators in input order
  std::vector<Perm> elements{identity_perm(static_cast<std::size_t>(degree))};
  std::map<Perm, Elem> seen{{elements[0], 0}};
  std::vector<Elem> gen_ids;
  std::deque<Elem> work{0};
  auto intern = [&](Perm p) -> Elem {
    auto it = seen.find(p);
    if (it != seen.end()) return it->second;
    Elem id = static_cast<Elem>(elements.size());
    if (elements.size() + 1 > global_config().max_group_order) throw std::runtime_error("group too large");
    seen.emplace(p, id);
    elements.push_back(std::move(p));
    work.push_back(id);
    return id;
  };
  for (const auto& g : gens) gen_ids.push_back(intern(g));
  while (!work.empty()) {
    Elem cur = work.front();
    work.pop_front();
    for (const auto& g : gens) {
      Perm next = compose(elements[cur], g);
      intern(std::move(next));
    }
  }
  std::sort(gen_ids.begin(), gen_ids.end());
  gen_ids.erase(std::unique(gen_ids.begin(), gen_ids.end()), gen_ids.end());
  return make_from_perms(degree, std::move(elements), std::move(gen_ids), Realization::permutation,
                         std::move(name));
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<Elem>>& mul, std::string name) {
  const std::size_t n = mul.size();
  check_order_bound(n);
  for (const auto& row : mul) {
    if (row.size() != n) throw std::invalid_argument("multiplication table is not square");
    for (Elem v : row)
      if (v >= n) throw std::invalid_argument("multiplication table entry out of range");
  }
  // locate the identity
  std::optional<Elem> id;
  for (Elem e = 0; e < n; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = mul[e][x] == x && mul[x][e] == x;
    if (ok) {
      id = e;
      break;
    }
  }
  if (!id) throw std::invalid_argument("multiplication table has no identity");
  // inverses must exist
  for (Elem a = 0; a < n; ++a) {
    bool found = false;
    for (Elem b = 0; b < n && !found; ++b) found = mul[a][b] == *id && mul[b][a] == *id;
    if (!found) throw std::invalid_argument("multiplication table lacks inverses");
  }
  // associativity: exhaustive when small, seeded random otherwise
  if (n <= 24) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
            throw std::invalid_argument("multiplication table is not associative");
  } else {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    for (int t = 0; t < 2000; ++t) {
      Elem a = pick(rng), b = pick(rng), c = pick(rng);
      if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
        throw std::invalid_argument("multiplication table is not associative");
    }
  }
  // left-regular permutation realization: g acts by h -> g*h
  std::vector<Perm> perms(n);
  for (Elem g = 0; g < n; ++g) {
    Perm p(n);
    for (Elem h = 0; h < n; ++h) p[h] = static_cast<std::uint16_t>(mul[g][h]);
    perms[g] = std::move(p);
  }
  std::vector<Elem> gens;
  for (Elem g = 0; g < n; ++g)
    if (g != *id) gens.push_back(g);
  if (gens.empty()) gens.push_back(*id);
  return make_from_perms(static_cast<int>(n), std::move(perms), std::move(gens), Realization::table,
                         std::move(name));
}

GroupPtr FiniteGroup::product_many(std::vector<GroupPtr> factors) {
  if (factors.empty()) return trivial();
  if (factors.size() == 1) return factors[0];
  unsigned long long order = 1;
  int degree = 0;
  for (const auto& f : factors) {
    order = sat_mul(order, f->size());
    degree += f->degree();
  }
  check_order_bound(order);
  const std::size_t n = static_cast<std::size_t>(order);
  std::vector<Perm> perms;
  perms.reserve(n);
  std::vector<Elem> digits(factors.size(), 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    Perm p(static_cast<std::size_t>(degree));
    int off = 0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      auto sp = factors[f]->perm_of(digits[f]);
      for (int x = 0; x < factors[f]->degree(); ++x)
        p[static_cast<std::size_t>(off + x)] = static_cast<std::uint16_t>(off + sp[static_cast<std::size_t>(x)]);
      off += factors[f]->degree();
    }
    perms.push_back(std::move(p));
    // lexicographic increment, last factor fastest
    for (std::size_t f = factors.size(); f-- > 0;) {
      if (++digits[f] < factors[f]->size()) break;
      digits[f] = 0;
    }
  }
  // strides for generator lifting
  std::vector<std::size_t> stride(factors.size(), 1);
  for (std::size_t f = factors.size() - 1; f-- > 0;) stride[f] = stride[f + 1] * factors[f + 1]->size();
  std::vector<Elem> gens;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    for (Elem g : factors[f]->generators()) {
      std::size_t idx = 0;
      for (std::size_t j = 0; j < factors.size(); ++j)
        idx += stride[j] * (j == f ? g : factors[j]->identity());
      gens.push_back(static_cast<Elem>(idx));
    }
  }
  std::string name;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (f) name += "x";
    name += factors[f]->name().empty() ? ("G" + std::to_string(factors[f]->size())) : factors[f]->name();
  }
  auto g = make_from_perms(degree, std::move(perms), std::move(gens), Realization::product, std::move(name));
  g->factors_ = std::move(factors);
  return g;
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b) { return product_many({a, b}); }

GroupPtr FiniteGroup::wreath_product(const GroupPtr& base, int n) {
  if (n < 0) throw std::invalid_argument("wreath power must be nonnegative");
  if (n == 0) return trivial();
  unsigned long long order = 1;
  for (int i = 0; i < n; ++i) order = sat_mul(order, base->size());
  unsigned long long fact = 1;
  for (int i = 2; i <= n; ++i) fact = sat_mul(fact, static_cast<unsigned long long>(i));
  check_order_bound(sat_mul(order, fact));
  const std::size_t bsz = base->size();
  const int bdeg = base->degree();
  const int degree = n * bdeg;
  const std::size_t total = static_cast<std::size_t>(order * fact);
  std::vector<Perm> perms;
  perms.reserve(total);
  // element id = tuple_index * n! + perm_rank(sigma); tuple digit 0 most significant
  std::vector<Elem> tuple(static_cast<std::size_t>(n), 0);
  for (std::size_t t = 0; t < static_cast<std::size_t>(order); ++t) {
    Perm sigma = identity_perm(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < static_cast<std::size_t>(fact); ++r) {
      // point (i,p) -> (sigma(i), g_{sigma(i)} p)
      Perm p(static_cast<std::size_t>(degree));
      for (int i = 0; i < n; ++i) {
        int si = sigma[static_cast<std::size_t>(i)];
        auto gp = base->perm_of(tuple[static_cast<std::size_t>(si)]);
        for (int x = 0; x < bdeg; ++x)
          p[static_cast<std::size_t>(i * bdeg + x)] =
              static_cast<std::uint16_t>(si * bdeg + gp[static_cast<std::size_t>(x)]);
      }
      perms.push_back(std::move(p));
      std::next_permutation(sigma.begin(), sigma.end());
    }
    for (std::size_t i = static_cast<std::size_t>(n); i-- > 0;) {
      if (++tuple[i] < bsz) break;
      tuple[i] = 0;
    }
  }
  // generators: base generators in the first coordinate plus S_n generators
  std::vector<Elem> gens;
  {
    std::vector<std::size_t> pw(static_cast<std::size_t>(n), 1);
    for (std::size_t i = static_cast<std::size_t>(n) - 1; i-- > 0;) pw[i] = pw[i + 1] * bsz;
    auto make_id_tuple_idx = [&]() {
      std::size_t idx = 0;
      for (int i = 0; i < n; ++i) idx += pw[static_cast<std::size_t>(i)] * base->identity();
      return idx;
    };
    const std::size_t id_tuple = make_id_tuple_idx();
    for (Elem g : base->generators()) {
      std::size_t idx = id_tuple + pw[0] * (static_cast<std::size_t>(g) - base->identity());
      // adjust: replace coordinate 0 identity by g
      idx = 0;
      for (int i = 0; i < n; ++i) idx += pw[static_cast<std::size_t>(i)] * (i == 0 ? g : base->identity());
      gens.push_back(static_cast<Elem>(idx * fact));
    }
    if (n >= 2) {
      Perm tr = identity_perm(static_cast<std::size_t>(n));
      std::swap(tr[0], tr[1]);
      gens.push_back(static_cast<Elem>(id_tuple * fact + perm_rank(tr)));
      if (n > 2) {
        Perm cyc(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((i + 1) % n);
        gens.push_back(static_cast<Elem>(id_tuple * fact + perm_rank(cyc)));
      }
    }
  }
  std::string bname = base->name().empty() ? ("G" + std::to_string(base->size())) : base->name();
  auto g = make_from_perms(degree, std::move(perms), std::move(gens), Realization::wreath,
                           "wr(" + bname + "," + std::to_string(n) + ")");
  g->wreath_base_ = base;
  g->wreath_n_ = n;
  return g;
}

GroupPtr FiniteGroup::twisted_product(const GroupPtr& g, const std::vector<std::pair<GroupPtr, int>>& parts) {
  std::vector<GroupPtr> part_groups;
  std::vector<TwistedPart> info;
  for (const auto& [gi, k] : parts) {
    if (k < 0) throw std::invalid_argument("twisted product multiplicity must be nonnegative");
    if (k == 0) continue;
    part_groups.push_back(wreath_product(direct_product(g, gi), k));
    info.push_back(TwistedPart{gi, k});
  }
  if (part_groups.empty()) return trivial();
  GroupPtr res = part_groups.size() == 1 ? part_groups[0] : product_many(part_groups);
  // re-tag a copy of the structure as twisted
  auto out = std::const_pointer_cast<FiniteGroup>(res);
  // clone shallow metadata only when the product was reused directly
  if (part_groups.size() == 1) {
    // wrap in a one-factor product so structural accessors stay uniform
    std::vector<Perm> perms;
    perms.reserve(res->size());
    for (Elem i = 0; i < res->size(); ++i) {
      auto sp = res->perm_of(i);
      perms.emplace_back(sp.begin(), sp.end());
    }
    auto fresh = make_from_perms(res->degree(), std::move(perms), res->generators(), Realization::twisted,
                                 "twisted");
    fresh->factors_ = {res};
    fresh->twisted_base_ = g;
    fresh->twisted_parts_ = std::move(info);
    return fresh;
  }
  out->realization_ = Realization::twisted;
  out->name_ = "twisted";
  out->twisted_base_ = g;
  out->twisted_parts_ = std::move(info);
  return res;
}

GroupPtr FiniteGroup::trivial() {
  return from_permutations(1, {}, "trivial");
}

GroupPtr FiniteGroup::cyclic(int m) {
  if (m < 1) throw std::invalid_argument("cyclic order must be positive");
  if (m == 1) return trivial();
  Perm c(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) c[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((i + 1) % m);
  return from_permutations(m, {c}, "C" + std::to_string(m));
}

GroupPtr FiniteGroup::symmetric(int n) {
  if (n < 1) throw std::invalid_argument("symmetric degree must be positive");
  if (n == 1) return from_permutations(1, {}, "S1");
  std::vector<Perm> gens;
  Perm tr = identity_perm(static_cast<std::size_t>(n));
  std::swap(tr[0], tr[1]);
  gens.push_back(tr);
  if (n > 2) {
    Perm cyc(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((i + 1) % n);
    gens.push_back(cyc);
  }
  return from_permutations(n, gens, "S" + std::to_string(n));
}

GroupPtr FiniteGroup::klein_four() {
  Perm a = {1, 0, 2, 3};
  Perm b = {0, 1, 3, 2};
  return from_permutations(4, {a, b}, "V4");
}

GroupPtr FiniteGroup::dihedral8() {
  Perm rot = {1, 2, 3, 0};
  Perm flip = {0, 3, 2, 1};
  return from_permutations(4, {rot, flip}, "D4");
}

GroupPtr FiniteGroup::named(const std::string& name) {
  if (name == "trivial" || name == "1" || name == "e") return trivial();
  if (name == "V4") return klein_four();
  if (name == "D4") return dihedral8();
  if (name.size() >= 2 && name[0] == 'S') return symmetric(std::stoi(name.substr(1)));
  if (name.size() >= 2 && name[0] == 'C') return cyclic(std::stoi(name.substr(1)));
  throw std::invalid_argument("unknown group name: " + name);
}

// --- structural accessors ---------------------------------------------------

const std::vector<GroupPtr>& FiniteGroup::product_factors() const {
  if (realization_ != Realization::product && realization_ != Realization::twisted)
    throw std::logic_error("not a product group");
  return factors_;
}

std::vector<Elem> FiniteGroup::product_split(Elem g) const {
  const auto& fs = product_factors();
  std::vector<Elem> parts(fs.size());
  std::size_t rem = g;
  for (std::size_t f = fs.size(); f-- > 0;) {
    parts[f] = static_cast<Elem>(rem % fs[f]->size());
    rem /= fs[f]->size();
  }
  return parts;
}

Elem FiniteGroup::product_make(std::span<const Elem> parts) const {
  const auto& fs = product_factors();
  if (parts.size() != fs.size()) throw std::invalid_argument("wrong number of product components");
  std::size_t idx = 0;
  for (std::size_t f = 0; f < fs.size(); ++f) idx = idx * fs[f]->size() + parts[f];
  return static_cast<Elem>(idx);
}

const GroupPtr& FiniteGroup::wreath_base() const {
  if (realization_ != Realization::wreath) throw std::logic_error("not a wreath product");
  return wreath_base_;
}

int FiniteGroup::wreath_n() const {
  if (realization_ != Realization::wreath) throw std::logic_error("not a wreath product");
  return wreath_n_;
}

std::vector<Elem> FiniteGroup::wreath_tuple(Elem g) const {
  const auto& base = wreath_base();
  unsigned long long fact = 1;
  for (int i = 2; i <= wreath_n_; ++i) fact *= static_cast<unsigned long long>(i);
  std::size_t t = g / fact;
  std::vector<Elem> tuple(static_cast<std::size_t>(wreath_n_));
  for (std::size_t i = static_cast<std::size_t>(wreath_n_); i-- > 0;) {
    tuple[i] = static_cast<Elem>(t % base->size());
    t /= base->size();
  }
  return tuple;
}

Perm FiniteGroup::wreath_perm(Elem g) const {
  (void)wreath_base();
  unsigned long long fact = 1;
  for (int i = 2; i <= wreath_n_; ++i) fact *= static_cast<unsigned long long>(i);
  return perm_unrank(static_cast<std::size_t>(wreath_n_), g % fact);
}

Elem FiniteGroup::wreath_make(std::span<const Elem> tuple, const Perm& sigma) const {
  const auto& base = wreath_base();
  if (static_cast<int>(tuple.size()) != wreath_n_ || static_cast<int>(sigma.size()) != wreath_n_)
    throw std::invalid_argument("wrong wreath component sizes");
  unsigned long long fact = 1;
  for (int i = 2; i <= wreath_n_; ++i) fact *= static_cast<unsigned long long>(i);
  std::size_t t = 0;
  for (int i = 0; i < wreath_n_; ++i) t = t * base->size() + tuple[static_cast<std::size_t>(i)];
  return static_cast<Elem>(t * fact + perm_rank(sigma));
}

const GroupPtr& FiniteGroup::twisted_base() const {
  if (realization_ != Realization::twisted) throw std::logic_error("not a twisted product");
  return twisted_base_;
}

const std::vector<FiniteGroup::TwistedPart>& FiniteGroup::twisted_parts() const {
  if (realization_ != Realization::twisted) throw std::logic_error("not a twisted product");
  return twisted_parts_;
}

const GroupPtr& FiniteGroup::view_parent() const {
  if (realization_ != Realization::subgroup_view) throw std::logic_error("not a subgroup view");
  return view_parent_;
}

const std::vector<Elem>& FiniteGroup::view_members() const {
  if (realization_ != Realization::subgroup_view) throw std::logic_error("not a subgroup view");
  return view_members_;
}

// --- cached queries ----------------------------------------------------------

const std::vector<std::pair<Elem, std::uint32_t>>& FiniteGroup::bfs_words() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (bfs_done_) return bfs_cache_;
  bfs_cache_.assign(size_, {identity_, 0});
  std::vector<bool> seen(size_, false);
  seen[identity_] = true;
  std::deque<Elem> work{identity_};
  std::size_t reached = 1;
  while (!work.empty()) {
    Elem cur = work.front();
    work.pop_front();
    for (std::uint32_t gi = 0; gi < generators_.size(); ++gi) {
      Elem nxt = mul(cur, generators_[gi]);
      if (!seen[nxt]) {
        seen[nxt] = true;
        bfs_cache_[nxt] = {cur, gi};
        work.push_back(nxt);
        ++reached;
      }
    }
  }
  if (reached != size_) throw std::logic_error("generators do not generate the group");
  bfs_done_ = true;
  return bfs_cache_;
}

int FiniteGroup::element_order(Elem g) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (order_cache_.empty()) order_cache_.assign(size_, 0);
    if (order_cache_[g]) return order_cache_[g];
  }
  int ord = 1;
  Elem cur = g;
  while (cur != identity_) {
    cur = mul(cur, g);
    ++ord;
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  order_cache_[g] = ord;
  return ord;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a : generators_)
    for (Elem b : generators_)
      if (!commute(a, b)) return false;
  return true;
}

std::size_t FiniteGroup::center_size() const {
  std::size_t c = 0;
  for (Elem g = 0; g < size_; ++g) {
    bool central = true;
    for (Elem s : generators_)
      if (!commute(g, s)) {
        central = false;
        break;
      }
    if (central) ++c;
  }
  return c;
}

std::map<int, std::size_t> FiniteGroup::order_histogram() const {
  std::map<int, std::size_t> h;
  for (Elem g = 0; g < size_; ++g) ++h[element_order(g)];
  return h;
}

const std::vector<ConjugacyClass>& FiniteGroup::conjugacy_classes() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (classes_done_) return classes_cache_;
  std::vector<bool> seen(size_, false);
  for (Elem g = 0; g < size_; ++g) {
    if (seen[g]) continue;
    // orbit of g under conjugation by the generators
    ConjugacyClass cls;
    cls.representative = g;
    seen[g] = true;
    std::deque<Elem> work{g};
    cls.members.push_back(g);
    while (!work.empty()) {
      Elem cur = work.front();
      work.pop_front();
      for (Elem s : generators_) {
        Elem conj = mul(mul(inverse_[s], cur), s);
        if (!seen[conj]) {
          seen[conj] = true;
          cls.members.push_back(conj);
          work.push_back(conj);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    classes_cache_.push_back(std::move(cls));
  }
  classes_done_ = true;
  return classes_cache_;
}

Subgroup FiniteGroup::centralizer(Elem g) const {
  Subgroup s;
  s.parent = shared_from_this();
  for (Elem h = 0; h < size_; ++h)
    if (commute(h, g)) s.members.push_back(h);
  return s;
}

Subgroup FiniteGroup::centralizer_of_set(std::span<const Elem> gens) const {
  Subgroup s;
  s.parent = shared_from_this();
  for (Elem h = 0; h < size_; ++h) {
    bool ok = true;
    for (Elem g : gens)
      if (!commute(h, g)) {
        ok = false;
        break;
      }
    if (ok) s.members.push_back(h);
  }
  return s;
}

Subgroup FiniteGroup::subgroup_generated(std::span<const Elem> gens) const {
  std::set<Elem> closure{identity_};
  std::deque<Elem> work{identity_};
  for (Elem g : gens)
    if (closure.insert(g).second) work.push_back(g);
  while (!work.empty()) {
    Elem cur = work.front();
    work.pop_front();
    for (Elem g : gens) {
      Elem nxt = mul(cur, g);
      if (closure.insert(nxt).second) work.push_back(nxt);
      Elem prv = mul(g, cur);
      if (closure.insert(prv).second) work.push_back(prv);
    }
  }
  Subgroup s;
  s.parent = shared_from_this();
  s.members.assign(closure.begin(), closure.end());
  return s;
}

Subgroup FiniteGroup::full_subgroup() const {
  Subgroup s;
  s.parent = shared_from_this();
  s.members.resize(size_);
  for (Elem g = 0; g < size_; ++g) s.members[g] = g;
  return s;
}

void FiniteGroup::validate() const {
  for (Elem g = 0; g < size_; ++g) {
    if (mul(identity_, g) != g || mul(g, identity_) != g) throw std::logic_error("identity law violated");
    if (mul(g, inverse_[g]) != identity_ || mul(inverse_[g], g) != identity_)
      throw std::logic_error("inverse law violated");
  }
  if (size_ <= 24) {
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b)
        for (Elem c = 0; c < size_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::logic_error("associativity violated");
  } else {
    std::mt19937_64 rng(987654321);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(size_ - 1));
    for (int t = 0; t < 3000; ++t) {
      Elem a = pick(rng), b = pick(rng), c = pick(rng);
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::logic_error("associativity violated");
    }
  }
}

// --- isomorphism ------------------------------------------------------------

namespace {

struct IsoSearch {
  const FiniteGroup& g;
  const FiniteGroup& h;
  std::vector<Elem> gens;            // generating set of g
  std::vector<Elem> map_fwd;         // partial map g -> h, npos when unset
  std::vector<bool> used;            // h elements already taken
  std::vector<GroupIso>* out;
  std::size_t cap;
  bool stop = false;
  static constexpr Elem unset = static_cast<Elem>(-1);

  // class sizes per element for invariant pruning
  std::vector<std::size_t> class_size_g, class_size_h;

  bool extend_assign(std::vector<Elem>& fwd, std::vector<bool>& taken) {
    // close the partial map over products; returns false on inconsistency
    bool changed = true;
    while (changed) {
      changed = false;
      for (Elem a = 0; a < g.size(); ++a) {
        if (fwd[a] == unset) continue;
        for (Elem b = 0; b < g.size(); ++b) {
          if (fwd[b] == unset) continue;
          Elem ab = g.mul(a, b);
          Elem img = h.mul(fwd[a], fwd[b]);
          if (fwd[ab] == unset) {
            if (taken[img]) return false;
            fwd[ab] = img;
            taken[img] = true;
            changed = true;
          } else if (fwd[ab] != img) {
            return false;
          }
        }
      }
    }
    return true;
  }

  void search(std::size_t level, const std::vector<Elem>& fwd, const std::vector<bool>& taken) {
    if (stop) return;
    if (level == gens.size()) {
      // the generators generate g, so the closure is total iff complete
      std::vector<Elem> full = fwd;
      for (Elem a = 0; a < g.size(); ++a)
        if (full[a] == unset) return;
      GroupIso iso{g.shared_from_this(), h.shared_from_this(), full};
      out->push_back(std::move(iso));
      if (out->size() >= cap) stop = true;
      return;
    }
    Elem gen = gens[level];
    int od = g.element_order(gen);
    for (Elem cand = 0; cand < h.size(); ++cand) {
      if (taken[cand]) continue;
      if (h.element_order(cand) != od) continue;
      if (class_size_g[gen] != class_size_h[cand]) continue;
      std::vector<Elem> fwd2 = fwd;
      std::vector<bool> taken2 = taken;
      fwd2[gen] = cand;
      taken2[cand] = true;
      if (!extend_assign(fwd2, taken2)) continue;
      search(level + 1, fwd2, taken2);
      if (stop) return;
    }
  }
};

std::vector<std::size_t> per_element_class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> sz(g.size(), 0);
  for (const auto& c : g.conjugacy_classes())
    for (Elem m : c.members) sz[m] = c.members.size();
  return sz;
}

bool invariants_match(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.size() != h.size()) return false;
  if (g.is_abelian() != h.is_abelian()) return false;
  if (g.order_histogram() != h.order_histogram()) return false;
  if (g.center_size() != h.center_size()) return false;
  auto class_hist = [](const FiniteGroup& grp) {
    std::map<std::size_t, std::size_t> hist;
    for (const auto& c : grp.conjugacy_classes()) ++hist[c.members.size()];
    return hist;
  };
  return class_hist(g) == class_hist(h);
}

std::vector<Elem> small_generating_set(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::set<Elem> closure{g.identity()};
  for (Elem cand = 0; cand < g.size() && closure.size() < g.size(); ++cand) {
    if (closure.count(cand)) continue;
    gens.push_back(cand);
    std::deque<Elem> work(closure.begin(), closure.end());
    closure.insert(cand);
    work.push_back(cand);
    while (!work.empty()) {
      Elem x = work.front();
      work.pop_front();
      for (Elem s : gens) {
        Elem y = g.mul(x, s);
        if (closure.insert(y).second) work.push_back(y);
      }
    }
  }
  return gens;
}

std::vector<GroupIso> iso_search(const GroupPtr& g, const GroupPtr& h, std::size_t cap) {
  if (g->size() != h->size()) return {};
  if (!invariants_match(*g, *h)) return {};
  IsoSearch s{*g, *h, small_generating_set(*g), {}, {}, nullptr, cap, false, {}, {}};
  std::vector<GroupIso> found;
  s.out = &found;
  s.class_size_g = per_element_class_sizes(*g);
  s.class_size_h = per_element_class_sizes(*h);
  std::vector<Elem> fwd(g->size(), IsoSearch::unset);
  std::vector<bool> taken(h->size(), false);
  fwd[g->identity()] = h->identity();
  taken[h->identity()] = true;
  s.search(0, fwd, taken);
  return found;
}

}  // namespace

std::optional<GroupIso> are_isomorphic(const GroupPtr& g, const GroupPtr& h) {
  const auto bound = global_config().iso_bound;
  if (g->size() > bound || h->size() > bound) throw std::runtime_error("isomorphism test out of range");
  auto found = iso_search(g, h, 1);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::vector<GroupIso> all_isomorphisms(const GroupPtr& g, const GroupPtr& h, std::size_t cap) {
  const auto bound = global_config().iso_bound;
  if (g->size() > bound || h->size() > bound) throw std::runtime_error("isomorphism test out of range");
  return iso_search(g, h, cap);
}

std::optional<GroupHom> find_embedding(const GroupPtr& g, const GroupPtr& h) {
  if (h->size() % g->size() != 0) return std::nullopt;
  // backtracking over generator images with homomorphic closure
  auto gens = small_generating_set(*g);
  constexpr Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> fwd(g->size(), unset);
  fwd[g->identity()] = h->identity();
  std::optional<GroupHom> result;

  std::function<bool(std::vector<Elem>&)> close = [&](std::vector<Elem>& m) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Elem a = 0; a < g->size(); ++a) {
        if (m[a] == unset) continue;
        for (Elem b = 0; b < g->size(); ++b) {
          if (m[b] == unset) continue;
          Elem ab = g->mul(a, b);
          Elem img = h->mul(m[a], m[b]);
          if (m[ab] == unset) {
            m[ab] = img;
            changed = true;
          } else if (m[ab] != img) {
            return false;
          }
        }
      }
    }
    // injectivity on the assigned part
    std::set<Elem> seen;
    for (Elem a = 0; a < g->size(); ++a) {
      if (m[a] == unset) continue;
      if (!seen.insert(m[a]).second) return false;
    }
    return true;
  };

  std::function<void(std::size_t, const std::vector<Elem>&)> rec = [&](std::size_t level,
                                                                       const std::vector<Elem>& m) {
    if (result) return;
    if (level == gens.size()) {
      std::vector<Elem> full = m;
      for (Elem a = 0; a < g->size(); ++a)
        if (full[a] == unset) return;
      GroupHom hom{g, h, full};
      if (hom.is_injective()) result = hom;
      return;
    }
    Elem gen = gens[level];
    int od = g->element_order(gen);
    for (Elem cand = 0; cand < h->size(); ++cand) {
      if (h->element_order(cand) != od) continue;
      std::vector<Elem> m2 = m;
      m2[gen] = cand;
      if (!close(m2)) continue;
      rec(level + 1, m2);
      if (result) return;
    }
  };
  rec(0, fwd);
  return result;
}

GroupHom inclusion_hom(const Subgroup& a, const Subgroup& b) {
  if (a.parent->uid() != b.parent->uid()) throw std::invalid_argument("subgroups of different parents");
  GroupHom hom;
  hom.source = a.as_group();
  hom.target = b.as_group();
  hom.images.reserve(a.members.size());
  for (Elem m : a.members) {
    auto idx = b.index_of(m);
    if (idx == static_cast<std::size_t>(-1)) throw std::invalid_argument("not a sub-subgroup");
    hom.images.push_back(static_cast<Elem>(idx));
  }
  return hom;
}

unsigned long long commuting_tuples(const FiniteGroup& g, int arity,
                                    const std::function<void(std::span<const Elem>)>& visitor) {
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  std::vector<Elem> tuple;
  tuple.reserve(static_cast<std::size_t>(arity));
  unsigned long long count = 0;
  std::vector<Elem> all(g.size());
  for (Elem i = 0; i < g.size(); ++i) all[i] = i;

  std::function<void(const std::vector<Elem>&, int)> rec = [&](const std::vector<Elem>& candidates,
                                                               int remaining) {
    if (remaining == 0) {
      ++count;
      if (visitor) visitor(tuple);
      return;
    }
    for (Elem cand : candidates) {
      std::vector<Elem> next;
      next.reserve(candidates.size());
      for (Elem other : candidates)
        if (g.commute(cand, other)) next.push_back(other);
      tuple.push_back(cand);
      rec(next, remaining - 1);
      tuple.pop_back();
    }
  };
  rec(all, arity);
  return count;
}

}  // namespace orbichar::grp
