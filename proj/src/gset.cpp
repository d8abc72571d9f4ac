#include "orbichar/gset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace orbichar::gset {

GSet::GSet(GroupPtr group, std::vector<std::uint32_t> dims, std::vector<CellId> action)
    : group_(std::move(group)), dims_(std::move(dims)), action_(std::move(action)) {
  if (action_.size() != group_->size() * dims_.size())
    throw std::invalid_argument("action table has wrong shape");
  const Elem e = group_->identity();
  for (CellId x = 0; x < dims_.size(); ++x)
    if (act(e, x) != x) throw std::invalid_argument("identity does not act trivially");
}

void GSet::validate(std::size_t budget) const {
  const std::size_t n = group_->size();
  const std::size_t m = size();
  for (CellId x = 0; x < m; ++x)
    if (act(group_->identity(), x) != x) throw std::logic_error("identity axiom violated");
  auto check = [&](Elem g, Elem h, CellId x) {
    if (act(g, act(h, x)) != act(group_->mul(g, h), x)) throw std::logic_error("action axiom violated");
  };
  if (n * n * m <= budget) {
    for (Elem g = 0; g < n; ++g)
      for (Elem h = 0; h < n; ++h)
        for (CellId x = 0; x < m; ++x) check(g, h, x);
  } else {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<Elem> pg(0, static_cast<Elem>(n - 1));
    std::uniform_int_distribution<CellId> px(0, static_cast<CellId>(m ? m - 1 : 0));
    if (m)
      for (int t = 0; t < 20000; ++t) check(pg(rng), pg(rng), px(rng));
  }
  // dim constant on orbits
  for (Elem g = 0; g < n; ++g)
    for (CellId x = 0; x < m; ++x)
      if (dims_[act(g, x)] != dims_[x]) throw std::logic_error("dimension not constant on an orbit");
}

// --- constructions ------------------------------------------------------------

GSet point(const GroupPtr& g, std::uint32_t dim) { return trivial_cells(g, {dim}); }

GSet trivial_cells(const GroupPtr& g, const std::vector<std::uint32_t>& dims) {
  std::vector<CellId> action(g->size() * dims.size());
  for (Elem e = 0; e < g->size(); ++e)
    for (CellId x = 0; x < dims.size(); ++x) action[static_cast<std::size_t>(e) * dims.size() + x] = x;
  return GSet(g, dims, std::move(action));
}

GSet regular_set(const GroupPtr& g) {
  const std::size_t n = g->size();
  std::vector<std::uint32_t> dims(n, 0);
  std::vector<CellId> action(n * n);
  for (Elem e = 0; e < n; ++e)
    for (CellId x = 0; x < n; ++x) action[static_cast<std::size_t>(e) * n + x] = g->mul(e, static_cast<Elem>(x));
  return GSet(g, std::move(dims), std::move(action));
}

GSet coset_space(const grp::Subgroup& s) {
  const auto& g = s.parent;
  const std::size_t n = g->size();
  // enumerate left cosets xS, represented by minimal member
  std::vector<CellId> coset_of(n, static_cast<CellId>(-1));
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x) {
    if (coset_of[x] != static_cast<CellId>(-1)) continue;
    CellId c = static_cast<CellId>(reps.size());
    reps.push_back(x);
    for (Elem m : s.members) coset_of[g->mul(x, m)] = c;
  }
  const std::size_t cells = reps.size();
  std::vector<std::uint32_t> dims(cells, 0);
  std::vector<CellId> action(n * cells);
  for (Elem e = 0; e < n; ++e)
    for (CellId c = 0; c < cells; ++c) action[static_cast<std::size_t>(e) * cells + c] = coset_of[g->mul(e, reps[c])];
  return GSet(g, std::move(dims), std::move(action));
}

GSet from_generator_action(const GroupPtr& g, const std::vector<std::uint32_t>& dims,
                           const std::vector<std::vector<CellId>>& generator_images) {
  const auto& gens = g->generators();
  if (generator_images.size() != gens.size())
    throw std::invalid_argument("need one image row per group generator");
  const std::size_t m = dims.size();
  for (const auto& row : generator_images) {
    if (row.size() != m) throw std::invalid_argument("generator image row has wrong length");
    std::vector<bool> seen(m, false);
    for (CellId v : row) {
      if (v >= m || seen[v]) throw std::invalid_argument("generator image row is not a bijection");
      seen[v] = true;
    }
  }
  const std::size_t n = g->size();
  std::vector<CellId> action(n * m, static_cast<CellId>(-1));
  auto row_of = [&](Elem e) { return action.begin() + static_cast<long>(static_cast<std::size_t>(e) * m); };
  for (CellId x = 0; x < m; ++x) *(row_of(g->identity()) + x) = x;
  const auto& words = g->bfs_words();
  // fill along BFS order: e = prev * gen  =>  e.x = prev.(gen.x)
  std::vector<Elem> order;
  order.reserve(n);
  {
    std::vector<bool> done(n, false);
    done[g->identity()] = true;
    order.push_back(g->identity());
    // BFS order = increasing discovery; recompute by repeated sweeps
    std::deque<Elem> work{g->identity()};
    std::vector<bool> queued(n, false);
    queued[g->identity()] = true;
    while (!work.empty()) {
      Elem cur = work.front();
      work.pop_front();
      for (Elem e = 0; e < n; ++e) {
        if (queued[e]) continue;
        auto [prev, gi] = words[e];
        if (prev == cur) {
          for (CellId x = 0; x < m; ++x) {
            CellId gx = generator_images[gi][x];
            *(row_of(e) + x) = *(row_of(prev) + gx);
          }
          queued[e] = true;
          work.push_back(e);
        }
      }
    }
  }
  for (CellId v : action)
    if (v == static_cast<CellId>(-1)) throw std::invalid_argument("action closure failed");
  GSet result(g, dims, std::move(action));
  result.validate();
  return result;
}

// --- orbits ---------------------------------------------------------------------

OrbitDecomposition quotient(const GSet& x) {
  const auto& g = x.group();
  const std::size_t m = x.size();
  std::vector<bool> seen(m, false);
  OrbitDecomposition dec;
  for (CellId c = 0; c < m; ++c) {
    if (seen[c]) continue;
    Orbit orb;
    orb.basepoint = c;
    std::set<CellId> cells;
    std::deque<CellId> work{c};
    cells.insert(c);
    while (!work.empty()) {
      CellId cur = work.front();
      work.pop_front();
      for (Elem gen : g->generators()) {
        CellId nxt = x.act(gen, cur);
        if (cells.insert(nxt).second) work.push_back(nxt);
      }
    }
    orb.cells.assign(cells.begin(), cells.end());
    for (CellId cc : orb.cells) seen[cc] = true;
    orb.dim = x.dim(c);
    orb.stabilizer.parent = g;
    for (Elem e = 0; e < g->size(); ++e)
      if (x.act(e, c) == c) orb.stabilizer.members.push_back(e);
    if (orb.cells.size() * orb.stabilizer.members.size() != g->size())
      throw std::logic_error("orbit-stabilizer mismatch");
    dec.orbits.push_back(std::move(orb));
  }
  return dec;
}

LPolynomial quotient_class(const GSet& x) {
  LPolynomial r;
  for (const auto& orb : quotient(x).orbits) r += LPolynomial::power_of_l(Rational(orb.dim));
  return r;
}

// --- fixed sets / restrictions ---------------------------------------------------

std::vector<CellId> fixed_cells(const GSet& x, std::span<const Elem> elems) {
  std::vector<CellId> out;
  for (CellId c = 0; c < x.size(); ++c) {
    bool ok = true;
    for (Elem g : elems)
      if (x.act(g, c) != c) {
        ok = false;
        break;
      }
    if (ok) out.push_back(c);
  }
  return out;
}

GSet sub_gset(const GSet& x, std::span<const CellId> cells) {
  std::vector<CellId> sorted(cells.begin(), cells.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CellId> pos(x.size(), static_cast<CellId>(-1));
  for (CellId i = 0; i < sorted.size(); ++i) pos[sorted[i]] = i;
  const auto& g = x.group();
  std::vector<std::uint32_t> dims;
  dims.reserve(sorted.size());
  for (CellId c : sorted) dims.push_back(x.dim(c));
  std::vector<CellId> action(g->size() * sorted.size());
  for (Elem e = 0; e < g->size(); ++e)
    for (CellId i = 0; i < sorted.size(); ++i) {
      CellId img = x.act(e, sorted[i]);
      if (pos[img] == static_cast<CellId>(-1)) throw std::invalid_argument("cell subset is not invariant");
      action[static_cast<std::size_t>(e) * sorted.size() + i] = pos[img];
    }
  return GSet(g, std::move(dims), std::move(action));
}

GSet restrict_action(const GSet& x, const grp::Subgroup& s) {
  if (s.parent->uid() != x.group()->uid()) throw std::invalid_argument("subgroup of a different group");
  auto h = s.as_group();
  const std::size_t m = x.size();
  std::vector<CellId> action(h->size() * m);
  for (std::size_t i = 0; i < s.members.size(); ++i)
    for (CellId c = 0; c < m; ++c) action[i * m + c] = x.act(s.members[i], c);
  return GSet(h, x.dims(), std::move(action));
}

GSet fixed_set(const GSet& x, std::span<const Elem> elems, const grp::Subgroup& acting) {
  auto cells = fixed_cells(x, elems);
  // restrict to the subgroup first, then cut the invariant subset
  GSet restricted = restrict_action(x, acting);
  return sub_gset(restricted, cells);
}

GSet fixed_set(const GSet& x, std::span<const Elem> elems) {
  return fixed_set(x, elems, x.group()->centralizer_of_set(elems));
}

// --- sums and products ------------------------------------------------------------

GSet disjoint_union(const GSet& x, const GSet& y) {
  if (x.group()->uid() != y.group()->uid()) throw std::invalid_argument("disjoint union needs one group");
  const auto& g = x.group();
  const std::size_t m = x.size() + y.size();
  std::vector<std::uint32_t> dims;
  dims.reserve(m);
  dims.insert(dims.end(), x.dims().begin(), x.dims().end());
  dims.insert(dims.end(), y.dims().begin(), y.dims().end());
  std::vector<CellId> action(g->size() * m);
  for (Elem e = 0; e < g->size(); ++e) {
    for (CellId c = 0; c < x.size(); ++c) action[static_cast<std::size_t>(e) * m + c] = x.act(e, c);
    for (CellId c = 0; c < y.size(); ++c)
      action[static_cast<std::size_t>(e) * m + x.size() + c] = static_cast<CellId>(x.size()) + y.act(e, c);
  }
  return GSet(g, std::move(dims), std::move(action));
}

GSet product_many(const std::vector<GSet>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty product");
  if (factors.size() == 1) return factors[0];
  std::vector<GroupPtr> groups;
  groups.reserve(factors.size());
  std::size_t cells = 1;
  for (const auto& f : factors) {
    groups.push_back(f.group());
    cells *= f.size();
  }
  auto pg = grp::FiniteGroup::product_many(groups);
  // cell index: lexicographic, first factor most significant
  std::vector<std::uint32_t> dims(cells, 0);
  {
    std::vector<CellId> digits(factors.size(), 0);
    for (std::size_t i = 0; i < cells; ++i) {
      std::uint32_t d = 0;
      for (std::size_t f = 0; f < factors.size(); ++f) d += factors[f].dim(digits[f]);
      dims[i] = d;
      for (std::size_t f = factors.size(); f-- > 0;) {
        if (++digits[f] < factors[f].size()) break;
        digits[f] = 0;
      }
    }
  }
  std::vector<CellId> action(pg->size() * cells);
  for (Elem e = 0; e < pg->size(); ++e) {
    auto parts = pg->product_split(e);
    std::vector<CellId> digits(factors.size(), 0);
    for (std::size_t i = 0; i < cells; ++i) {
      std::size_t img = 0;
      for (std::size_t f = 0; f < factors.size(); ++f)
        img = img * factors[f].size() + factors[f].act(parts[f], digits[f]);
      action[static_cast<std::size_t>(e) * cells + i] = static_cast<CellId>(img);
      for (std::size_t f = factors.size(); f-- > 0;) {
        if (++digits[f] < factors[f].size()) break;
        digits[f] = 0;
      }
    }
  }
  return GSet(pg, std::move(dims), std::move(action));
}

GSet product(const GSet& x, const GSet& y) { return product_many({x, y}); }

// --- wreath powers -----------------------------------------------------------------

CellId wreath_cell(const GSet& x, std::span<const CellId> tuple) {
  std::size_t idx = 0;
  for (CellId t : tuple) idx = idx * x.size() + t;
  return static_cast<CellId>(idx);
}

std::vector<CellId> wreath_cell_tuple(const GSet& x, int n, CellId cell) {
  std::vector<CellId> tuple(static_cast<std::size_t>(n));
  std::size_t rem = cell;
  for (std::size_t i = static_cast<std::size_t>(n); i-- > 0;) {
    tuple[i] = static_cast<CellId>(rem % x.size());
    rem /= x.size();
  }
  return tuple;
}

GSet wreath_power(const GSet& x, int n) {
  if (n < 0) throw std::invalid_argument("wreath power must be nonnegative");
  auto wg = grp::FiniteGroup::wreath_product(x.group(), n);
  if (n == 0) return point(wg, 0);
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) {
    cells *= x.size();
    if (cells > global_config().max_group_order * 16ull) throw std::runtime_error("cell set too large");
  }
  std::vector<std::uint32_t> dims(cells, 0);
  for (CellId c = 0; c < cells; ++c) {
    auto tuple = wreath_cell_tuple(x, n, c);
    std::uint32_t d = 0;
    for (CellId t : tuple) d += x.dim(t);
    dims[c] = d;
  }
  std::vector<CellId> action(wg->size() * cells);
  for (Elem e = 0; e < wg->size(); ++e) {
    auto tuple = wg->wreath_tuple(e);
    Perm sigma = wg->wreath_perm(e);
    Perm sigma_inv = invert(sigma);
    for (CellId c = 0; c < cells; ++c) {
      auto xt = wreath_cell_tuple(x, n, c);
      std::size_t img = 0;
      for (int i = 0; i < n; ++i)
        img = img * x.size() +
              x.act(tuple[static_cast<std::size_t>(i)], xt[sigma_inv[static_cast<std::size_t>(i)]]);
      action[static_cast<std::size_t>(e) * cells + c] = static_cast<CellId>(img);
    }
  }
  return GSet(wg, std::move(dims), std::move(action));
}

namespace {

std::vector<CellId> orbit_labels(const GSet& x) {
  std::vector<CellId> label(x.size(), static_cast<CellId>(-1));
  auto dec = quotient(x);
  for (CellId i = 0; i < dec.orbits.size(); ++i)
    for (CellId c : dec.orbits[i].cells) label[c] = i;
  return label;
}

std::vector<CellId> diagonal_cells(const GSet& x, int n, bool complement) {
  auto label = orbit_labels(x);
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) cells *= x.size();
  std::vector<CellId> keep;
  for (CellId c = 0; c < cells; ++c) {
    auto tuple = wreath_cell_tuple(x, n, c);
    std::set<CellId> seen;
    bool distinct = true;
    for (CellId t : tuple)
      if (!seen.insert(label[t]).second) {
        distinct = false;
        break;
      }
    if (distinct == complement) keep.push_back(c);
  }
  return keep;
}

}  // namespace

GSet big_diagonal_complement(const GSet& x, int n) {
  return sub_gset(wreath_power(x, n), diagonal_cells(x, n, true));
}
GSet big_diagonal(const GSet& x, int n) {
  return sub_gset(wreath_power(x, n), diagonal_cells(x, n, false));
}
std::vector<CellId> big_diagonal_complement_cells(const GSet& x, int n) {
  return diagonal_cells(x, n, true);
}

// --- induction ----------------------------------------------------------------------

GSet induced_gset(const GSet& z, const GroupPtr& h, const grp::GroupHom& embedding,
                  std::vector<std::pair<Elem, CellId>>* rep_pairs) {
  const auto& g = z.group();
  if (embedding.source->uid() != g->uid() || embedding.target->uid() != h->uid())
    throw std::invalid_argument("embedding endpoints do not match");
  if (!embedding.is_homomorphism() || !embedding.is_injective())
    throw std::invalid_argument("embedding is not an injective homomorphism");
  const std::size_t nh = h->size();
  const std::size_t nz = z.size();
  // union-find over pairs (a, x): (a, x) ~ (a phi(g)^-1, g x)
  std::vector<std::size_t> parent(nh * nz);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto unite = [&](std::size_t i, std::size_t j) {
    i = find(i);
    j = find(j);
    if (i != j) parent[std::max(i, j)] = std::min(i, j);
  };
  for (std::size_t a = 0; a < nh; ++a)
    for (CellId x = 0; x < nz; ++x)
      for (Elem gg = 0; gg < g->size(); ++gg) {
        Elem a2 = h->mul(static_cast<Elem>(a), h->inverse(embedding(gg)));
        CellId x2 = z.act(gg, x);
        unite(a * nz + x, static_cast<std::size_t>(a2) * nz + x2);
      }
  // classes ordered by minimal pair index
  std::map<std::size_t, CellId> class_id;
  for (std::size_t i = 0; i < nh * nz; ++i) {
    std::size_t r = find(i);
    if (!class_id.count(r)) class_id.emplace(r, static_cast<CellId>(class_id.size()));
  }
  const std::size_t cells = class_id.size();
  if (cells * g->size() != nh * nz) throw std::logic_error("induction size mismatch");
  std::vector<std::uint32_t> dims(cells, 0);
  for (std::size_t i = 0; i < nh * nz; ++i) dims[class_id[find(i)]] = z.dim(static_cast<CellId>(i % nz));
  std::vector<CellId> action(nh * cells);
  // representative pair per class
  std::vector<std::size_t> rep(cells, 0);
  {
    std::vector<bool> have(cells, false);
    for (std::size_t i = 0; i < nh * nz; ++i) {
      CellId c = class_id[find(i)];
      if (!have[c]) {
        have[c] = true;
        rep[c] = i;
      }
    }
  }
  for (Elem e = 0; e < nh; ++e)
    for (CellId c = 0; c < cells; ++c) {
      std::size_t a = rep[c] / nz;
      std::size_t x = rep[c] % nz;
      std::size_t img = static_cast<std::size_t>(h->mul(e, static_cast<Elem>(a))) * nz + x;
      action[static_cast<std::size_t>(e) * cells + c] = class_id[find(img)];
    }
  if (rep_pairs) {
    rep_pairs->clear();
    for (CellId c = 0; c < cells; ++c)
      rep_pairs->emplace_back(static_cast<Elem>(rep[c] / nz), static_cast<CellId>(rep[c] % nz));
  }
  return GSet(h, std::move(dims), std::move(action));
}

// --- plain set models ------------------------------------------------------------------

namespace {
void multisets_rec(std::size_t m, int n, std::uint32_t lo, std::vector<std::uint32_t>& cur,
                   std::vector<std::vector<std::uint32_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t v = lo; v < m; ++v) {
    cur.push_back(v);
    multisets_rec(m, n - 1, v, cur, out);
    cur.pop_back();
  }
}
void subsets_rec(std::size_t m, int n, std::uint32_t lo, std::vector<std::uint32_t>& cur,
                 std::vector<std::vector<std::uint32_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t v = lo; v < m; ++v) {
    cur.push_back(v);
    subsets_rec(m, n - 1, v + 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::vector<std::uint32_t>> symmetric_power(std::size_t m, int n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  multisets_rec(m, n, 0, cur, out);
  return out;
}

std::vector<std::vector<std::uint32_t>> configuration_space(std::size_t m, int n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  subsets_rec(m, n, 0, cur, out);
  return out;
}

}  // namespace orbichar::gset
