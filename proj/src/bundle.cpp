#include "orbichar/bundle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace orbichar::bundle {

using grp::FiniteGroup;
using k0fgr::Registry;

// --- CharacterBundle ----------------------------------------------------------

CharacterBundle::CharacterBundle(GSet space, std::vector<OrbitData> orbits)
    : Bundle(std::move(space)), orbits_(std::move(orbits)) {
  const auto& g = *space_.group();
  auto dec = gset::quotient(space_);
  if (dec.orbits.size() != orbits_.size())
    throw std::invalid_argument("bundle needs exactly one data record per orbit");
  orbit_index_.assign(space_.size(), 0);
  transport_.assign(space_.size(), g.identity());
  std::vector<bool> matched(dec.orbits.size(), false);
  for (std::size_t oi = 0; oi < orbits_.size(); ++oi) {
    auto& data = orbits_[oi];
    if (data.basepoint >= space_.size()) throw std::invalid_argument("bundle basepoint out of range");
    // locate the geometric orbit containing the basepoint
    std::size_t geo = dec.orbits.size();
    for (std::size_t j = 0; j < dec.orbits.size(); ++j)
      if (std::binary_search(dec.orbits[j].cells.begin(), dec.orbits[j].cells.end(), data.basepoint)) {
        geo = j;
        break;
      }
    if (geo == dec.orbits.size() || matched[geo])
      throw std::invalid_argument("bundle orbit data does not match the orbit decomposition");
    matched[geo] = true;
    // stabilizer must be exactly the stabilizer of the basepoint
    std::vector<Elem> stab;
    for (Elem e = 0; e < g.size(); ++e)
      if (space_.act(e, data.basepoint) == data.basepoint) stab.push_back(e);
    if (stab != data.stabilizer) throw std::invalid_argument("bundle stabilizer data is wrong");
    // characters: normalized homomorphisms into Q/Z
    for (auto& line : data.characters) {
      if (line.size() != stab.size()) throw std::invalid_argument("character row has wrong length");
      for (auto& v : line) v = v.frac();
      auto value = [&](Elem s) {
        auto it = std::lower_bound(stab.begin(), stab.end(), s);
        return line[static_cast<std::size_t>(it - stab.begin())];
      };
      for (std::size_t i = 0; i < stab.size(); ++i) {
        if (stab[i] == g.identity() && !line[i].is_zero())
          throw std::invalid_argument("character of the identity must vanish");
        for (std::size_t j = 0; j < stab.size(); ++j) {
          Elem prod = g.mul(stab[i], stab[j]);
          if (!(value(prod) == (line[i] + line[j]).frac()))
            throw std::invalid_argument("character is not a homomorphism");
        }
        // order condition
        Rational total = line[i] * Rational(g.element_order(stab[i]));
        if (!total.is_integer()) throw std::invalid_argument("character order condition violated");
      }
    }
    for (CellId c : dec.orbits[geo].cells) {
      orbit_index_[c] = static_cast<std::uint32_t>(oi);
      // minimal transporting element
      for (Elem e = 0; e < g.size(); ++e)
        if (space_.act(e, data.basepoint) == c) {
          transport_[c] = e;
          break;
        }
    }
  }
}

int CharacterBundle::rank(CellId x) const {
  return static_cast<int>(orbits_[orbit_index_[x]].characters.size());
}

Rational CharacterBundle::line_phase(CellId x, std::size_t line, Elem g) const {
  if (space_.act(g, x) != x) throw std::invalid_argument("element does not fix the cell");
  return transition_phase(x, line, g);
}

Rational CharacterBundle::transition_phase(CellId x, std::size_t line, Elem g) const {
  const auto& data = orbits_[orbit_index_[x]];
  const auto& grpref = *space_.group();
  CellId y = space_.act(g, x);
  Elem s = grpref.mul(grpref.mul(grpref.inverse(transport_[y]), g), transport_[x]);
  auto it = std::lower_bound(data.stabilizer.begin(), data.stabilizer.end(), s);
  if (it == data.stabilizer.end() || *it != s) throw std::logic_error("transported element left the stabilizer");
  return data.characters[line][static_cast<std::size_t>(it - data.stabilizer.begin())];
}

Rational CharacterBundle::age(CellId x, Elem g) const {
  Rational total(0);
  const auto r = static_cast<std::size_t>(rank(x));
  for (std::size_t j = 0; j < r; ++j) total += line_phase(x, j, g);
  return total;
}

std::optional<std::vector<Rational>> CharacterBundle::diagonal_phases(CellId x, Elem g) const {
  std::vector<Rational> out;
  const auto r = static_cast<std::size_t>(rank(x));
  out.reserve(r);
  for (std::size_t j = 0; j < r; ++j) out.push_back(line_phase(x, j, g));
  return out;
}

std::shared_ptr<const CharacterBundle> zero_bundle(GSet space) {
  std::vector<CharacterBundle::OrbitData> orbits;
  auto dec = gset::quotient(space);
  for (const auto& orb : dec.orbits) {
    CharacterBundle::OrbitData d;
    d.basepoint = orb.basepoint;
    d.stabilizer = orb.stabilizer.members;
    orbits.push_back(std::move(d));
  }
  return std::make_shared<CharacterBundle>(std::move(space), std::move(orbits));
}

// --- WreathPowerBundle ----------------------------------------------------------

WreathPowerBundle::WreathPowerBundle(BundlePtr base, int n)
    : Bundle(gset::wreath_power(base->space(), n)), base_(std::move(base)), n_(n) {}

int WreathPowerBundle::rank(CellId x) const {
  auto tuple = gset::wreath_cell_tuple(base_->space(), n_, x);
  int r = 0;
  for (CellId t : tuple) r += base_->rank(t);
  return r;
}

Rational WreathPowerBundle::age(CellId x, Elem g) const {
  if (space_.act(g, x) != x) throw std::invalid_argument("element does not fix the cell");
  const auto& wg = *space_.group();
  const auto& bs = base_->space();
  auto tuple = wg.wreath_tuple(g);
  Perm sigma = wg.wreath_perm(g);
  Perm sigma_inv = invert(sigma);
  auto cells = gset::wreath_cell_tuple(bs, n_, x);
  Rational total(0);
  for (const auto& cyc : perm_cycles(sigma)) {
    std::uint16_t j = cyc.front();
    // cycle product g_j g_{s^-1(j)} g_{s^-2(j)} ... fixes the base cell
    Elem prod = bs.group()->identity();
    std::uint16_t cur = j;
    for (std::size_t step = 0; step < cyc.size(); ++step) {
      prod = bs.group()->mul(prod, tuple[cur]);
      cur = sigma_inv[cur];
    }
    const long long r = static_cast<long long>(cyc.size());
    total += base_->age(cells[j], prod);
    total += Rational(base_->rank(cells[j]) * (r - 1), 2);
  }
  return total;
}

std::optional<std::vector<Rational>> WreathPowerBundle::diagonal_phases(CellId x, Elem g) const {
  if (space_.act(g, x) != x) return std::nullopt;
  const auto& wg = *space_.group();
  auto tuple = wg.wreath_tuple(g);
  Perm sigma = wg.wreath_perm(g);
  auto cells = gset::wreath_cell_tuple(base_->space(), n_, x);
  std::vector<Rational> out;
  for (int i = 0; i < n_; ++i) {
    const CellId ci = cells[static_cast<std::size_t>(i)];
    const int r = base_->rank(ci);
    if (sigma[static_cast<std::size_t>(i)] != i) {
      if (r > 0) return std::nullopt;  // a moved coordinate with fiber lines
      continue;
    }
    auto phases = base_->diagonal_phases(ci, tuple[static_cast<std::size_t>(i)]);
    if (!phases) return std::nullopt;
    out.insert(out.end(), phases->begin(), phases->end());
  }
  return out;
}

// --- stratifications ---------------------------------------------------------------

std::map<Rational, std::vector<CellId>> age_stratify(const Bundle& b, Elem g) {
  std::map<Rational, std::vector<CellId>> strata;
  const auto& x = b.space();
  for (CellId c = 0; c < x.size(); ++c)
    if (x.act(g, c) == c) strata[b.age(c, g)].push_back(c);
  return strata;
}

std::map<int, std::vector<CellId>> rank_stratify(const Bundle& b) {
  std::map<int, std::vector<CellId>> strata;
  for (CellId c = 0; c < b.space().size(); ++c) strata[b.rank(c)].push_back(c);
  return strata;
}

// --- generalized Euler characteristics ------------------------------------------------

namespace {

std::vector<std::pair<Elem, std::size_t>> member_classes(const grp::FiniteGroup& g,
                                                         const std::vector<Elem>& members) {
  std::vector<std::pair<Elem, std::size_t>> out;
  std::vector<bool> seen(members.size(), false);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (seen[i]) continue;
    Elem rep = members[i];
    std::set<Elem> cls;
    for (Elem h : members) cls.insert(g.conjugate(rep, h));
    for (Elem c : cls) {
      auto it = std::lower_bound(members.begin(), members.end(), c);
      if (it == members.end() || *it != c) throw std::logic_error("member set not closed under conjugation");
      seen[static_cast<std::size_t>(it - members.begin())] = true;
    }
    out.emplace_back(rep, cls.size());
  }
  return out;
}

LPolynomial quotient_class_members(const GSet& x, const std::vector<Elem>& members,
                                   const std::vector<CellId>& cells) {
  std::vector<bool> seen(x.size(), false);
  std::vector<bool> inside(x.size(), false);
  for (CellId c : cells) inside[c] = true;
  LPolynomial out;
  for (CellId c : cells) {
    if (seen[c]) continue;
    out += LPolynomial::power_of_l(Rational(x.dim(c)));
    std::deque<CellId> work{c};
    seen[c] = true;
    while (!work.empty()) {
      CellId cur = work.front();
      work.pop_front();
      for (Elem m : members) {
        CellId nxt = x.act(m, cur);
        if (!inside[nxt]) throw std::logic_error("cell subset not invariant");
        if (!seen[nxt]) {
          seen[nxt] = true;
          work.push_back(nxt);
        }
      }
    }
  }
  return out;
}

// Exact monomial model of an equivariant bundle: fiber lines per cell and,
// per (element, cell), the induced permutation of lines with phases. Closed
// under the g-invariant subbundle operation the order-k recursion performs.
struct MonoBundle {
  const GSet* space = nullptr;
  std::map<CellId, int> rank;
  // act[(g, x)][line at x] = (line at g.x, phase)
  std::map<std::pair<Elem, CellId>, std::vector<std::pair<int, Rational>>> act;

  // age of g at a fixed cell: each line cycle of length r with total phase
  // theta contributes frac(theta) + (r-1)/2 worth of eigenphases
  Rational age(CellId x, Elem g) const {
    auto it = act.find({g, x});
    if (it == act.end()) throw std::logic_error("missing monomial action data");
    const auto& lm = it->second;
    Rational total(0);
    std::vector<bool> seen(lm.size(), false);
    for (std::size_t start = 0; start < lm.size(); ++start) {
      if (seen[start]) continue;
      Rational theta(0);
      long long r = 0;
      std::size_t cur = start;
      while (!seen[cur]) {
        seen[cur] = true;
        theta += lm[cur].second;
        cur = static_cast<std::size_t>(lm[cur].first);
        ++r;
      }
      total += theta.frac() + Rational(r - 1, 2);
    }
    return total;
  }
};

MonoBundle mono_from_character(const CharacterBundle& cb) {
  MonoBundle m;
  m.space = &cb.space();
  const auto& g = *cb.space().group();
  for (CellId x = 0; x < cb.space().size(); ++x) m.rank[x] = cb.rank(x);
  for (Elem e = 0; e < g.size(); ++e)
    for (CellId x = 0; x < cb.space().size(); ++x) {
      std::vector<std::pair<int, Rational>> lm;
      for (int line = 0; line < cb.rank(x); ++line)
        lm.emplace_back(line, cb.transition_phase(x, static_cast<std::size_t>(line), e));
      m.act[{e, x}] = std::move(lm);
    }
  return m;
}

MonoBundle mono_wreath(const MonoBundle& base, const WreathPowerBundle& wb) {
  MonoBundle m;
  m.space = &wb.space();
  const auto& wg = *wb.space().group();
  const auto& bs = base.space;
  const int n = wb.power();
  for (CellId x = 0; x < wb.space().size(); ++x) m.rank[x] = wb.rank(x);
  for (Elem w = 0; w < wg.size(); ++w) {
    auto tuple = wg.wreath_tuple(w);
    Perm sigma = wg.wreath_perm(w);
    for (CellId x = 0; x < wb.space().size(); ++x) {
      auto cells = gset::wreath_cell_tuple(*bs, n, x);
      // offsets of the coordinates inside source and target cells
      std::vector<int> src_off(static_cast<std::size_t>(n) + 1, 0);
      for (int i = 0; i < n; ++i)
        src_off[static_cast<std::size_t>(i) + 1] =
            src_off[static_cast<std::size_t>(i)] + base.rank.at(cells[static_cast<std::size_t>(i)]);
      CellId y = wb.space().act(w, x);
      auto ycells = gset::wreath_cell_tuple(*bs, n, y);
      std::vector<int> dst_off(static_cast<std::size_t>(n) + 1, 0);
      for (int i = 0; i < n; ++i)
        dst_off[static_cast<std::size_t>(i) + 1] =
            dst_off[static_cast<std::size_t>(i)] + base.rank.at(ycells[static_cast<std::size_t>(i)]);
      std::vector<std::pair<int, Rational>> lm(
          static_cast<std::size_t>(src_off[static_cast<std::size_t>(n)]));
      // coordinate c of the source feeds coordinate sigma(c) of the target
      // through the base action of g_{sigma(c)}
      for (int c = 0; c < n; ++c) {
        int i = sigma[static_cast<std::size_t>(c)];
        const auto& basemap = base.act.at({tuple[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(c)]});
        for (std::size_t line = 0; line < basemap.size(); ++line)
          lm[static_cast<std::size_t>(src_off[static_cast<std::size_t>(c)]) + line] = {
              dst_off[static_cast<std::size_t>(i)] + basemap[line].first, basemap[line].second};
      }
      m.act[{w, x}] = std::move(lm);
    }
  }
  return m;
}

MonoBundle to_mono(const Bundle& b) {
  if (auto cb = dynamic_cast<const CharacterBundle*>(&b)) return mono_from_character(*cb);
  if (auto wb = dynamic_cast<const WreathPowerBundle*>(&b)) {
    MonoBundle base = to_mono(*wb->base());
    return mono_wreath(base, *wb);
  }
  throw std::logic_error("unknown bundle kind");
}

// The g-invariant subbundle over the stratum: line cycles of g with integral
// total phase collapse to one invariant line each; the action of commuting
// elements descends with explicit phases.
MonoBundle invariant_subbundle(const MonoBundle& b, Elem w, const std::vector<CellId>& cells,
                               const std::vector<Elem>& members) {
  MonoBundle out;
  out.space = b.space;
  struct CellLines {
    std::vector<int> cycle_of;         // original line -> invariant line index or -1
    std::vector<Rational> normalizer;  // phase from the cycle base to this line
    std::vector<int> base_line;        // invariant line -> original base line
  };
  std::map<CellId, CellLines> lines;
  for (CellId x : cells) {
    const auto& lm = b.act.at({w, x});
    CellLines cl;
    cl.cycle_of.assign(lm.size(), -1);
    cl.normalizer.assign(lm.size(), Rational(0));
    std::vector<bool> seen(lm.size(), false);
    for (std::size_t start = 0; start < lm.size(); ++start) {
      if (seen[start]) continue;
      // walk the cycle accumulating phases
      std::vector<std::size_t> cyc;
      std::vector<Rational> acc;
      Rational theta(0);
      std::size_t cur = start;
      while (!seen[cur]) {
        seen[cur] = true;
        cyc.push_back(cur);
        acc.push_back(theta);
        theta += lm[cur].second;
        cur = static_cast<std::size_t>(lm[cur].first);
      }
      if (!theta.frac().is_zero()) continue;  // no invariant line in this cycle
      int inv = static_cast<int>(cl.base_line.size());
      cl.base_line.push_back(static_cast<int>(start));
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        cl.cycle_of[cyc[i]] = inv;
        cl.normalizer[cyc[i]] = acc[i].frac();
      }
    }
    out.rank[x] = static_cast<int>(cl.base_line.size());
    lines.emplace(x, std::move(cl));
  }
  for (Elem c : members) {
    for (CellId x : cells) {
      CellId y = b.space->act(c, x);
      const auto& src = lines.at(x);
      const auto& dst = lines.at(y);
      const auto& cmap = b.act.at({c, x});
      std::vector<std::pair<int, Rational>> lm(src.base_line.size());
      for (std::size_t inv = 0; inv < src.base_line.size(); ++inv) {
        int bline = src.base_line[inv];
        auto [target, phase] = cmap[static_cast<std::size_t>(bline)];
        int tinv = dst.cycle_of[static_cast<std::size_t>(target)];
        if (tinv < 0) throw std::logic_error("invariant line mapped outside the invariant subbundle");
        lm[inv] = {tinv, (phase - dst.normalizer[static_cast<std::size_t>(target)]).frac()};
      }
      out.act[{c, x}] = std::move(lm);
    }
  }
  return out;
}

LPolynomial gen_chi_mono(const MonoBundle& b, const std::vector<Elem>& members,
                         const std::vector<CellId>& cells, int k, const std::vector<Rational>& phis) {
  const auto& x = *b.space;
  if (k == 0) return quotient_class_members(x, members, cells);
  const auto& g = *x.group();
  std::vector<std::pair<Elem, std::size_t>> classes;
  if (members.size() == g.size()) {
    for (const auto& c : g.conjugacy_classes()) classes.emplace_back(c.representative, c.members.size());
  } else {
    classes = member_classes(g, members);
  }
  const Rational phi = phis[static_cast<std::size_t>(k - 1)];
  LPolynomial total;
  for (const auto& [rep, clssize] : classes) {
    (void)clssize;
    std::vector<Elem> cent;
    cent.reserve(members.size());
    for (Elem h : members)
      if (g.commute(h, rep)) cent.push_back(h);
    std::map<Rational, std::vector<CellId>> strata;
    for (CellId c : cells)
      if (x.act(rep, c) == c) strata[b.age(c, rep)].push_back(c);
    for (const auto& [q, stratum] : strata) {
      LPolynomial inner;
      if (k == 1) {
        inner = quotient_class_members(x, cent, stratum);
      } else {
        MonoBundle sub = invariant_subbundle(b, rep, stratum, cent);
        inner = gen_chi_mono(sub, cent, stratum, k - 1, phis);
      }
      total += inner * LPolynomial::power_of_l(phi * q);
    }
  }
  return total;
}

LPolynomial gen_chi_impl(const Bundle& b, const std::vector<Elem>& members,
                         const std::vector<CellId>& cells, int k, const std::vector<Rational>& phis) {
  if (k == 0) return quotient_class_members(b.space(), members, cells);
  MonoBundle mono = to_mono(b);
  return gen_chi_mono(mono, members, cells, k, phis);
}

}  // namespace

LPolynomial generalized_chi(const Bundle& b, int k, const std::vector<Rational>& phis,
                            const std::vector<CellId>& cells) {
  if (k < 0) throw std::invalid_argument("order must be nonnegative");
  if (static_cast<int>(phis.size()) < k) throw std::invalid_argument("weight vector too short");
  std::vector<Elem> members(b.space().group()->size());
  for (Elem e = 0; e < members.size(); ++e) members[e] = e;
  return gen_chi_impl(b, members, cells, k, phis);
}

LPolynomial generalized_chi(const Bundle& b, int k, const std::vector<Rational>& phis) {
  std::vector<CellId> cells(b.space().size());
  for (CellId c = 0; c < cells.size(); ++c) cells[c] = c;
  return generalized_chi(b, k, phis, cells);
}

Rational phi_k(const std::vector<int>& rs, const std::vector<Rational>& phis) {
  if (phis.size() < rs.size()) throw std::invalid_argument("weight vector too short");
  Rational total(0);
  long long prefix = 1;
  for (std::size_t j = 0; j < rs.size(); ++j) {
    total += phis[j] * Rational(prefix * (rs[j] - 1));
    prefix *= rs[j];
  }
  return total;
}

// --- VectClass ------------------------------------------------------------------------

VectClass& VectClass::add_term(const VectTerm& t, long long c) {
  if (c == 0) return *this;
  auto it = terms.find(t);
  if (it == terms.end()) {
    terms.emplace(t, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
  return *this;
}

namespace {

std::string serialize_matrix(const std::vector<std::vector<Rational>>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ";";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) s += ",";
      s += m[i][j].str();
    }
  }
  return s;
}

std::vector<std::vector<Rational>> parse_matrix(const std::string& s) {
  std::vector<std::vector<Rational>> m;
  if (s.empty()) return m;
  std::stringstream rows(s);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<Rational> r;
    std::stringstream vals(row);
    std::string v;
    while (std::getline(vals, v, ',')) r.push_back(Rational::parse(v));
    m.push_back(std::move(r));
  }
  return m;
}

// canonical form of a character matrix over the registry representative:
// minimum over automorphisms of the row-sorted relabeled matrix
std::vector<std::vector<Rational>> canonicalize_matrix(Registry& reg, k0fgr::GroupClassId gid,
                                                       const std::vector<std::vector<Rational>>& v) {
  if (v.empty()) return v;
  const auto& autos = reg.automorphisms(gid);
  std::vector<std::vector<Rational>> best;
  bool have = false;
  for (const auto& alpha : autos) {
    std::vector<std::vector<Rational>> w(v.size());
    for (std::size_t line = 0; line < v.size(); ++line) {
      w[line].resize(v[line].size());
      for (std::size_t r = 0; r < v[line].size(); ++r) w[line][r] = v[line][alpha.images[r]];
    }
    std::sort(w.begin(), w.end());
    if (!have || w < best) {
      best = std::move(w);
      have = true;
    }
  }
  return best;
}

const std::vector<std::pair<std::vector<Rational>, int>>& fingerprint_probes() {
  static const std::vector<std::pair<std::vector<Rational>, int>> probes = {
      {{Rational(0)}, 1},
      {{Rational(1)}, 1},
      {{Rational(1), Rational(1)}, 2},
      {{Rational(1), Rational(2)}, 2},
  };
  return probes;
}

std::string serialize_fingerprint(const std::vector<LPolynomial>& fp) {
  std::string s;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    if (i) s += "|";
    bool first = true;
    for (const auto& [q, c] : fp[i].terms) {
      if (!first) s += ";";
      first = false;
      s += q.str() + ":" + std::to_string(c);
    }
    if (first) s += "0";
  }
  return s;
}

// fingerprint of the reduced single-cell object (cell of dim d, stabilizer S
// acting through the given bundle data)
std::vector<LPolynomial> fingerprint_of(const Bundle& b, const std::vector<Elem>& stab, CellId cell) {
  std::vector<LPolynomial> fp;
  for (const auto& [phis, k] : fingerprint_probes())
    fp.push_back(gen_chi_impl(b, stab, {cell}, k, phis));
  return fp;
}

// single-cell character bundle over the registry representative, for
// computing fingerprints of diagonal terms
std::vector<LPolynomial> fingerprint_of_diag(Registry& reg, k0fgr::GroupClassId gid, std::uint32_t dim,
                                             const std::vector<std::vector<Rational>>& matrix) {
  auto rep = reg.rep(gid);
  auto space = gset::point(rep, dim);
  CharacterBundle::OrbitData data;
  data.basepoint = 0;
  data.stabilizer.resize(rep->size());
  for (Elem e = 0; e < rep->size(); ++e) data.stabilizer[e] = e;
  data.characters = matrix;
  CharacterBundle cb(std::move(space), {std::move(data)});
  std::vector<Elem> stab(rep->size());
  for (Elem e = 0; e < rep->size(); ++e) stab[e] = e;
  return fingerprint_of(cb, stab, 0);
}

std::vector<LPolynomial> term_fingerprint(Registry& reg, const VectTerm& t) {
  if (!t.diagonal) {
    // parse back from the key
    std::vector<LPolynomial> fp;
    std::stringstream entries(t.fiber_key);
    std::string entry;
    while (std::getline(entries, entry, '|')) {
      LPolynomial p;
      if (entry != "0") {
        std::stringstream terms(entry);
        std::string term;
        while (std::getline(terms, term, ';')) {
          auto colon = term.rfind(':');
          p += LPolynomial::power_of_l(Rational::parse(term.substr(0, colon)),
                                       std::stoll(term.substr(colon + 1)));
        }
      }
      fp.push_back(std::move(p));
    }
    return fp;
  }
  return fingerprint_of_diag(reg, t.group, t.dim, parse_matrix(t.fiber_key));
}

}  // namespace

VectClass vect_unit(Registry& reg) {
  VectClass c;
  VectTerm t;
  t.group = reg.id_of(FiniteGroup::trivial());
  t.dim = 0;
  t.diagonal = true;
  c.add_term(t, 1);
  return c;
}

VectClass vect_add(const VectClass& a, const VectClass& b) {
  VectClass r = a;
  for (const auto& [t, c] : b.terms) r.add_term(t, c);
  return r;
}

VectClass vect_neg(const VectClass& a) {
  VectClass r;
  for (const auto& [t, c] : a.terms) r.terms.emplace(t, -c);
  return r;
}

bool vect_equals(const VectClass& a, const VectClass& b) { return a.terms == b.terms; }

k0fgr::FgrClass vect_forget(const VectClass& a) {
  k0fgr::FgrClass r;
  for (const auto& [t, c] : a.terms) r.add_term(t.group, t.dim, c);
  return r;
}

VectClass vect_mul(Registry& reg, const VectClass& a, const VectClass& b) {
  VectClass r;
  for (const auto& [ta, ca] : a.terms)
    for (const auto& [tb, cb] : b.terms) {
      VectTerm t;
      t.group = reg.product(ta.group, tb.group);
      t.dim = ta.dim + tb.dim;
      if (ta.diagonal && tb.diagonal) {
        t.diagonal = true;
        // lift both matrices to the product group, transport to the
        // representative of the product class and canonicalize
        auto ga = reg.rep(ta.group);
        auto gb = reg.rep(tb.group);
        auto prod = FiniteGroup::direct_product(ga, gb);
        auto [pid, iso] = reg.id_of_with_iso(prod);
        if (pid != t.group) throw std::logic_error("product class mismatch");
        auto ma = parse_matrix(ta.fiber_key);
        auto mb = parse_matrix(tb.fiber_key);
        std::vector<std::vector<Rational>> lifted(ma.size() + mb.size());
        auto repg = reg.rep(pid);
        for (auto& row : lifted) row.resize(repg->size(), Rational(0));
        for (Elem e = 0; e < prod->size(); ++e) {
          auto parts = prod->product_split(e);
          Elem target = iso.images[e];
          for (std::size_t line = 0; line < ma.size(); ++line) lifted[line][target] = ma[line][parts[0]];
          for (std::size_t line = 0; line < mb.size(); ++line)
            lifted[ma.size() + line][target] = mb[line][parts[1]];
        }
        t.fiber_key = serialize_matrix(canonicalize_matrix(reg, pid, lifted));
      } else {
        t.diagonal = false;
        auto fa = term_fingerprint(reg, ta);
        auto fb = term_fingerprint(reg, tb);
        std::vector<LPolynomial> fp(fa.size());
        for (std::size_t i = 0; i < fa.size(); ++i) fp[i] = fa[i] * fb[i];
        t.fiber_key = serialize_fingerprint(fp);
      }
      r.add_term(t, ca * cb);
    }
  return r;
}

std::string vect_to_string(Registry& reg, const VectClass& a) {
  if (a.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [t, c] : a.terms) {
    if (!first) s += c >= 0 ? " + " : " - ";
    long long v = (!first && c < 0) ? -c : c;
    first = false;
    auto g = reg.rep(t.group);
    std::string gname = g->name().empty() ? ("|G|=" + std::to_string(g->size())) : g->name();
    s += std::to_string(v) + "*(" + gname;
    if (t.dim) s += ",L^" + std::to_string(t.dim);
    s += t.diagonal ? (t.fiber_key.empty() ? "" : ",chars[" + t.fiber_key + "]") : ",fp[" + t.fiber_key + "]";
    s += ")";
  }
  return s;
}

VectClass class_of_vect(Registry& reg, const Bundle& b, const std::vector<CellId>& cells) {
  const auto& x = b.space();
  const auto& g = *x.group();
  VectClass out;
  std::vector<bool> inside(x.size(), false), seen(x.size(), false);
  for (CellId c : cells) inside[c] = true;
  for (CellId c : cells) {
    if (seen[c]) continue;
    // orbit of c under the full group
    std::set<CellId> orbit;
    std::deque<CellId> work{c};
    orbit.insert(c);
    while (!work.empty()) {
      CellId cur = work.front();
      work.pop_front();
      for (Elem gen : g.generators()) {
        CellId nxt = x.act(gen, cur);
        if (!inside[nxt]) throw std::invalid_argument("cell subset is not invariant");
        if (orbit.insert(nxt).second) work.push_back(nxt);
      }
    }
    for (CellId m : orbit) seen[m] = true;
    CellId basepoint = *orbit.begin();
    std::vector<Elem> stab;
    for (Elem e = 0; e < g.size(); ++e)
      if (x.act(e, basepoint) == basepoint) stab.push_back(e);
    grp::Subgroup sub{x.group(), stab};
    auto [gid, iso] = reg.id_of_with_iso(sub.as_group());

    VectTerm t;
    t.group = gid;
    t.dim = x.dim(basepoint);
    // try the diagonal route: every stabilizer element must act diagonally
    bool diagonal = true;
    std::vector<std::vector<Rational>> phases_per_member;  // [member][line]
    for (Elem s : stab) {
      auto ph = b.diagonal_phases(basepoint, s);
      if (!ph) {
        diagonal = false;
        break;
      }
      phases_per_member.push_back(std::move(*ph));
    }
    if (diagonal) {
      t.diagonal = true;
      const std::size_t lines = phases_per_member.empty() ? 0 : phases_per_member[0].size();
      std::vector<std::vector<Rational>> v(lines);
      auto repg = reg.rep(gid);
      for (auto& row : v) row.resize(repg->size(), Rational(0));
      for (std::size_t mi = 0; mi < stab.size(); ++mi) {
        Elem target = iso.images[mi];  // member mi of the stabilizer-as-group
        for (std::size_t line = 0; line < lines; ++line) v[line][target] = phases_per_member[mi][line];
      }
      t.fiber_key = serialize_matrix(canonicalize_matrix(reg, gid, v));
    } else {
      t.diagonal = false;
      t.fiber_key = serialize_fingerprint(fingerprint_of(b, stab, basepoint));
    }
    out.add_term(t, 1);
  }
  return out;
}

VectClass class_of_vect(Registry& reg, const Bundle& b) {
  std::vector<CellId> cells(b.space().size());
  for (CellId c = 0; c < cells.size(); ++c) cells[c] = c;
  return class_of_vect(reg, b, cells);
}

// --- series ---------------------------------------------------------------------------

series::TruncatedSeries<VectRing> zeta_vect_series(const VectRing& ring, const BundlePtr& base, int order) {
  auto s = series::TruncatedSeries<VectRing>::one(ring, order);
  for (int n = 1; n <= order; ++n) {
    WreathPowerBundle wb(base, n);
    s.at(n) = class_of_vect(*ring.reg, wb);
  }
  return s;
}

series::TruncatedSeries<VectRing> lambda_vect_series(const VectRing& ring, const BundlePtr& base, int order) {
  auto s = series::TruncatedSeries<VectRing>::one(ring, order);
  for (int n = 1; n <= order; ++n) {
    WreathPowerBundle wb(base, n);
    auto keep = gset::big_diagonal_complement_cells(base->space(), n);
    s.at(n) = class_of_vect(*ring.reg, wb, keep);
  }
  return s;
}

// --- induced and product bundles --------------------------------------------------------

std::shared_ptr<const CharacterBundle> induced_bundle(const CharacterBundle& b, const GroupPtr& h,
                                                      const grp::GroupHom& embedding) {
  std::vector<std::pair<Elem, CellId>> reps;
  GSet ind = gset::induced_gset(b.space(), h, embedding, &reps);
  // inverse of the embedding on its image
  std::map<Elem, Elem> phi_inv;
  for (Elem e = 0; e < embedding.source->size(); ++e) phi_inv[embedding.images[e]] = e;

  auto dec = gset::quotient(ind);
  std::vector<CharacterBundle::OrbitData> orbits;
  for (const auto& orb : dec.orbits) {
    CharacterBundle::OrbitData data;
    data.basepoint = orb.basepoint;
    data.stabilizer = orb.stabilizer.members;
    auto [h0, x0] = reps[orb.basepoint];
    const int lines = b.rank(x0);
    data.characters.assign(static_cast<std::size_t>(lines), {});
    for (Elem s : data.stabilizer) {
      // s fixes [(h0, x0)], so h0^-1 s h0 lies in the embedded copy of G and
      // acts on the fiber E_{x0} through the source group
      Elem conj = h->mul(h->mul(h->inverse(h0), s), h0);
      auto it = phi_inv.find(conj);
      if (it == phi_inv.end()) throw std::logic_error("induced stabilizer left the embedded subgroup");
      Elem gsrc = it->second;
      for (int line = 0; line < lines; ++line)
        data.characters[static_cast<std::size_t>(line)].push_back(
            b.line_phase(x0, static_cast<std::size_t>(line), gsrc));
    }
    orbits.push_back(std::move(data));
  }
  return std::make_shared<CharacterBundle>(std::move(ind), std::move(orbits));
}

std::shared_ptr<const CharacterBundle> product_bundle(const CharacterBundle& a, const CharacterBundle& b) {
  GSet prod = gset::product(a.space(), b.space());
  const auto& pg = prod.group();
  auto dec = gset::quotient(prod);
  std::vector<CharacterBundle::OrbitData> orbits;
  for (const auto& orb : dec.orbits) {
    CharacterBundle::OrbitData data;
    data.basepoint = orb.basepoint;
    data.stabilizer = orb.stabilizer.members;
    CellId xa = orb.basepoint / static_cast<CellId>(b.space().size());
    CellId xb = orb.basepoint % static_cast<CellId>(b.space().size());
    const int la = a.rank(xa);
    const int lb = b.rank(xb);
    data.characters.assign(static_cast<std::size_t>(la + lb), {});
    for (Elem s : data.stabilizer) {
      auto parts = pg->product_split(s);
      for (int line = 0; line < la; ++line)
        data.characters[static_cast<std::size_t>(line)].push_back(
            a.line_phase(xa, static_cast<std::size_t>(line), parts[0]));
      for (int line = 0; line < lb; ++line)
        data.characters[static_cast<std::size_t>(la + line)].push_back(
            b.line_phase(xb, static_cast<std::size_t>(line), parts[1]));
    }
    orbits.push_back(std::move(data));
  }
  return std::make_shared<CharacterBundle>(std::move(prod), std::move(orbits));
}

// --- wreath-power Macdonald identity ------------------------------------------------------

WreathBundleReport verify_wreath_bundle_theorem(const BundlePtr& b, int k,
                                                const std::vector<Rational>& phis, int order) {
  WreathBundleReport report;
  report.lhs.push_back(LPolynomial(1));
  for (int n = 1; n <= order; ++n) {
    WreathPowerBundle wb(b, n);
    report.lhs.push_back(generalized_chi(wb, k, phis));
  }

  const series::LPolyRing lring;
  auto zl = series::zeta_power_l(lring);
  auto rhs = series::TruncatedSeries<series::LPolyRing>::one(lring, order);
  for (const auto& [d, stratum] : rank_stratify(*b)) {
    LPolynomial exponent = generalized_chi(*b, k, phis, stratum);
    // inner product over tuples r_1..r_k with r_1...r_k <= order
    auto inner = series::TruncatedSeries<series::LPolyRing>::one(lring, order);
    std::vector<int> rs(static_cast<std::size_t>(k), 1);
    std::function<void(int, long long)> rec = [&](int pos, long long p) {
      if (pos == k) {
        long long weight = 1;
        for (int j = 1; j < k; ++j)
          for (int repcount = 0; repcount < j; ++repcount) weight *= rs[static_cast<std::size_t>(j)];
        auto factor = series::TruncatedSeries<series::LPolyRing>::one(lring, order);
        factor.at(static_cast<int>(p)) =
            -LPolynomial::power_of_l(phi_k(rs, phis) * Rational(d, 2));
        inner = series_mul(inner, series::series_pow_int(factor, weight));
        return;
      }
      for (long long v = 1; p * v <= order; ++v) {
        rs[static_cast<std::size_t>(pos)] = static_cast<int>(v);
        rec(pos + 1, p * v);
      }
    };
    rec(0, 1);
    rhs = series_mul(rhs, series::power_via_lambda(inner, -exponent, zl));
  }
  for (int n = 0; n <= order; ++n) report.rhs.push_back(rhs.at(n));
  report.ok = report.lhs == report.rhs;
  return report;
}

}  // namespace orbichar::bundle
