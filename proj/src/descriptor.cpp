#include "orbichar/descriptor.hpp"

#include <stdexcept>

namespace orbichar::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

grp::GroupPtr parse_group(const json& j) {
  if (j.is_string()) return grp::FiniteGroup::named(j.get<std::string>());
  if (!j.is_object() || !j.contains("type")) bad("group descriptor needs a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "named") {
    if (!j.contains("name")) bad("named group descriptor needs \"name\"");
    return grp::FiniteGroup::named(j.at("name").get<std::string>());
  }
  if (type == "permutation") {
    if (!j.contains("degree") || !j.contains("generators"))
      bad("permutation group descriptor needs \"degree\" and \"generators\"");
    int degree = j.at("degree").get<int>();
    std::vector<Perm> gens;
    for (const auto& row : j.at("generators")) {
      Perm p;
      for (const auto& v : row) p.push_back(v.get<std::uint16_t>());
      gens.push_back(std::move(p));
    }
    return grp::FiniteGroup::from_permutations(degree, gens);
  }
  if (type == "table") {
    if (!j.contains("mul")) bad("table group descriptor needs \"mul\"");
    std::vector<std::vector<grp::Elem>> mul;
    for (const auto& row : j.at("mul")) {
      std::vector<grp::Elem> r;
      for (const auto& v : row) r.push_back(v.get<grp::Elem>());
      mul.push_back(std::move(r));
    }
    return grp::FiniteGroup::from_table(mul);
  }
  if (type == "product") {
    if (!j.contains("factors")) bad("product group descriptor needs \"factors\"");
    std::vector<grp::GroupPtr> factors;
    for (const auto& f : j.at("factors")) factors.push_back(parse_group(f));
    return grp::FiniteGroup::product_many(std::move(factors));
  }
  if (type == "wreath") {
    if (!j.contains("base") || !j.contains("n")) bad("wreath group descriptor needs \"base\" and \"n\"");
    return grp::FiniteGroup::wreath_product(parse_group(j.at("base")), j.at("n").get<int>());
  }
  if (type == "twisted") {
    if (!j.contains("base") || !j.contains("parts")) bad("twisted group descriptor needs \"base\" and \"parts\"");
    std::vector<std::pair<grp::GroupPtr, int>> parts;
    for (const auto& p : j.at("parts"))
      parts.emplace_back(parse_group(p.at("group")), p.at("k").get<int>());
    return grp::FiniteGroup::twisted_product(parse_group(j.at("base")), parts);
  }
  bad("unknown group descriptor type \"" + type + "\"");
}

gset::GSet parse_gset(const json& j) {
  if (!j.is_object() || !j.contains("group")) bad("gset descriptor needs a \"group\" field");
  auto g = parse_group(j.at("group"));
  if (j.contains("space")) {
    const std::string space = j.at("space").get<std::string>();
    std::uint32_t dim = j.value("dim", 0u);
    if (space == "point") return gset::point(g, dim);
    if (space == "regular") return gset::regular_set(g);
    bad("unknown named space \"" + space + "\"");
  }
  if (!j.contains("cells")) bad("gset descriptor needs \"cells\"");
  std::vector<std::uint32_t> dims;
  for (const auto& c : j.at("cells")) {
    if (c.is_object())
      dims.push_back(c.value("dim", 0u));
    else
      dims.push_back(c.get<std::uint32_t>());
  }
  if (!j.contains("action") || j.at("action").empty()) {
    if (!g->generators().empty() && g->size() > 1) {
      // an omitted action means the trivial action
      std::vector<std::vector<gset::CellId>> ids(g->generators().size());
      for (auto& row : ids)
        for (gset::CellId c = 0; c < dims.size(); ++c) row.push_back(c);
      return gset::from_generator_action(g, dims, ids);
    }
    return gset::trivial_cells(g, dims);
  }
  std::vector<std::vector<gset::CellId>> gen_images(g->generators().size());
  for (auto& row : gen_images)
    for (gset::CellId c = 0; c < dims.size(); ++c) row.push_back(c);
  for (const auto& [key, row] : j.at("action").items()) {
    std::size_t gi = std::stoul(key);
    if (gi >= g->generators().size()) bad("action key " + key + " is not a generator index");
    std::vector<gset::CellId> images;
    for (const auto& v : row) images.push_back(v.get<gset::CellId>());
    if (images.size() != dims.size()) bad("action row for generator " + key + " has wrong length");
    gen_images[gi] = std::move(images);
  }
  return gset::from_generator_action(g, dims, gen_images);
}

std::shared_ptr<const bundle::CharacterBundle> parse_bundle(const json& j) {
  if (!j.is_object() || !j.contains("base")) bad("bundle descriptor needs a \"base\" gset");
  auto space = parse_gset(j.at("base"));
  auto dec = gset::quotient(space);
  std::vector<bundle::CharacterBundle::OrbitData> orbits;
  if (!j.contains("orbits")) {
    // no fiber data: the zero bundle
    for (const auto& orb : dec.orbits) {
      bundle::CharacterBundle::OrbitData d;
      d.basepoint = orb.basepoint;
      d.stabilizer = orb.stabilizer.members;
      orbits.push_back(std::move(d));
    }
  } else {
    for (const auto& jo : j.at("orbits")) {
      bundle::CharacterBundle::OrbitData d;
      d.basepoint = jo.at("basepoint").get<gset::CellId>();
      // locate the stabilizer
      bool found = false;
      for (const auto& orb : dec.orbits)
        if (std::binary_search(orb.cells.begin(), orb.cells.end(), d.basepoint)) {
          grp::Subgroup stab{space.group(), {}};
          for (grp::Elem e = 0; e < space.group()->size(); ++e)
            if (space.act(e, d.basepoint) == d.basepoint) stab.members.push_back(e);
          d.stabilizer = stab.members;
          found = true;
          break;
        }
      if (!found) bad("bundle basepoint is not a cell");
      for (const auto& line : jo.at("characters")) {
        std::vector<Rational> values(d.stabilizer.size(), Rational(0));
        for (const auto& [key, val] : line.items()) {
          grp::Elem e = static_cast<grp::Elem>(std::stoul(key));
          auto it = std::lower_bound(d.stabilizer.begin(), d.stabilizer.end(), e);
          if (it == d.stabilizer.end() || *it != e)
            bad("character key " + key + " is not a stabilizer element");
          values[static_cast<std::size_t>(it - d.stabilizer.begin())] = parse_rational(val);
        }
        d.characters.push_back(std::move(values));
      }
      orbits.push_back(std::move(d));
    }
  }
  return std::make_shared<bundle::CharacterBundle>(std::move(space), std::move(orbits));
}

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  bad("exact rationals must be integers or \"p/q\" strings");
}

json group_to_json(const grp::GroupPtr& g) {
  json out;
  out["type"] = "permutation";
  out["degree"] = g->degree();
  json gens = json::array();
  for (grp::Elem e : g->generators()) {
    auto p = g->perm_of(e);
    gens.push_back(std::vector<int>(p.begin(), p.end()));
  }
  if (gens.empty()) {
    // a group needs at least one generator row to re-parse; use the identity
    Perm id = identity_perm(static_cast<std::size_t>(g->degree()));
    gens.push_back(std::vector<int>(id.begin(), id.end()));
  }
  out["generators"] = gens;
  out["order"] = g->size();
  if (!g->name().empty()) out["name"] = g->name();
  return out;
}

json gset_to_json(const gset::GSet& x) {
  json out;
  out["group"] = group_to_json(x.group());
  json cells = json::array();
  for (gset::CellId c = 0; c < x.size(); ++c) cells.push_back(json{{"dim", x.dim(c)}});
  out["cells"] = cells;
  json action = json::object();
  const auto& gens = x.group()->generators();
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<gset::CellId> row;
    for (gset::CellId c = 0; c < x.size(); ++c) row.push_back(x.act(gens[gi], c));
    action[std::to_string(gi)] = row;
  }
  out["action"] = action;
  return out;
}

json rational_to_json(const Rational& q) { return q.str(); }

json lpoly_to_json(const LPolynomial& p) {
  json out = json::array();
  for (const auto& [q, c] : p.terms) out.push_back(json{{"q", q.str()}, {"c", c}});
  return out;
}

json fgr_to_json(k0fgr::Registry& reg, const k0fgr::FgrClass& c) {
  json out = json::array();
  for (const auto& [term, coeff] : c.terms) {
    json t;
    t["group"] = group_to_json(reg.rep(term.first));
    t["order"] = reg.rep(term.first)->size();
    t["dim"] = term.second;
    t["coeff"] = coeff;
    out.push_back(t);
  }
  return out;
}

json vect_to_json(k0fgr::Registry& reg, const bundle::VectClass& v) {
  json out = json::array();
  for (const auto& [term, coeff] : v.terms) {
    json t;
    t["group"] = group_to_json(reg.rep(term.group));
    t["order"] = reg.rep(term.group)->size();
    t["dim"] = term.dim;
    t["coeff"] = coeff;
    t["fiber"] = json{{"kind", term.diagonal ? "characters" : "fingerprint"}, {"data", term.fiber_key}};
    out.push_back(t);
  }
  return out;
}

}  // namespace orbichar::cli
