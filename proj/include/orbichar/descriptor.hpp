#pragma once

#include <json.hpp>

#include "orbichar/bundle.hpp"
#include "orbichar/gset.hpp"
#include "orbichar/group.hpp"
#include "orbichar/k0fgr.hpp"

namespace orbichar::cli {

using json = nlohmann::json;

// Input-side parsing. All parse errors throw std::invalid_argument with a
// message naming the offending field.
grp::GroupPtr parse_group(const json& j);
gset::GSet parse_gset(const json& j);
std::shared_ptr<const bundle::CharacterBundle> parse_bundle(const json& j);
Rational parse_rational(const json& j);

// Output-side serialization. Groups serialize as permutation descriptors
// that re-parse to isomorphic groups.
json group_to_json(const grp::GroupPtr& g);
json gset_to_json(const gset::GSet& x);
json rational_to_json(const Rational& q);
json lpoly_to_json(const LPolynomial& p);
json fgr_to_json(k0fgr::Registry& reg, const k0fgr::FgrClass& c);
json vect_to_json(k0fgr::Registry& reg, const bundle::VectClass& v);

}  // namespace orbichar::cli
