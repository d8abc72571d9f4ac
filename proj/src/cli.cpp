#include "orbichar/cli.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "orbichar/acceptance.hpp"
#include "orbichar/euler.hpp"
#include "orbichar/power.hpp"

namespace orbichar::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

struct ConfigOverride {
  Config saved;
  ConfigOverride(std::size_t max_order, std::size_t iso_bound) : saved(global_config()) {
    if (max_order) global_config().max_group_order = max_order;
    if (iso_bound) global_config().iso_bound = iso_bound;
  }
  ~ConfigOverride() { global_config() = saved; }
};

json series_fgr_to_json(k0fgr::Registry& reg, const series::TruncatedSeries<series::FgrRing>& s) {
  json coeffs = json::array();
  for (int n = 0; n <= s.order; ++n) coeffs.push_back(fgr_to_json(reg, s.at(n)));
  return json{{"N", s.order}, {"coeffs", coeffs}};
}

json series_vect_to_json(k0fgr::Registry& reg, const series::TruncatedSeries<bundle::VectRing>& s) {
  json coeffs = json::array();
  for (int n = 0; n <= s.order; ++n) coeffs.push_back(vect_to_json(reg, s.at(n)));
  return json{{"N", s.order}, {"coeffs", coeffs}};
}

const json& need(const json& input, const char* field) {
  if (!input.contains(field)) bad(std::string("input document needs a \"") + field + "\" field");
  return input.at(field);
}

json run_chi(const JobSpec& spec, std::ostringstream& human) {
  auto x = parse_gset(need(spec.input, "gset"));
  json out;
  out["k"] = spec.k;
  long long rec = euler::chi_k_recursive(x, spec.k);
  out["recursive"] = rec;
  if (spec.k >= 1) {
    long long tup = euler::chi_k_tuples(x, spec.k);
    out["tuples"] = tup;
    out["definition"] = "both";
    out["agree"] = (tup == rec);
  } else {
    out["definition"] = "recursive";
  }
  out["value"] = rec;
  human << "chi^(" << spec.k << ") = " << rec << "\n";
  return out;
}

json run_class(const JobSpec& spec, k0fgr::Registry& reg, std::ostringstream& human) {
  auto x = parse_gset(need(spec.input, "gset"));
  auto cls = k0fgr::class_of(reg, x);
  human << "class = " << k0fgr::fgr_to_string(reg, cls) << "\n";
  return json{{"class", fgr_to_json(reg, cls)}};
}

json run_series(const JobSpec& spec, k0fgr::Registry& reg, bool zeta, std::ostringstream& human) {
  if (spec.input.contains("bundle")) {
    auto b = parse_bundle(spec.input.at("bundle"));
    bundle::VectRing ring{&reg};
    auto s = zeta ? bundle::zeta_vect_series(ring, b, spec.order)
                  : bundle::lambda_vect_series(ring, b, spec.order);
    human << (zeta ? "zeta" : "lambda") << " series over the bundle ring, N=" << spec.order << "\n";
    return series_vect_to_json(reg, s);
  }
  auto x = parse_gset(need(spec.input, "gset"));
  series::FgrRing ring{&reg};
  auto s = zeta ? power::kapranov_zeta_model(ring, x, spec.order)
                : power::lambda_series_model(ring, x, spec.order);
  for (int n = 0; n <= spec.order; ++n)
    human << "t^" << n << ": " << k0fgr::fgr_to_string(reg, s.at(n)) << "\n";
  return series_fgr_to_json(reg, s);
}

json run_power(const JobSpec& spec, k0fgr::Registry& reg, std::ostringstream& human) {
  const std::string ring_name = spec.input.value("ring", "int");
  if (ring_name == "int") {
    const series::IntRing zring;
    std::vector<long long> coeffs;
    for (const auto& v : need(spec.input, "A")) coeffs.push_back(v.get<long long>());
    if (coeffs.empty() || coeffs[0] != 1) bad("the series A must start with constant term 1");
    auto a = series::TruncatedSeries<series::IntRing>::from_coeffs(zring, spec.order, coeffs);
    long long m = need(spec.input, "m").get<long long>();
    const std::string structure = spec.input.value("structure", "binomial");
    series::TruncatedSeries<series::IntRing> result = a;
    if (structure == "binomial") {
      result = series::power_standard_int(a, m);
    } else if (structure == "zeta") {
      auto ls = series::int_zeta_lambda(zring);
      result = series::power_via_lambda(a, m, ls);
    } else if (structure == "configuration") {
      auto ls = series::int_config_lambda(zring);
      result = series::power_via_lambda(a, m, ls);
    } else {
      bad("unknown power structure \"" + structure + "\"");
    }
    json coeffs_out = json::array();
    for (int n = 0; n <= spec.order; ++n) coeffs_out.push_back(result.at(n));
    human << "(A)^" << m << " via " << structure << "\n";
    return json{{"N", spec.order}, {"coeffs", coeffs_out}};
  }
  if (ring_name == "fgr") {
    series::FgrRing ring{&reg};
    auto exponent = parse_gset(need(spec.input, "exponent"));
    std::vector<gset::GSet> coeff_spaces;
    for (const auto& j : need(spec.input, "coefficients")) coeff_spaces.push_back(parse_gset(j));
    auto s = power::effective_power(ring, coeff_spaces, exponent, spec.order);
    human << "effective power, N=" << spec.order << "\n";
    return series_fgr_to_json(reg, s);
  }
  bad("unknown ring \"" + ring_name + "\"");
}

json run_generalized(const JobSpec& spec, std::ostringstream& human) {
  auto b = parse_bundle(need(spec.input, "bundle"));
  if (static_cast<int>(spec.phis.size()) < spec.k) bad("--phi needs at least k weights");
  auto v = bundle::generalized_chi(*b, spec.k, spec.phis);
  human << "[Z,E,G]^" << spec.k << " = " << v.str() << "\n";
  return json{{"k", spec.k}, {"value", lpoly_to_json(v)}, {"pretty", v.str()}};
}

json run_verify_tamanoi(const JobSpec& spec, k0fgr::Registry& reg, std::ostringstream& human,
                        bool& pass) {
  auto x = parse_gset(need(spec.input, "gset"));
  auto rep = power::verify_tamanoi(reg, x, spec.k, spec.order);
  pass = rep.ok;
  human << (rep.ok ? "PASS" : "FAIL") << " tamanoi k=" << spec.k << " N=" << spec.order << "\n";
  for (std::size_t n = 0; n < rep.lhs.size(); ++n)
    human << "  t^" << n << ": lhs=" << rep.lhs[n] << " rhs=" << rep.rhs[n] << "\n";
  return json{{"k", spec.k}, {"N", spec.order}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"pass", rep.ok}};
}

json run_verify_wreath_bundle(const JobSpec& spec, std::ostringstream& human, bool& pass) {
  auto b = parse_bundle(need(spec.input, "bundle"));
  if (static_cast<int>(spec.phis.size()) < spec.k) bad("--phi needs at least k weights");
  auto rep = bundle::verify_wreath_bundle_theorem(b, spec.k, spec.phis, spec.order);
  pass = rep.ok;
  json lhs = json::array(), rhs = json::array();
  for (const auto& v : rep.lhs) lhs.push_back(lpoly_to_json(v));
  for (const auto& v : rep.rhs) rhs.push_back(lpoly_to_json(v));
  human << (rep.ok ? "PASS" : "FAIL") << " wreath bundle identity k=" << spec.k << " N=" << spec.order
        << "\n";
  for (std::size_t n = 0; n < rep.lhs.size(); ++n)
    human << "  t^" << n << ": lhs=" << rep.lhs[n].str() << " rhs=" << rep.rhs[n].str() << "\n";
  return json{{"k", spec.k}, {"N", spec.order}, {"lhs", lhs}, {"rhs", rhs}, {"pass", rep.ok}};
}

json run_verify_power_axioms(const JobSpec& spec, std::ostringstream& human, bool& pass) {
  const std::string ring_name = spec.input.value("ring", "int");
  const int trials = spec.input.value("trials", 100);
  std::mt19937_64 rng(static_cast<std::uint64_t>(spec.seed));
  std::uniform_int_distribution<long long> coeff(-3, 3), exp(-4, 4);
  int failures = 0;
  if (ring_name == "int") {
    const series::IntRing zring;
    auto zeta = series::int_zeta_lambda(zring);
    auto config = series::int_config_lambda(zring);
    for (int t = 0; t < trials; ++t) {
      std::vector<long long> va{1}, vb{1};
      for (int i = 1; i <= spec.order; ++i) {
        va.push_back(coeff(rng));
        vb.push_back(coeff(rng));
      }
      auto a = series::TruncatedSeries<series::IntRing>::from_coeffs(zring, spec.order, va);
      auto b = series::TruncatedSeries<series::IntRing>::from_coeffs(zring, spec.order, vb);
      long long m = exp(rng), n = exp(rng);
      bool ok = series::series_equal(series::power_standard_int(a, 0),
                             series::TruncatedSeries<series::IntRing>::one(zring, spec.order)) &&
                series::series_equal(series::power_standard_int(a, 1), a) &&
                series::series_equal(series::power_standard_int(series::series_mul(a, b), m),
                             series::series_mul(series::power_standard_int(a, m), series::power_standard_int(b, m))) &&
                series::series_equal(series::power_standard_int(a, m + n),
                             series::series_mul(series::power_standard_int(a, m), series::power_standard_int(a, n))) &&
                series::series_equal(series::power_standard_int(a, m * n),
                             series::power_standard_int(series::power_standard_int(a, n), m)) &&
                series::power_standard_int(a, m).at(1) == m * a.at(1) &&
                series::series_equal(series::power_standard_int(series::substitute_power(a, 2), m),
                             series::substitute_power(series::power_standard_int(a, m), 2)) &&
                series::series_equal(series::power_via_lambda(a, m, zeta), series::power_standard_int(a, m)) &&
                series::series_equal(series::power_via_lambda(a, m, config), series::power_standard_int(a, m));
      if (!ok) ++failures;
    }
  } else if (ring_name == "lpoly") {
    const series::LPolyRing lring;
    auto zl = series::zeta_power_l(lring);
    const std::vector<Rational> qs = {Rational(0), Rational(1, 2), Rational(1)};
    auto rand_lpoly = [&]() {
      LPolynomial p;
      std::uniform_int_distribution<int> nt(0, 2), pq(0, static_cast<int>(qs.size()) - 1);
      int n = nt(rng);
      for (int i = 0; i < n; ++i)
        p += LPolynomial::power_of_l(qs[static_cast<std::size_t>(pq(rng))], coeff(rng));
      return p;
    };
    for (int t = 0; t < trials; ++t) {
      std::vector<LPolynomial> va{LPolynomial(1)}, vb{LPolynomial(1)};
      for (int i = 1; i <= spec.order; ++i) {
        va.push_back(rand_lpoly());
        vb.push_back(rand_lpoly());
      }
      auto a = series::TruncatedSeries<series::LPolyRing>::from_coeffs(lring, spec.order, va);
      auto b = series::TruncatedSeries<series::LPolyRing>::from_coeffs(lring, spec.order, vb);
      auto m = rand_lpoly();
      auto n = rand_lpoly();
      bool ok = series::series_equal(series::power_via_lambda(a, LPolynomial(0), zl),
                             series::TruncatedSeries<series::LPolyRing>::one(lring, spec.order)) &&
                series::series_equal(series::power_via_lambda(a, LPolynomial(1), zl), a) &&
                series::series_equal(series::power_via_lambda(series::series_mul(a, b), m, zl),
                             series::series_mul(series::power_via_lambda(a, m, zl),
                                        series::power_via_lambda(b, m, zl))) &&
                series::series_equal(series::power_via_lambda(a, m + n, zl),
                             series::series_mul(series::power_via_lambda(a, m, zl),
                                        series::power_via_lambda(a, n, zl))) &&
                series::series_equal(series::power_via_lambda(a, m * n, zl),
                             series::power_via_lambda(series::power_via_lambda(a, n, zl), m, zl)) &&
                series::power_via_lambda(a, m, zl).at(1) == m * a.at(1) &&
                series::series_equal(series::power_via_lambda(series::substitute_power(a, 2), m, zl),
                             series::substitute_power(series::power_via_lambda(a, m, zl), 2));
      if (!ok) ++failures;
    }
  } else {
    bad("unknown ring \"" + ring_name + "\" (use \"int\" or \"lpoly\")");
  }
  pass = failures == 0;
  human << (pass ? "PASS" : "FAIL") << " power axioms over " << ring_name << ", " << trials
        << " trials\n";
  return json{{"ring", ring_name}, {"trials", trials}, {"failures", failures}, {"pass", pass}};
}

json run_verify_induction(const JobSpec& spec, k0fgr::Registry& reg, std::ostringstream& human,
                          bool& pass) {
  auto z = parse_gset(need(spec.input, "gset"));
  auto h = parse_group(need(spec.input, "supergroup"));
  grp::GroupHom emb;
  if (spec.input.contains("embedding") && spec.input.at("embedding").is_array()) {
    emb.source = z.group();
    emb.target = h;
    for (const auto& v : spec.input.at("embedding")) emb.images.push_back(v.get<grp::Elem>());
    if (emb.images.size() != z.group()->size()) bad("\"embedding\" must list one image per group element");
    if (!emb.is_homomorphism() || !emb.is_injective()) bad("\"embedding\" is not an injective homomorphism");
  } else {
    auto found = grp::find_embedding(z.group(), h);
    if (!found) bad("no embedding of the acting group into the supergroup exists");
    emb = *found;
  }
  auto rep = euler::verify_induction_invariance(z, h, emb, spec.k, reg);
  pass = rep.all_ok;
  json checks = json::array();
  for (const auto& chk : rep.checks)
    checks.push_back(json{{"k", chk.k},
                          {"lhs_recursive", chk.lhs_recursive},
                          {"rhs_recursive", chk.rhs_recursive},
                          {"lhs_tuples", chk.lhs_tuples},
                          {"rhs_tuples", chk.rhs_tuples},
                          {"ok", chk.ok}});
  json lemma = json::array();
  for (const auto& lc : rep.lemma)
    lemma.push_back(json{{"representative", lc.rep}, {"ok", lc.ok}, {"detail", lc.detail}});
  human << (pass ? "PASS" : "FAIL") << " induction invariance up to k=" << spec.k << "\n";
  return json{{"kmax", spec.k}, {"checks", checks}, {"fixed_set_decomposition", lemma}, {"pass", pass}};
}

json run_divergence(const JobSpec& spec, k0fgr::Registry& reg, std::ostringstream& human) {
  auto z = parse_gset(need(spec.input, "gset"));
  auto rep = power::zeta_lambda_divergence(reg, z);
  human << "diagonal term:  " << k0fgr::fgr_to_string(reg, rep.diagonal_class) << "\n"
        << "product term:   " << k0fgr::fgr_to_string(reg, rep.product_class) << "\n"
        << (rep.differ ? "the classes differ" : "the classes agree") << "\n";
  return json{{"diagonal", fgr_to_json(reg, rep.diagonal_class)},
              {"product", fgr_to_json(reg, rep.product_class)},
              {"differ", rep.differ},
              {"zeta_t2", fgr_to_json(reg, rep.zeta_t2)},
              {"lambda_t2", fgr_to_json(reg, rep.lambda_t2)}};
}

json run_selftest(std::ostringstream& human, bool& pass) {
  auto results = accept::run_acceptance();
  pass = accept::all_pass(results);
  json out = json::array();
  for (const auto& r : results) {
    out.push_back(json{{"id", r.id}, {"label", r.label}, {"pass", r.pass}, {"detail", r.detail}});
    human << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.label;
    char buf[32];
    std::snprintf(buf, sizeof(buf), " (%.2fs)", r.seconds);
    human << buf << "\n";
    if (!r.detail.empty()) human << "       " << r.detail << "\n";
  }
  return json{{"criteria", out}, {"pass", pass}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "chi",           "class",        "zeta-series",        "lambda-series",
      "power",         "generalized",  "verify-tamanoi",     "verify-wreath-bundle",
      "verify-power-axioms", "verify-induction", "divergence", "selftest"};
  return names;
}

RunResult run(const JobSpec& spec) {
  RunResult result;
  std::ostringstream human;
  auto start = std::chrono::steady_clock::now();
  json machine;
  machine["command"] = spec.command;
  machine["input"] = spec.input;
  bool pass = true;
  try {
    if (spec.k < 0 || spec.k > global_config().max_euler_order) bad("k out of range (max 4)");
    if (spec.order < 0 || spec.order > global_config().max_series_order) bad("N out of range (max 8)");
    ConfigOverride ov(spec.max_group_order, spec.iso_bound);
    k0fgr::Registry reg;
    if (spec.command == "chi") {
      machine["result"] = run_chi(spec, human);
    } else if (spec.command == "class") {
      machine["result"] = run_class(spec, reg, human);
    } else if (spec.command == "zeta-series") {
      machine["result"] = run_series(spec, reg, true, human);
    } else if (spec.command == "lambda-series") {
      machine["result"] = run_series(spec, reg, false, human);
    } else if (spec.command == "power") {
      machine["result"] = run_power(spec, reg, human);
    } else if (spec.command == "generalized") {
      machine["result"] = run_generalized(spec, human);
    } else if (spec.command == "verify-tamanoi") {
      machine["result"] = run_verify_tamanoi(spec, reg, human, pass);
    } else if (spec.command == "verify-wreath-bundle") {
      machine["result"] = run_verify_wreath_bundle(spec, human, pass);
    } else if (spec.command == "verify-power-axioms") {
      machine["result"] = run_verify_power_axioms(spec, human, pass);
    } else if (spec.command == "verify-induction") {
      machine["result"] = run_verify_induction(spec, reg, human, pass);
    } else if (spec.command == "divergence") {
      machine["result"] = run_divergence(spec, reg, human);
    } else if (spec.command == "selftest") {
      machine["result"] = run_selftest(human, pass);
    } else {
      bad("unknown command \"" + spec.command + "\"");
    }
  } catch (const std::invalid_argument& e) {
    result.machine = json{{"command", spec.command}, {"error", e.what()}};
    result.human = std::string("input error: ") + e.what() + "\n";
    result.exit_code = 2;
    return result;
  } catch (const std::runtime_error& e) {
    // size bounds and similar refusals
    result.machine = json{{"command", spec.command}, {"error", e.what()},
                          {"hint", "reduce n/N or the group size, or raise --max-group-order"}};
    result.human = std::string("error: ") + e.what() + "\n";
    result.exit_code = 2;
    return result;
  }
  machine["pass"] = pass;
  result.machine = std::move(machine);
  auto stop = std::chrono::steady_clock::now();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "elapsed: %.3fs\n", std::chrono::duration<double>(stop - start).count());
  human << buf;
  result.human = human.str();
  result.exit_code = pass ? 0 : 1;
  return result;
}

}  // namespace orbichar::cli
