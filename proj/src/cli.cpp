#include "tdual/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <future>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tdual/json_io.hpp"

#ifndef TDUAL_DATA_DIR
#define TDUAL_DATA_DIR "data"
#endif

namespace tdual {
namespace {

std::string error_kind(const Error& e) {
  if (dynamic_cast<const IllFormedHom*>(&e)) return "IllFormedHom";
  if (dynamic_cast<const UnknownDescriptor*>(&e)) return "UnknownDescriptor";
  if (dynamic_cast<const BadParameters*>(&e)) return "BadParameters";
  if (dynamic_cast<const DegreeOverflow*>(&e)) return "DegreeOverflow";
  if (dynamic_cast<const DegreeOutOfRange*>(&e)) return "DegreeOutOfRange";
  if (dynamic_cast<const ObstructionNonzero*>(&e)) return "ObstructionNonzero";
  if (dynamic_cast<const BaseMismatch*>(&e)) return "BaseMismatch";
  if (dynamic_cast<const UnsupportedDimension*>(&e)) return "UnsupportedDimension";
  if (dynamic_cast<const UnsupportedTwist*>(&e)) return "UnsupportedTwist";
  if (dynamic_cast<const ZeroTwist*>(&e)) return "ZeroTwist";
  if (dynamic_cast<const NotDualizable*>(&e)) return "NotDualizable";
  return "Error";
}

Int parse_int(const std::string& token) {
  std::string t = token;
  t.erase(std::remove_if(t.begin(), t.end(),
                         [](unsigned char ch) { return std::isspace(ch); }),
          t.end());
  if (t.empty()) throw BadParameters("empty integer in coefficient list");
  try {
    return Int(t);
  } catch (const std::invalid_argument&) {
    throw BadParameters("not an integer: '" + token + "'");
  }
}

std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::string trimmed = text;
  trimmed.erase(
      std::remove_if(trimmed.begin(), trimmed.end(),
                     [](unsigned char ch) { return std::isspace(ch); }),
      trimmed.end());
  if (trimmed.empty()) return out;
  std::stringstream ss(trimmed);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_int(token));
  if (!trimmed.empty() && trimmed.back() == ',')
    throw BadParameters("trailing comma in coefficient list");
  return out;
}

/// Coefficient vector -> class, in the documented generator order.  A bare
/// integer serves single-generator groups; an all-zero vector of any length
/// (including "0" against a trivial group) means the zero class.
GradedClass coeff_class(const SpaceModel& space, long degree,
                        const std::string& text) {
  std::vector<Int> coords = parse_int_list(text);
  const std::size_t want = space.group(degree).gen_count();
  if (coords.size() != want) {
    const bool all_zero =
        std::all_of(coords.begin(), coords.end(),
                    [](const Int& v) { return v == 0; });
    if (all_zero) return zero_class(space, degree);
    throw BadParameters("H^" + std::to_string(degree) + "(" +
                        space.descriptor + ") has " + std::to_string(want) +
                        " generators, got " + std::to_string(coords.size()) +
                        " coefficients");
  }
  return make_class(space, degree, std::move(coords));
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_lines(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      render_lines(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  if (j.is_array()) {
    const bool scalars =
        std::all_of(j.begin(), j.end(),
                    [](const Json& v) { return !v.is_structured(); });
    if (scalars) {
      std::string line;
      for (const auto& v : j) {
        if (!line.empty()) line += ", ";
        line += scalar_text(v);
      }
      out += prefix + ": [" + line + "]\n";
      return;
    }
    std::size_t i = 0;
    for (const auto& v : j)
      render_lines(v, prefix + "[" + std::to_string(i++) + "]", out);
    return;
  }
  out += prefix + ": " + scalar_text(j) + "\n";
}

std::string render(const Json& j, const std::string& format) {
  if (format == "text") {
    std::string out;
    render_lines(j, "", out);
    return out;
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- commands

Json cmd_dualize(const std::string& base_desc, const std::string& c_spec,
                 const std::string& t_spec, const std::string& b_spec) {
  const SpaceModel space = make_space(base_desc);
  const Pair p = make_pair(space, coeff_class(space, 2, c_spec),
                           coeff_class(space, 2, t_spec),
                           coeff_class(space, 3, b_spec));
  Json j;
  j["input"] = to_json(p);
  j["dual"] = to_json(dualize(p));
  return j;
}

Json cmd_cohomology(const std::string& base_desc, const std::string& c_spec) {
  const SpaceModel space = make_space(base_desc);
  const GysinResult result =
      gysin_cohomology(make_bundle(space, coeff_class(space, 2, c_spec)));
  Json j = to_json(result);
  j["resolved"] = result.all_resolved();
  return j;
}

Json cmd_kgroups(const std::string& base_desc, const std::string& c_spec,
                 const std::string& t_spec) {
  const SpaceModel space = make_space(base_desc);
  const GradedClass c = coeff_class(space, 2, c_spec);
  const GradedClass t = coeff_class(space, 2, t_spec);
  if (!class_is_zero(space, cup_total(space, c, t)))
    throw ObstructionNonzero(
        "the twist does not pull back from the total space: c cup t != 0");
  KGroups kg;
  if (class_is_zero(space, t)) {
    kg = k_untwisted(gysin_cohomology(make_bundle(space, c)));
  } else if (space.dimension == 2) {
    kg = k_twisted_3manifold(
        k_untwisted(gysin_cohomology(make_bundle(space, c))), t.coords.at(0));
  } else if (class_is_zero(space, c)) {
    // Trivial bundle with twist t: T-duality transports it to the untwisted
    // circle bundle with Chern class -t, exchanging the parities.
    const KGroups dual =
        k_untwisted(gysin_cohomology(make_bundle(space, scale(space, -1, t))));
    kg.k0 = dual.k1;
    kg.k1 = dual.k0;
    kg.assumptions = dual.assumptions;
    kg.assumptions.push_back("tduality-transport");
  } else {
    throw UnsupportedTwist(
        "twisted K-theory over " + space.descriptor +
        " is only implemented for 3-manifolds and trivial bundles");
  }
  Json j;
  j["base"] = space.descriptor;
  j["chern"] = to_json(c);
  j["twist"] = to_json(t);
  const Json body = to_json(kg);
  for (const auto& [key, value] : body.items()) j[key] = value;
  return j;
}

Json cmd_classify_torus(const std::string& base_desc, const std::string& f_spec,
                        const std::string& g_spec) {
  const SpaceModel space = make_space(base_desc);
  const auto torus_class = [&](const std::string& spec) {
    const auto semi = spec.find(';');
    if (semi == std::string::npos || spec.find(';', semi + 1) != std::string::npos)
      throw BadParameters(
          "a torus bundle takes two coefficient lists separated by ';', got '" +
          spec + "'");
    return make_torus_class(space, coeff_class(space, 2, spec.substr(0, semi)),
                            coeff_class(space, 2, spec.substr(semi + 1)));
  };
  const TorusBundleClass f = torus_class(f_spec);
  const TorusBundleClass g = torus_class(g_spec);
  std::vector<TwistMatrix> witness;
  const OrbitAnswer answer = orbit_equivalent(space, f, g, &witness);
  Json j;
  j["base"] = space.descriptor;
  j["f"] = to_json(f);
  j["g"] = to_json(g);
  j["answer"] = answer == OrbitAnswer::Yes
                    ? "yes"
                    : answer == OrbitAnswer::No ? "no" : "unknown";
  Json w = Json::array();
  for (const TwistMatrix& m : witness) w.push_back(to_json(m));
  j["witness"] = w;
  return j;
}

Json cmd_admissibility(const std::string& theory, const std::string& g_spec) {
  return to_json(t_admissibility(theory == "HR" ? Theory::HR : Theory::K,
                                 parse_int(g_spec)));
}

// ------------------------------------------------------------ verify suites

std::string data_path(const std::string& name) {
  const char* env = std::getenv("TDUAL_DATA_DIR");
  const std::string dir = (env && *env) ? env : TDUAL_DATA_DIR;
  return dir + "/" + name;
}

Json load_table(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw BadParameters("missing data table: " + data_path(name));
  return Json::parse(in);
}

struct SuiteOutcome {
  std::string suite;
  std::string expected;
  std::string computed;
  bool pass = true;
  long checked = 0;
  std::vector<std::string> failures;
};

void check(SuiteOutcome& s, bool ok, const std::string& what) {
  ++s.checked;
  if (ok) return;
  s.pass = false;
  if (s.failures.size() < 12) s.failures.push_back(what);
}

/// "g=0,k=-3" -> {"g": 0, "k": -3}
std::map<std::string, Int> parse_row_key(const std::string& key) {
  std::map<std::string, Int> out;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw BadParameters("bad table row key: " + key);
    out[item.substr(0, eq)] = parse_int(item.substr(eq + 1));
  }
  return out;
}

std::string summarize(const SuiteOutcome& s) {
  if (s.pass) return "all " + std::to_string(s.checked) + " checks match";
  return std::to_string(s.failures.size()) +
         (s.failures.size() == 12 ? "+" : "") + " mismatches out of " +
         std::to_string(s.checked) + " checks";
}

GysinResult surface_bundle(long g, const Int& k) {
  const SpaceModel base = make_space("surface:g=" + std::to_string(g));
  return gysin_cohomology(
      make_bundle(base, scale(base, k, gen_class(base, 2, 0))));
}

SuiteOutcome suite_4_1() {
  SuiteOutcome s;
  s.suite = "4.1";
  s.expected =
      "table_4_1_cohomology.json + table_4_1_k.json + "
      "table_4_1_k_twisted.json + the T-duality grid g in {0,1,2}, "
      "k,n in {-3..3}";
  const Json coh_table = load_table("table_4_1_cohomology.json");
  for (const auto& [key, want] : coh_table.items()) {
    const auto row = parse_row_key(key);
    const GysinResult gy = surface_bundle(row.at("g").get_si(), row.at("k"));
    for (long n = 0; n <= 3; ++n)
      check(s, gy.at(n).assembled.to_string() == want.at(n).get<std::string>(),
            key + " H^" + std::to_string(n) + ": expected " +
                want.at(n).get<std::string>() + ", got " +
                gy.at(n).assembled.to_string());
  }
  const Json k_table = load_table("table_4_1_k.json");
  for (const auto& [key, want] : k_table.items()) {
    const auto row = parse_row_key(key);
    const KGroups kg =
        k_untwisted(surface_bundle(row.at("g").get_si(), row.at("k")));
    check(s, kg.k0.to_string() == want.at(0).get<std::string>(),
          key + " K^0: expected " + want.at(0).get<std::string>() + ", got " +
              kg.k0.to_string());
    check(s, kg.k1.to_string() == want.at(1).get<std::string>(),
          key + " K^1: expected " + want.at(1).get<std::string>() + ", got " +
              kg.k1.to_string());
  }
  const Json twisted_table = load_table("table_4_1_k_twisted.json");
  for (const auto& [key, want] : twisted_table.items()) {
    const auto row = parse_row_key(key);
    const KGroups kg = k_twisted_3manifold(
        k_untwisted(surface_bundle(row.at("g").get_si(), row.at("k"))),
        row.at("n"));
    check(s, kg.k0.to_string() == want.at(0).get<std::string>(),
          key + " K^0: expected " + want.at(0).get<std::string>() + ", got " +
              kg.k0.to_string());
    check(s, kg.k1.to_string() == want.at(1).get<std::string>(),
          key + " K^1: expected " + want.at(1).get<std::string>() + ", got " +
              kg.k1.to_string());
  }
  for (long g = 0; g <= 2; ++g)
    for (long k = -3; k <= 3; ++k)
      for (long n = -3; n <= 3; ++n)
        check(s, verify_tduality_k(g, k, n),
              "tduality grid failed at g=" + std::to_string(g) +
                  ",k=" + std::to_string(k) + ",n=" + std::to_string(n));
  s.computed = summarize(s);
  return s;
}

SuiteOutcome suite_4_2() {
  SuiteOutcome s;
  s.suite = "4.2";
  s.expected =
      "table_4_2_cohomology.json + table_4_2_k.json + "
      "table_4_2_k_twisted.json";
  const Json coh_table = load_table("table_4_2_cohomology.json");
  for (const auto& [key, want] : coh_table.items()) {
    const auto row = parse_row_key(key);
    const long r = row.at("r").get_si();
    const SpaceModel base = make_space("cp:r=" + std::to_string(r));
    const GysinResult gy = gysin_cohomology(make_bundle(
        base, scale(base, row.at("n"), gen_class(base, 2, 0))));
    for (long n = 0; n <= 2 * r + 1; ++n)
      check(s, gy.at(n).assembled.to_string() == want.at(n).get<std::string>(),
            key + " H^" + std::to_string(n) + ": expected " +
                want.at(n).get<std::string>() + ", got " +
                gy.at(n).assembled.to_string());
  }
  const Json k_table = load_table("table_4_2_k.json");
  for (const auto& [key, want] : k_table.items()) {
    const auto row = parse_row_key(key);
    const KGroups kg = k_cpr(row.at("n"), 0, row.at("r").get_si());
    check(s, kg.k0.to_string() == want.at(0).get<std::string>(),
          key + " K^0: expected " + want.at(0).get<std::string>() + ", got " +
              kg.k0.to_string());
    check(s, kg.k1.to_string() == want.at(1).get<std::string>(),
          key + " K^1: expected " + want.at(1).get<std::string>() + ", got " +
              kg.k1.to_string());
  }
  const Json twisted_table = load_table("table_4_2_k_twisted.json");
  for (const auto& [key, want] : twisted_table.items()) {
    const auto row = parse_row_key(key);
    const KGroups kg = k_cpr(0, row.at("k"), row.at("r").get_si());
    check(s, kg.k0.to_string() == want.at(0).get<std::string>(),
          key + " K^0: expected " + want.at(0).get<std::string>() + ", got " +
              kg.k0.to_string());
    check(s, kg.k1.to_string() == want.at(1).get<std::string>(),
          key + " K^1: expected " + want.at(1).get<std::string>() + ", got " +
              kg.k1.to_string());
  }
  s.computed = summarize(s);
  return s;
}

SuiteOutcome suite_4_3() {
  SuiteOutcome s;
  s.suite = "4.3";
  s.expected = "table_4_3_k.json (lens-space torsion counterexamples)";
  const Json table = load_table("table_4_3_k.json");
  for (const auto& [key, want] : table.items()) {
    const auto row = parse_row_key(key);
    const TorsionExample ex = torsion_example(row.at("k"), row.at("r").get_si());
    const auto expect_pair = [&](const char* field, const KGroups& got) {
      const Json& w = want.at(field);
      check(s, got.k0.to_string() == w.at(0).get<std::string>(),
            key + " " + field + ".k0: expected " + w.at(0).get<std::string>() +
                ", got " + got.k0.to_string());
      check(s, got.k1.to_string() == w.at(1).get<std::string>(),
            key + " " + field + ".k1: expected " + w.at(1).get<std::string>() +
                ", got " + got.k1.to_string());
    };
    expect_pair("k_fc", ex.k_fc);
    expect_pair("k_f0", ex.k_f0);
    check(s, ex.distinct == want.at("distinct").get<bool>(),
          key + " distinct: expected " +
              std::string(want.at("distinct").get<bool>() ? "true" : "false") +
              ", got " + (ex.distinct ? "true" : "false"));
    // The twisted groups are the transported K(F_c) with parities swapped.
    check(s, ex.k_f0_twisted.k0 == ex.k_fc.k1 && ex.k_f0_twisted.k1 == ex.k_fc.k0,
          key + " twisted groups are not the transported K(F_c)");
  }
  s.computed = summarize(s);
  return s;
}

SuiteOutcome suite_4_4() {
  SuiteOutcome s;
  s.suite = "4.4";
  s.expected = "table_4_4_orbits.json (splitting non-uniqueness over s2)";
  const Json want = load_table("table_4_4_orbits.json");
  const SpaceModel s2 = make_space("s2");
  const GradedClass z = gen_class(s2, 2, 0);
  const auto splits = zero_splittings(s2, z, z);
  check(s, splits.size() == want.at("splitting_generators").get<std::size_t>(),
        "splitting generators: expected " +
            want.at("splitting_generators").dump() + ", got " +
            std::to_string(splits.size()));
  const GysinResult model = gysin_cohomology(make_bundle(s2, z));
  const Splitting trivial{
      GradedClass{3, std::vector<Int>(model.group(3).gen_count(), 0)},
      GradedClass{3, std::vector<Int>(model.group(3).gen_count(), 0)}};
  const auto chern_gcd = [](const IteratedDual& d) {
    Int g = 0;
    for (const Int& v : d.c_hat0.coords) g = gcd(g, v);
    for (const Int& v : d.c_hat1.coords) g = gcd(g, v);
    return g;
  };
  const IteratedDual d0 = iterated_dual(s2, z, z, trivial);
  const IteratedDual d1 = iterated_dual(s2, z, z, splits.at(0));
  check(s, chern_gcd(d0) == parse_int(want.at("trivial_dual_gcd").dump()),
        "trivial-splitting dual gcd: expected " +
            want.at("trivial_dual_gcd").dump() + ", got " +
            chern_gcd(d0).get_str());
  check(s, chern_gcd(d1) == parse_int(want.at("alt_dual_gcd").dump()),
        "alternative-splitting dual gcd: expected " +
            want.at("alt_dual_gcd").dump() + ", got " + chern_gcd(d1).get_str());
  const OrbitAnswer answer =
      orbit_equivalent(s2, make_torus_class(s2, d0.c_hat0, d0.c_hat1),
                       make_torus_class(s2, d1.c_hat0, d1.c_hat1));
  const std::string got = answer == OrbitAnswer::Yes
                              ? "yes"
                              : answer == OrbitAnswer::No ? "no" : "unknown";
  check(s, got == want.at("same_orbit").get<std::string>(),
        "orbit answer: expected " + want.at("same_orbit").get<std::string>() +
            ", got " + got);
  s.computed = summarize(s);
  return s;
}

SuiteOutcome suite_admissibility() {
  SuiteOutcome s;
  s.suite = "admissibility";
  s.expected = "table_3_2_admissibility.json (iso range of the T-duality map)";
  const Json table = load_table("table_3_2_admissibility.json");
  for (const auto& [key, want] : table.items()) {
    const auto comma = key.find(',');
    const std::string theory = key.substr(0, comma);
    const auto row = parse_row_key(key.substr(comma + 1));
    const AdmissibilityReport rep = t_admissibility(
        theory == "HR" ? Theory::HR : Theory::K, row.at("g"));
    check(s, rep.is_iso == want.get<bool>(),
          key + ": expected is_iso=" +
              std::string(want.get<bool>() ? "true" : "false") + ", got " +
              (rep.is_iso ? "true" : "false"));
  }
  s.computed = summarize(s);
  return s;
}

SuiteOutcome suite_involution(unsigned long seed) {
  SuiteOutcome s;
  s.suite = "involution";
  s.expected =
      "T^2 = id, obstruction closure, and H^3-equivariance on 1000 "
      "seeded random pairs across the catalog";
  static const char* kBases[] = {
      "pt",          "s1",           "s2",           "s3",
      "surface:g=0", "surface:g=1",  "surface:g=2",  "surface:g=3",
      "torus:n=1",   "torus:n=2",    "torus:n=3",    "cp:r=1",
      "cp:r=2",      "cp:r=3",       "lens:k=2,r=1", "lens:k=3,r=2",
      "lens:k=4,r=1", "lens:k=5,r=2"};
  std::vector<SpaceModel> models;
  for (const char* d : kBases) models.push_back(make_space(d));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-5, 5);
  const auto random_class = [&](const SpaceModel& m, long degree) {
    std::vector<Int> v(m.group(degree).gen_count());
    for (Int& x : v) x = coeff(rng);
    return make_class(m, degree, std::move(v));
  };
  for (long iter = 0; iter < 1000; ++iter) {
    const SpaceModel& m = models[iter % models.size()];
    const GradedClass c = random_class(m, 2);
    GradedClass t = zero_class(m, 2);
    for (int tries = 0; tries < 40; ++tries) {
      GradedClass cand = random_class(m, 2);
      if (class_is_zero(m, cup_total(m, c, cand))) {
        t = std::move(cand);
        break;
      }
    }
    const Pair p = make_pair(m, c, t, random_class(m, 3));
    const Pair d = dualize(p);
    const Pair dd = dualize(d);
    check(s,
          classes_equal(m, dd.c, p.c) && classes_equal(m, dd.t, p.t) &&
              classes_equal(m, dd.b, p.b),
          m.descriptor + " iter " + std::to_string(iter) + ": T^2 != id");
    check(s, class_is_zero(m, cup_total(m, d.c, d.t)),
          m.descriptor + " iter " + std::to_string(iter) +
              ": dual obstruction c cup t != 0");
    const GradedClass beta = random_class(m, 3);
    const Pair lhs = dualize(act_h3(p, beta));
    const Pair rhs = act_h3(d, beta);
    check(s,
          classes_equal(m, lhs.c, rhs.c) && classes_equal(m, lhs.t, rhs.t) &&
              classes_equal(m, lhs.b, rhs.b),
          m.descriptor + " iter " + std::to_string(iter) +
              ": dualize does not commute with the H^3 action");
  }
  s.computed = summarize(s);
  return s;
}

unsigned long parse_seed() {
  const char* env = std::getenv("TDUAL_SEED");
  if (!env || !*env) return 12345;
  char* end = nullptr;
  errno = 0;
  const unsigned long seed = std::strtoul(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0')
    throw BadParameters("TDUAL_SEED must be a nonnegative integer, got '" +
                        std::string(env) + "'");
  return seed;
}

SuiteOutcome run_suite(const std::string& id, unsigned long seed) {
  if (id == "4.1") return suite_4_1();
  if (id == "4.2") return suite_4_2();
  if (id == "4.3") return suite_4_3();
  if (id == "4.4") return suite_4_4();
  if (id == "admissibility") return suite_admissibility();
  return suite_involution(seed);
}

std::pair<Json, int> cmd_verify(std::vector<std::string> suites) {
  static const std::vector<std::string> kAll = {
      "4.1", "4.2", "4.3", "4.4", "admissibility", "involution"};
  if (suites.empty()) suites = kAll;
  for (const std::string& id : suites)
    if (std::find(kAll.begin(), kAll.end(), id) == kAll.end())
      throw BadParameters(
          "unknown suite '" + id +
          "' (expected 4.1, 4.2, 4.3, 4.4, admissibility, involution)");
  std::vector<std::string> run_list;
  for (const std::string& id : kAll)
    if (std::find(suites.begin(), suites.end(), id) != suites.end())
      run_list.push_back(id);
  const unsigned long seed = parse_seed();
  // Suites are independent; run them concurrently, join in canonical order.
  std::vector<std::future<SuiteOutcome>> futures;
  futures.reserve(run_list.size());
  for (const std::string& id : run_list)
    futures.push_back(std::async(std::launch::async,
                                 [id, seed] { return run_suite(id, seed); }));
  Json report = Json::array();
  bool all_pass = true;
  for (auto& f : futures) {
    const SuiteOutcome o = f.get();
    all_pass = all_pass && o.pass;
    Json entry;
    entry["suite"] = o.suite;
    entry["expected"] = o.expected;
    entry["computed"] = o.computed;
    entry["pass"] = o.pass;
    entry["checked"] = o.checked;
    entry["failures"] = o.failures;
    report.push_back(entry);
  }
  Json j;
  j["report"] = report;
  j["pass"] = all_pass;
  return {j, all_pass ? 0 : 1};
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  RunResult result;
  std::string format = "json";

  CLI::App app{"Exact T-duality toolkit for circle and torus bundles"};
  app.name("tdual");
  app.require_subcommand(1);
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  std::string base, c_spec, t_spec, b_spec = "0", theory = "K", g_spec;
  std::vector<std::string> suites;

  CLI::App* dualize_cmd = app.add_subcommand(
      "dualize", "T-dual of a pair (base, c, t, b) in normal form");
  dualize_cmd->add_option("--base", base, "Base space descriptor")->required();
  dualize_cmd->add_option("--c,--chern", c_spec, "Chern class coefficients")
      ->required();
  dualize_cmd->add_option("--t,--twist", t_spec, "Fiberwise flux coefficients")
      ->required();
  dualize_cmd->add_option("--b", b_spec, "Residual base flux coefficients");
  add_format(dualize_cmd);

  CLI::App* kgroups_cmd = app.add_subcommand(
      "kgroups", "Twisted K-theory of the circle bundle with Chern class c");
  kgroups_cmd->add_option("--base", base, "Base space descriptor")->required();
  kgroups_cmd->add_option("--c,--chern", c_spec, "Chern class coefficients")
      ->required();
  kgroups_cmd->add_option("--t,--twist", t_spec, "Twist coefficients");
  add_format(kgroups_cmd);

  CLI::App* cohomology_cmd = app.add_subcommand(
      "cohomology", "Integral cohomology of the circle bundle via Gysin");
  cohomology_cmd->add_option("--base", base, "Base space descriptor")
      ->required();
  cohomology_cmd->add_option("--c,--chern", c_spec, "Chern class coefficients")
      ->required();
  add_format(cohomology_cmd);

  CLI::App* classify_cmd = app.add_subcommand(
      "classify-torus",
      "GL(2,Z)-orbit comparison of two torus-bundle Chern pairs");
  classify_cmd->add_option("--base", base, "Base space descriptor")->required();
  classify_cmd
      ->add_option("--c,--chern", c_spec,
                   "First Chern pair, two lists separated by ';'")
      ->required();
  classify_cmd
      ->add_option("--t,--twist", t_spec,
                   "Second Chern pair, two lists separated by ';'")
      ->required();
  add_format(classify_cmd);

  CLI::App* adm_cmd = app.add_subcommand(
      "admissibility", "Symbolic T-duality transform on the basic pair");
  adm_cmd->add_option("--theory", theory, "Cohomology theory")
      ->check(CLI::IsMember({"K", "HR"}))
      ->capture_default_str();
  adm_cmd->add_option("--g", g_spec, "Coupling integer")->required();
  add_format(adm_cmd);

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Re-derive the embedded expected tables and property grids");
  verify_cmd
      ->add_option("--suite", suites,
                   "Suites to run (default: all of 4.1 4.2 4.3 4.4 "
                   "admissibility involution)")
      ->delimiter(',');
  add_format(verify_cmd);

  try {
    // CLI11's vector-parse consumes from the back: pass the args reversed.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    Json out;
    if (dualize_cmd->parsed()) {
      out = cmd_dualize(base, c_spec, t_spec, b_spec);
    } else if (kgroups_cmd->parsed()) {
      out = cmd_kgroups(base, c_spec, t_spec);
    } else if (cohomology_cmd->parsed()) {
      out = cmd_cohomology(base, c_spec);
    } else if (classify_cmd->parsed()) {
      out = cmd_classify_torus(base, c_spec, t_spec);
    } else if (adm_cmd->parsed()) {
      out = cmd_admissibility(theory, g_spec);
    } else {
      auto [report, code] = cmd_verify(suites);
      out = std::move(report);
      result.code = code;
    }
    result.out = render(out, format);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    result.code = 0;
  } catch (const CLI::ParseError& e) {
    result.err = std::string(e.what()) + "\n";
    result.code = 2;
  } catch (const Error& e) {
    result.err = error_kind(e) + ": " + e.what() + "\n";
    result.code = 2;
  } catch (const std::exception& e) {
    result.err = std::string("internal error: ") + e.what() + "\n";
    result.code = 2;
  }
  return result;
}

}  // namespace tdual
