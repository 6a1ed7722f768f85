#include "tdual/twistk.hpp"

#include <algorithm>

#include "tdual/errors.hpp"
#include "tdual/pair.hpp"

namespace tdual {

namespace {

void add_flag(std::vector<std::string>& flags, const std::string& f) {
  if (std::find(flags.begin(), flags.end(), f) == flags.end()) {
    flags.push_back(f);
  }
}

/// Every AHSS differential d_r (odd r >= 3) must be provably zero: the unit
/// column survives, a trivial source or target kills the map, and a
/// torsion-free target does too because rational degeneration confines
/// differential images to torsion.
void certify_ahss(const std::vector<AbGroup>& h) {
  const long dim = static_cast<long>(h.size()) - 1;
  for (long r = 3; r <= dim; r += 2) {
    for (long p = 1; p + r <= dim; ++p) {
      const AbGroup& src = h[p];
      const AbGroup& tgt = h[p + r];
      if (src.is_trivial() || tgt.is_trivial() || tgt.is_free()) continue;
      throw UnsupportedDimension(
          "AHSS differential d_" + std::to_string(r) + " out of degree " +
          std::to_string(p) + " is not provably zero");
    }
  }
}

struct FoldOutcome {
  ExtensionResult result;
  bool used_split = false;
  bool used_completion = false;
};

/// Fold the nonzero graded pieces of one parity from the deepest filtration
/// layer (highest degree) outward.  A homogeneous cyclic tower at the deep
/// end is collapsed by the tower policy first; the remaining layers are
/// stacked stepwise, with free quotient layers splitting off even past an
/// Ambiguous state (candidate-wise).
FoldOutcome fold_parity(const std::vector<AbGroup>& h, int parity) {
  std::vector<AbGroup> layers;
  for (std::size_t n = parity; n < h.size(); n += 2) {
    if (!h[n].is_trivial()) layers.push_back(h[n]);
  }
  std::reverse(layers.begin(), layers.end());

  FoldOutcome out;
  ExtensionResult x = ExtensionResult::resolved(AbGroup::trivial());
  std::size_t start = 0;

  if (layers.size() >= 2 && layers[0].rank() == 0 &&
      layers[0].torsion().size() == 1 && layers[1] == layers[0]) {
    const Int m = layers[0].torsion()[0];
    std::size_t cnt = 2;
    while (cnt < layers.size() && layers[cnt] == layers[0]) ++cnt;
    if (m == 2) {
      // completion-theorem tower: cnt stacked Z/2 layers give Z/2^cnt
      Int order = 1;
      mpz_mul_2exp(order.get_mpz_t(), order.get_mpz_t(), cnt);
      x = ExtensionResult::resolved(AbGroup::cyclic(order));
      out.used_completion = true;
    } else {
      Int order = 1;
      for (std::size_t i = 0; i < cnt; ++i) order *= m;
      x = ExtensionResult::ambiguous(
          order, AbGroup::cyclic(m),
          chain_extension_candidates(m, static_cast<long>(cnt)));
    }
    start = cnt;
  }

  for (std::size_t i = start; i < layers.size(); ++i) {
    const AbGroup& q = layers[i];
    if (x.is_resolved()) {
      const bool split_step = !x.group.is_trivial() && q.is_free();
      x = resolve_extension(x.group, q);
      if (split_step && x.is_resolved()) out.used_split = true;
    } else if (q.is_free()) {
      std::vector<AbGroup> cands;
      for (const AbGroup& c : x.candidates) {
        cands.push_back(direct_sum(c, AbGroup::free(q.rank())));
      }
      x = ExtensionResult::ambiguous(x.torsion_order, x.composition_factor,
                                     cands);
      out.used_split = true;
    } else {
      throw UnsupportedDimension(
          "K-theory extension tower outside the supported shapes");
    }
  }
  out.result = x;
  return out;
}

KGroups fold_space(const std::vector<AbGroup>& h) {
  certify_ahss(h);
  KGroups out;
  const FoldOutcome even = fold_parity(h, 0);
  const FoldOutcome odd = fold_parity(h, 1);
  out.k0 = even.result;
  out.k1 = odd.result;
  add_flag(out.assumptions, "AHSS-degenerate");
  if (even.used_split || odd.used_split) {
    add_flag(out.assumptions, "extension-split");
  }
  if (even.used_completion || odd.used_completion) {
    add_flag(out.assumptions, "completion-theorem");
  }
  return out;
}

/// Direct sum of extension outcomes; at most one side may be Ambiguous.
ExtensionResult ext_sum(const ExtensionResult& a, const ExtensionResult& b) {
  if (a.is_resolved() && b.is_resolved()) {
    return ExtensionResult::resolved(direct_sum(a.group, b.group));
  }
  if (a.is_resolved()) return ext_sum(b, a);
  if (!b.is_resolved()) {
    throw UnsupportedDimension("sum of two ambiguous K-theory outcomes");
  }
  std::vector<AbGroup> cands;
  for (const AbGroup& c : a.candidates) cands.push_back(direct_sum(c, b.group));
  return ExtensionResult::ambiguous(a.torsion_order * b.group.torsion_order(),
                                    a.composition_factor, cands);
}

const AbGroup& resolved_group(const ExtensionResult& e, const char* what) {
  if (!e.is_resolved()) {
    throw UnsupportedDimension(std::string(what) +
                               " needs a resolved K-group, got " +
                               e.to_string());
  }
  return e.group;
}

bool kext_equivalent(const ExtensionResult& a, const ExtensionResult& b) {
  if (a.is_resolved() && b.is_resolved()) {
    return is_isomorphic(a.group, b.group);
  }
  const Int ta = a.is_resolved() ? a.group.torsion_order() : a.torsion_order;
  const Int tb = b.is_resolved() ? b.group.torsion_order() : b.torsion_order;
  return a.common_rank() == b.common_rank() && ta == tb;
}

}  // namespace

KGroups k_untwisted(const SpaceModel& space) {
  std::vector<AbGroup> h;
  for (long n = 0; n <= space.dimension; ++n) h.push_back(space.group(n));
  return fold_space(h);
}

KGroups k_untwisted(const GysinResult& total_space) {
  if (!total_space.all_resolved()) {
    throw BadParameters(
        "unresolved cohomology degree in the K-theory input");
  }
  if (class_is_zero(total_space.base, total_space.c)) {
    // trivial bundle: K^i(B x S^1) = K^i(B) + K^{i-1}(B)
    const KGroups kb = k_untwisted(total_space.base);
    KGroups out;
    out.k0 = ext_sum(kb.k0, kb.k1);
    out.k1 = out.k0;
    out.assumptions = kb.assumptions;
    add_flag(out.assumptions, "kunneth-split");
    return out;
  }
  std::vector<AbGroup> h;
  for (long n = 0; n <= total_space.total_dimension; ++n) {
    h.push_back(total_space.group(n));
  }
  return fold_space(h);
}

KGroups k_twisted_3manifold(const KGroups& k_of_e, const Int& n) {
  if (n == 0) return k_of_e;
  const AbGroup& k0 = resolved_group(k_of_e.k0, "k_twisted_3manifold");
  const AbGroup& k1 = resolved_group(k_of_e.k1, "k_twisted_3manifold");
  if (k0.rank() < 1 || !k1.is_free() || k1.rank() < 1) {
    throw BadParameters(
        "input is not the K-theory of a closed oriented 3-manifold");
  }
  KGroups out;
  out.k0 = ExtensionResult::resolved(AbGroup::of(k0.rank() - 1, k0.torsion()));
  out.k1 = ExtensionResult::resolved(AbGroup::of(k1.rank() - 1, {abs(n)}));
  out.assumptions = k_of_e.assumptions;
  add_flag(out.assumptions, "mayer-vietoris");
  return out;
}

KGroups k_cpr(const Int& n, const Int& k, long r) {
  if (r < 1) throw BadParameters("k_cpr needs r >= 1");
  const SpaceModel base = make_space("cp:r=" + std::to_string(r));
  const auto bundle_k = [&](const Int& chern) {
    const GradedClass c = scale(base, chern, gen_class(base, 2, 0));
    return k_untwisted(gysin_cohomology(make_bundle(base, c)));
  };
  if (k == 0) return bundle_k(n);
  if (n == 0) {
    // K^i(E_0, k) = K^{i+1}(E_{-k}) across the T-duality (E_0,k) ~ (E_{-k},0)
    const KGroups untwisted = bundle_k(-k);
    KGroups out;
    out.k0 = untwisted.k1;
    out.k1 = untwisted.k0;
    out.assumptions = untwisted.assumptions;
    add_flag(out.assumptions, "tduality-transport");
    return out;
  }
  if (r == 1) return k_twisted_3manifold(bundle_k(n), k);
  throw UnsupportedTwist(
      "for r > 1 only the trivial bundle admits nontrivial twists");
}

bool verify_tduality_k(long g, const Int& k, const Int& n) {
  const SpaceModel base = make_space("surface:g=" + std::to_string(g));
  const auto kgroups_of = [&](const Int& chern, const Int& twist) {
    const GradedClass c = scale(base, chern, gen_class(base, 2, 0));
    const KGroups untwisted =
        k_untwisted(gysin_cohomology(make_bundle(base, c)));
    return k_twisted_3manifold(untwisted, twist);
  };
  const KGroups lhs = kgroups_of(k, n);
  const Pair dual = dualize(make_pair(base,
                                      scale(base, k, gen_class(base, 2, 0)),
                                      scale(base, n, gen_class(base, 2, 0)),
                                      zero_class(base, 3)));
  const KGroups rhs = kgroups_of(dual.c.coords[0], dual.t.coords[0]);
  return is_isomorphic(resolved_group(lhs.k0, "verify_tduality_k"),
                       resolved_group(rhs.k1, "verify_tduality_k")) &&
         is_isomorphic(resolved_group(lhs.k1, "verify_tduality_k"),
                       resolved_group(rhs.k0, "verify_tduality_k"));
}

std::string SymbolicEntry::to_string(const std::string& basis_symbol) const {
  if (coeff == 0) return "0";
  std::string sym;
  if (tag == "B") {
    sym = "B(" + basis_symbol + ")";
  } else if (!tag.empty()) {
    sym = tag + "*" + basis_symbol;
  } else if (basis_symbol != "1") {
    sym = basis_symbol;
  }
  if (sym.empty()) return coeff.get_str();
  if (coeff == 1) return sym;
  if (coeff == -1) return "-" + sym;
  return coeff.get_str() + "*" + sym;
}

namespace {

std::string row_image(const SymbolicEntry& on_one, const SymbolicEntry& on_u) {
  std::vector<std::string> parts;
  if (on_one.coeff != 0) parts.push_back(on_one.to_string("1"));
  if (on_u.coeff != 0) parts.push_back(on_u.to_string("u"));
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

}  // namespace

std::string AdmissibilityReport::image_of_one() const {
  return row_image(matrix[0][0], matrix[0][1]);
}

std::string AdmissibilityReport::image_of_u() const {
  return row_image(matrix[1][0], matrix[1][1]);
}

AdmissibilityReport t_admissibility(Theory theory, const Int& g) {
  AdmissibilityReport rep;
  rep.theory = theory;
  rep.g = g;
  rep.matrix[0][0] = SymbolicEntry{0, ""};
  rep.matrix[0][1] = SymbolicEntry{g, theory == Theory::K ? "B" : "z"};
  rep.matrix[1][0] = SymbolicEntry{1, ""};
  rep.matrix[1][1] = SymbolicEntry{0, ""};
  // The tags are units (Bott class, invertible z), so invertibility is a
  // determinant test on the coefficients: over Z a unit, over R[z,1/z] any
  // nonzero value.
  const Int d = rep.matrix[0][0].coeff * rep.matrix[1][1].coeff -
                rep.matrix[0][1].coeff * rep.matrix[1][0].coeff;
  rep.is_iso = theory == Theory::K ? (d == 1 || d == -1) : (d != 0);
  return rep;
}

TorsionExample torsion_example(const Int& k, long r) {
  if (r <= 1) throw BadParameters("torsion_example needs r > 1");
  if (k < 2 || mpz_probab_prime_p(k.get_mpz_t(), 32) == 0) {
    throw BadParameters("torsion_example needs a prime k");
  }
  const SpaceModel base = lens_like_model(k, r);
  TorsionExample ex;
  ex.k_fc = k_untwisted(
      gysin_cohomology(make_bundle(base, gen_class(base, 2, 0))));
  ex.k_f0 =
      k_untwisted(gysin_cohomology(make_bundle(base, zero_class(base, 2))));
  // K^i(F_0, h_hat) = K^{i+1}(F_c): the twisted side is the dual, shifted.
  ex.k_f0_twisted.k0 = ex.k_fc.k1;
  ex.k_f0_twisted.k1 = ex.k_fc.k0;
  ex.k_f0_twisted.assumptions = ex.k_fc.assumptions;
  add_flag(ex.k_f0_twisted.assumptions, "tduality-transport");
  ex.distinct = !(kext_equivalent(ex.k_f0.k0, ex.k_f0_twisted.k0) &&
                  kext_equivalent(ex.k_f0.k1, ex.k_f0_twisted.k1));
  return ex;
}

}  // namespace tdual
