#include "tdual/gysin.hpp"

#include <algorithm>

namespace tdual {
namespace {

// cup c : H^m(B) -> H^{m+2}(B) as a generator-coordinate matrix.
Matrix cup_matrix(const SpaceModel& base, const GradedClass& c, long m) {
  const AbGroup& dom = base.group(m);
  const AbGroup& cod = base.group(m + 2);
  Matrix f(cod.gen_count(), dom.gen_count());
  for (std::size_t j = 0; j < dom.gen_count(); ++j)
    f.set_column(j, cup_total(base, c, gen_class(base, m, j)).coords);
  return f;
}

// coker(cup c: H^{n-2} -> H^n) as a quotient of the presentation lattice of
// H^n(B), so that coords() converts base classes to cokernel coordinates.
LatticeQuotient coker_quotient(const SpaceModel& base, const GradedClass& c,
                               long n) {
  Matrix f = cup_matrix(base, c, n - 2);
  Matrix rel = base.group(n).relations();
  return lattice_quotient(Matrix::identity(base.group(n).gen_count()),
                          f.augmented(rel));
}

// ker(cup c: H^{n-1} -> H^{n+1}) as a subgroup of H^{n-1}(B).
LatticeQuotient kernel_quotient(const SpaceModel& base, const GradedClass& c,
                                long n) {
  long m = n - 1;
  Matrix f = cup_matrix(base, c, m);
  Matrix rel_cod = base.group(m + 2).relations();
  for (std::size_t i = 0; i < rel_cod.rows(); ++i)
    for (std::size_t j = 0; j < rel_cod.cols(); ++j)
      rel_cod.at(i, j) = -rel_cod.at(i, j);
  Matrix ker = kernel_lattice(f.augmented(rel_cod));
  std::size_t gm = base.group(m).gen_count();
  Matrix proj(gm, ker.cols());
  for (std::size_t i = 0; i < gm; ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) proj.at(i, j) = ker.at(i, j);
  return lattice_quotient(proj, base.group(m).relations());
}

std::vector<Int> embed_coords(const std::vector<Int>& cc, long rc, long rk,
                              std::size_t tc) {
  // Coordinates of a cokernel element inside C (+) K with K free:
  // C-free rows, then rk zero rows for K, then C-torsion rows.
  std::vector<Int> out(rc + rk + tc, Int(0));
  for (long i = 0; i < rc; ++i) out[i] = cc[i];
  for (std::size_t i = 0; i < tc; ++i) out[rc + rk + i] = cc[rc + i];
  return out;
}

void check_degree(const SpaceModel& base, GysinDegree& d, long n) {
  if (!d.assembled.is_resolved()) return;
  if (!is_well_defined(d.pullback) || !is_well_defined(d.pushforward))
    throw std::logic_error("gysin maps ill-defined in degree " +
                           std::to_string(n));
  // Exactness: pushforward after pullback vanishes.
  Matrix comp = d.pushforward.map * d.pullback.map;
  std::vector<Int> orders = base.group(n - 1).gen_orders();
  for (std::size_t i = 0; i < comp.rows(); ++i)
    for (std::size_t j = 0; j < comp.cols(); ++j) {
      Int v = comp.at(i, j);
      if (orders[i] != 0) v %= orders[i];
      if (v != 0)
        throw std::logic_error("gysin sequence not exact in degree " +
                               std::to_string(n));
    }
}

}  // namespace

CircleBundle make_bundle(const SpaceModel& base, const GradedClass& c) {
  if (c.degree != 2) throw BadParameters("Chern class must have degree 2");
  return CircleBundle{base, make_class(base, 2, c.coords)};
}

const GysinDegree& GysinResult::at(long n) const {
  if (n < 0 || n > total_dimension)
    throw DegreeOutOfRange("degree " + std::to_string(n) +
                           " outside 0.." + std::to_string(total_dimension));
  return degrees[n];
}

bool GysinResult::all_resolved() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const GysinDegree& d) {
    return d.assembled.is_resolved();
  });
}

AbGroup GysinResult::group(long n) const {
  if (n < 0 || n > total_dimension) return AbGroup::trivial();
  if (!degrees[n].assembled.is_resolved())
    throw std::logic_error("H^" + std::to_string(n) +
                           "(E) is not resolved to a single group");
  return degrees[n].assembled.group;
}

GysinResult gysin_cohomology(const CircleBundle& bundle) {
  const SpaceModel& base = bundle.base;
  GradedClass c = make_class(base, 2, bundle.c.coords);
  const bool c_zero = class_is_zero(base, c);

  GysinResult result;
  result.base = base;
  result.c = c;
  result.total_dimension = base.dimension + 1;
  const long top = result.total_dimension;

  std::vector<LatticeQuotient> cokers(top + 1), kernels(top + 1);
  for (long n = 0; n <= top; ++n) {
    cokers[n] = coker_quotient(base, c, n);
    kernels[n] = kernel_quotient(base, c, n);
  }

  result.degrees.resize(top + 1);
  // First pass: split for free kernel part or a trivial product (c = 0),
  // collapse when the cokernel part is trivial, else consult the extension
  // machinery.
  for (long n = 0; n <= top; ++n) {
    GysinDegree& d = result.degrees[n];
    d.coker_part = cokers[n].group;
    d.ker_part = kernels[n].group;
    d.coker_gens = cokers[n].gens;
    d.ker_gens = kernels[n].gens;
    if (d.ker_part.is_free() || c_zero) {
      d.assembled =
          ExtensionResult::resolved(direct_sum(d.coker_part, d.ker_part));
    } else if (d.coker_part.is_trivial()) {
      d.assembled = ExtensionResult::resolved(d.ker_part);
    } else {
      d.assembled = resolve_extension(d.coker_part, d.ker_part);
    }
  }
  // Second pass: Poincare duality for the closed oriented total space pins
  // the torsion of an unresolved degree to the resolved companion degree.
  if (base.oriented) {
    for (long n = 0; n <= top; ++n) {
      GysinDegree& d = result.degrees[n];
      if (d.assembled.is_resolved()) continue;
      long companion = top + 1 - n;
      if (companion == n || companion < 0 || companion > top) continue;
      if (!result.degrees[companion].assembled.is_resolved()) continue;
      const std::vector<Int>& target =
          result.degrees[companion].assembled.group.torsion();
      std::vector<AbGroup> matching;
      for (const AbGroup& cand : d.assembled.candidates)
        if (cand.torsion() == target) matching.push_back(cand);
      if (matching.size() == 1)
        d.assembled = ExtensionResult::resolved(matching.front());
    }
  }

  // Generator bookkeeping and the pi^*, pi_! matrices.
  for (long n = 0; n <= top; ++n) {
    GysinDegree& d = result.degrees[n];
    const AbGroup& hn = base.group(n);
    const AbGroup& hm = base.group(n - 1);
    if (!d.assembled.is_resolved()) {
      d.pullback = Homomorphism{hn, AbGroup::trivial(),
                                Matrix(0, hn.gen_count())};
      d.pushforward = Homomorphism{AbGroup::trivial(), hm,
                                   Matrix(hm.gen_count(), 0)};
      continue;
    }
    const AbGroup& x = d.assembled.group;
    const AbGroup& ck = d.coker_part;
    const AbGroup& kk = d.ker_part;
    const long rc = ck.rank(), rk = kk.rank();
    const std::size_t tc = ck.torsion().size(), tk = kk.torsion().size();
    Matrix pull(x.gen_count(), hn.gen_count());
    Matrix push(hm.gen_count(), x.gen_count());

    if (ck.is_trivial()) {
      // H^n(E) is carried isomorphically onto the kernel part.
      for (std::size_t i = 0; i < x.gen_count(); ++i)
        push.set_column(i, kernels[n].gens.column(i));
    } else if (x == direct_sum(ck, kk) && (tk == 0 || tc == 0)) {
      if (tk == 0) {
        // Free generators: coker free then kernel; torsion from the coker.
        for (std::size_t j = 0; j < hn.gen_count(); ++j) {
          std::vector<Int> cc = cokers[n].coords(
              gen_class(base, n, j).coords);
          pull.set_column(j, embed_coords(cc, rc, rk, tc));
        }
        for (long i = 0; i < rk; ++i)
          push.set_column(rc + i, kernels[n].gens.column(i));
      } else {
        // Torsion lives in the kernel part instead (c = 0 splits).
        for (std::size_t j = 0; j < hn.gen_count(); ++j) {
          std::vector<Int> cc = cokers[n].coords(
              gen_class(base, n, j).coords);
          std::vector<Int> col(x.gen_count(), Int(0));
          for (long i = 0; i < rc; ++i) col[i] = cc[i];
          pull.set_column(j, col);
        }
        for (std::size_t i = 0; i < kk.gen_count(); ++i)
          push.set_column(rc + i, kernels[n].gens.column(i));
      }
    } else if (tc == 0 && rk == 0 && tk == 1 && x.rank() == rc) {
      // Non-split assembly pinned by duality: free coker C = Z^rc, cyclic
      // kernel K = Z/k, H^n(E) = Z^rc (+) Z/g with g | k.  The first free
      // generator maps onto (k/g) gamma_1 + tau.
      Int k_ord = kk.torsion()[0];
      Int g = x.torsion().empty() ? Int(1) : x.torsion()[0];
      Int eps = k_ord / g;
      Matrix embed(x.gen_count(), rc);
      embed.at(0, 0) = eps;
      if (g > 1) embed.at(rc, 0) = 1;
      for (long i = 1; i < rc; ++i) embed.at(i, i) = 1;
      for (std::size_t j = 0; j < hn.gen_count(); ++j) {
        std::vector<Int> cc = cokers[n].coords(gen_class(base, n, j).coords);
        pull.set_column(j, embed * cc);
      }
      LatticeQuotient q = lattice_quotient(
          Matrix::identity(x.gen_count()), embed.augmented(x.relations()));
      if (q.group != kk)
        throw std::logic_error("non-split gysin assembly inconsistent");
      for (std::size_t i = 0; i < x.gen_count(); ++i) {
        std::vector<Int> e(x.gen_count(), Int(0));
        e[i] = 1;
        Int t = q.coords(e)[0];
        std::vector<Int> col(hm.gen_count(), Int(0));
        for (std::size_t rr = 0; rr < hm.gen_count(); ++rr)
          col[rr] = t * kernels[n].gens.at(rr, 0);
        push.set_column(i, col);
      }
    } else {
      throw std::logic_error("unsupported gysin assembly shape in degree " +
                             std::to_string(n));
    }
    d.pullback = Homomorphism{hn, x, std::move(pull)};
    d.pushforward = Homomorphism{x, hm, std::move(push)};
    check_degree(base, d, n);
  }
  return result;
}

std::pair<GradedClass, bool> euler_obstruction(const SpaceModel& base,
                                               const GradedClass& c,
                                               const GradedClass& c_hat) {
  if (c.degree != 2 || c_hat.degree != 2)
    throw BadParameters("euler obstruction needs two degree-2 classes");
  GradedClass chi = cup_total(base, make_class(base, 2, c.coords),
                              make_class(base, 2, c_hat.coords));
  return {chi, class_is_zero(base, chi)};
}

GradedClass pushforward(const GysinResult& result, const GradedClass& h) {
  const GysinDegree& d = result.at(h.degree);
  if (!d.assembled.is_resolved())
    throw std::logic_error("pushforward through an unresolved degree");
  if (h.coords.size() != d.assembled.group.gen_count())
    throw BadParameters("class coordinates do not match H^" +
                        std::to_string(h.degree) + "(E)");
  return make_class(result.base, h.degree - 1, d.pushforward.map * h.coords);
}

GradedClass pullback(const GysinResult& result, const GradedClass& x) {
  const GysinDegree& d = result.at(x.degree);
  if (!d.assembled.is_resolved())
    throw std::logic_error("pullback into an unresolved degree");
  GradedClass xb = make_class(result.base, x.degree, x.coords);
  std::vector<Int> coords = d.pullback.map * xb.coords;
  return GradedClass{
      x.degree, reduce_coords(std::move(coords),
                              d.assembled.group.gen_orders())};
}

}  // namespace tdual
