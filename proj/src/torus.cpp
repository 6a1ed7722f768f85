#include "tdual/torus.hpp"

#include <deque>
#include <map>
#include <string>
#include <utility>

#include "tdual/errors.hpp"
#include "tdual/pair.hpp"
#include "tdual/snf.hpp"

namespace tdual {

namespace {

/// A class x in H^n(E) with pushforward(x) = t, the deterministic lattice
/// solution; exists whenever t lies in ker(cup c) = image(pi_!).
GradedClass push_section(const GysinResult& result, long n,
                         const GradedClass& t) {
  const Matrix& p = result.at(n).pushforward.map;
  const Matrix rels = result.base.group(n - 1).relations();
  const auto sol = solve_lattice(p.augmented(rels), t.coords);
  if (!sol) {
    throw NotDualizable("class is not a fiberwise integral of any flux");
  }
  std::vector<Int> coords(sol->begin(),
                          sol->begin() + static_cast<long>(p.cols()));
  return GradedClass{n, reduce_coords(std::move(coords),
                                      result.group(n).gen_orders())};
}

/// Residual base class beta with h = section(pi_! h) + pi^*(beta).
GradedClass coker_residual(const GysinResult& result, const GradedClass& h,
                           const GradedClass& t) {
  const GradedClass lift = push_section(result, 3, t);
  std::vector<Int> residual(h.coords.size());
  for (std::size_t i = 0; i < residual.size(); ++i) {
    residual[i] = h.coords[i] - lift.coords[i];
  }
  const Matrix& pull = result.at(3).pullback.map;
  const Matrix rels = result.group(3).relations();
  const auto sol = solve_lattice(pull.augmented(rels), residual);
  if (!sol) {
    throw NotDualizable("flux does not decompose in the gysin frame");
  }
  std::vector<Int> coords(sol->begin(),
                          sol->begin() + static_cast<long>(pull.cols()));
  return GradedClass{3, reduce_coords(std::move(coords),
                                      result.base.group(3).gen_orders())};
}

GradedClass checked_flux(const GysinResult& model, const GradedClass& h) {
  if (h.degree != 3 || h.coords.size() != model.group(3).gen_count()) {
    throw BadParameters("splitting class is not in the bundle's H^3 frame");
  }
  return GradedClass{3, reduce_coords(h.coords, model.group(3).gen_orders())};
}

GradedClass negated_flux(const GysinResult& model, const GradedClass& h) {
  std::vector<Int> neg;
  neg.reserve(h.coords.size());
  for (const Int& v : h.coords) neg.push_back(-v);
  return GradedClass{3,
                     reduce_coords(std::move(neg), model.group(3).gen_orders())};
}

GradedClass flux_sum(const GysinResult& model, const GradedClass& x,
                     const GradedClass& y) {
  std::vector<Int> s(x.coords.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = x.coords[i] + y.coords[i];
  }
  return GradedClass{3,
                     reduce_coords(std::move(s), model.group(3).gen_orders())};
}

}  // namespace

TwistMatrix make_twist(const Int& a, const Int& b, const Int& c,
                       const Int& d) {
  TwistMatrix phi{a, b, c, d};
  const Int det = phi.det();
  if (det != 1 && det != -1) {
    throw BadParameters("twist matrix must lie in GL(2, Z)");
  }
  return phi;
}

TorusBundleClass make_torus_class(const SpaceModel& base,
                                  const GradedClass& c0,
                                  const GradedClass& c1) {
  if (c0.degree != 2 || c1.degree != 2) {
    throw BadParameters("torus-bundle Chern classes have degree 2");
  }
  return TorusBundleClass{base, make_class(base, 2, c0.coords),
                          make_class(base, 2, c1.coords)};
}

TwistMatrix sigma(const TwistMatrix& phi) {
  const Int det = phi.det();
  return make_twist(det * phi.a, det * -phi.c, det * -phi.b, det * phi.d);
}

TorusBundleClass act_twist(const TwistMatrix& phi,
                           const TorusBundleClass& f) {
  const TwistMatrix s = sigma(phi);
  const GradedClass c0 =
      add(f.base, scale(f.base, s.a, f.c0), scale(f.base, s.b, f.c1));
  const GradedClass c1 =
      add(f.base, scale(f.base, s.c, f.c0), scale(f.base, s.d, f.c1));
  return TorusBundleClass{f.base, c0, c1};
}

OrbitAnswer orbit_equivalent(const SpaceModel& base,
                             const TorusBundleClass& f,
                             const TorusBundleClass& g,
                             std::vector<TwistMatrix>* witness) {
  if (f.base.descriptor != base.descriptor ||
      g.base.descriptor != base.descriptor) {
    throw BaseMismatch("torus-bundle classes live over different bases");
  }
  if (witness) witness->clear();

  bool exact_yes = false;
  if (base.descriptor == "s2") {
    // Orbits of Z^2 under GL(2,Z) are classified by gcd(|m0|, |m1|).
    const Int inv_f = gcd(abs(f.c0.coords[0]), abs(f.c1.coords[0]));
    const Int inv_g = gcd(abs(g.c0.coords[0]), abs(g.c1.coords[0]));
    if (inv_f != inv_g) return OrbitAnswer::No;
    exact_yes = true;
  }

  const TwistMatrix gens[] = {
      make_twist(0, 1, 1, 0),   // swap
      make_twist(-1, 0, 0, 1),  // negate-first
      make_twist(1, 1, 0, 1),   // shear
      make_twist(1, -1, 0, 1),  // shear inverse
  };
  TwistMatrix sig[4] = {sigma(gens[0]), sigma(gens[1]), sigma(gens[2]),
                        sigma(gens[3])};
  const std::vector<Int> orders = base.group(2).gen_orders();

  using State = std::pair<std::vector<Int>, std::vector<Int>>;
  const auto key_of = [](const State& st) {
    std::string s;
    for (const Int& v : st.first) s += v.get_str() + ",";
    s += ";";
    for (const Int& v : st.second) s += v.get_str() + ",";
    return s;
  };
  const auto apply = [&](int i, const State& st) {
    const std::size_t n = st.first.size();
    State next{std::vector<Int>(n), std::vector<Int>(n)};
    for (std::size_t j = 0; j < n; ++j) {
      next.first[j] = sig[i].a * st.first[j] + sig[i].b * st.second[j];
      next.second[j] = sig[i].c * st.first[j] + sig[i].d * st.second[j];
    }
    next.first = reduce_coords(std::move(next.first), orders);
    next.second = reduce_coords(std::move(next.second), orders);
    return next;
  };

  const State start{f.c0.coords, f.c1.coords};
  const std::string target = key_of(State{g.c0.coords, g.c1.coords});
  struct Step {
    std::string parent;
    int gen = -1;
  };
  std::map<std::string, Step> seen;
  std::map<std::string, State> states;
  std::deque<std::pair<std::string, int>> frontier;
  const std::string start_key = key_of(start);
  seen[start_key] = Step{};
  states.emplace(start_key, start);
  frontier.emplace_back(start_key, 0);
  while (!frontier.empty()) {
    auto [key, depth] = frontier.front();
    frontier.pop_front();
    if (key == target) {
      if (witness) {
        std::vector<TwistMatrix> word;
        std::string cur = key;
        while (seen[cur].gen >= 0) {
          word.push_back(gens[seen[cur].gen]);
          cur = seen[cur].parent;
        }
        // the search applied act_twist(gens[i], .) stepwise from f, so the
        // replay order is first-applied first
        std::reverse(word.begin(), word.end());
        *witness = std::move(word);
      }
      return OrbitAnswer::Yes;
    }
    if (depth >= 12) continue;
    const State& cur = states.at(key);
    for (int i = 0; i < 4; ++i) {
      State next = apply(i, cur);
      std::string nkey = key_of(next);
      if (seen.count(nkey)) continue;
      seen[nkey] = Step{key, i};
      states.emplace(nkey, std::move(next));
      frontier.emplace_back(std::move(nkey), depth + 1);
    }
  }
  return exact_yes ? OrbitAnswer::Yes : OrbitAnswer::Unknown;
}

std::vector<Splitting> zero_splittings(const SpaceModel& base,
                                       const GradedClass& c0,
                                       const GradedClass& c1) {
  const auto euler = euler_obstruction(base, c0, c1);
  if (!euler.second) {
    throw ObstructionNonzero(
        "c0 cup c1 != 0: the rank-4 bundle has no Thom class");
  }
  const GysinResult e0 = gysin_cohomology(make_bundle(base, c0));
  const GysinResult e1 = gysin_cohomology(make_bundle(base, c1));

  std::vector<Splitting> out;
  const auto emit_normalized = [&](const GradedClass& h0,
                                   const GradedClass& h1) {
    Splitting s{checked_flux(e0, h0), checked_flux(e1, h1)};
    const Int* first_nonzero = nullptr;
    for (const std::vector<Int>* v : {&s.h0.coords, &s.h1.coords}) {
      for (const Int& x : *v) {
        if (x != 0) {
          first_nonzero = &x;
          break;
        }
      }
      if (first_nonzero) break;
    }
    if (!first_nonzero) return;  // the trivial pair is not a generator
    if (*first_nonzero < 0) {
      s = Splitting{negated_flux(e0, s.h0), negated_flux(e1, s.h1)};
    }
    out.push_back(std::move(s));
  };

  // pullback family: (pi_0^* beta, -pi_1^* beta) over the H^3(B) generators
  for (std::size_t j = 0; j < base.group(3).gen_count(); ++j) {
    const GradedClass beta = gen_class(base, 3, j);
    emit_normalized(pullback(e0, beta),
                    negated_flux(e1, pullback(e1, beta)));
  }

  // Thom-class family: (k0, -k1) with (pi_i)_! k_i = -c_{1-i}
  emit_normalized(
      push_section(e0, 3, scale(base, -1, c1)),
      negated_flux(e1, push_section(e1, 3, scale(base, -1, c0))));

  return out;
}

IteratedDual iterated_dual(const SpaceModel& base, const GradedClass& c0,
                           const GradedClass& c1, const Splitting& split) {
  const GysinResult models[2] = {gysin_cohomology(make_bundle(base, c0)),
                                 gysin_cohomology(make_bundle(base, c1))};
  const GradedClass fluxes[2] = {checked_flux(models[0], split.h0),
                                 checked_flux(models[1], split.h1)};

  IteratedDual result;
  GradedClass* hats[2] = {&result.c_hat0, &result.c_hat1};
  GradedClass* split_hats[2] = {&result.split_hat.h0, &result.split_hat.h1};
  for (int i = 0; i < 2; ++i) {
    const GradedClass t = pushforward(models[i], fluxes[i]);
    if (!class_is_zero(base, cup_total(base, models[i].c, t))) {
      throw NotDualizable("factor flux violates c cup t = 0");
    }
    const GradedClass b = coker_residual(models[i], fluxes[i], t);
    const Pair dual = dualize(make_pair(base, models[i].c, t, b));
    *hats[i] = dual.c;  // = -(pi_i)_!(h_i)
    const GysinResult dual_model = gysin_cohomology(make_bundle(base, dual.c));
    // dual flux: fiberwise part integrating to t-hat, plus the residual
    *split_hats[i] = flux_sum(dual_model, push_section(dual_model, 3, dual.t),
                              pullback(dual_model, dual.b));
  }
  return result;
}

}  // namespace tdual
