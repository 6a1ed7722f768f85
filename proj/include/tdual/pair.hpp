#pragma once

#include "tdual/space.hpp"

namespace tdual {

/// Normal form for an isomorphism class of pairs (E, h): the Chern class c
/// of the circle bundle, the fiberwise flux component t = pi_!(h), and a
/// chosen representative b of the residual base class, so that
/// h = h_0 + pi^*(b) with pi_!(h_0) = t.  The projection formula forces
/// c cup t = 0 for every pair, which is exactly the dualizability condition.
struct Pair {
  SpaceModel base;
  GradedClass c;  // degree 2
  GradedClass t;  // degree 2, in ker(cup c)
  GradedClass b;  // degree 3 representative
};

/// A Pair together with the indeterminacy subgroup
///   I = (c cup H^1(B)) + (t cup H^1(B))  inside  H^3(B);
/// representatives b, b' name the same class exactly when b - b' lies in I.
struct PairClass {
  Pair rep;
  Matrix indeterminacy;  // columns: generators of I in H^3(B) coordinates
};

/// Validate degrees (2, 2, 3) and coordinate shapes, reduce torsion
/// coordinates, and enforce the obstruction c cup t = 0.
/// Throws ObstructionNonzero when c cup t != 0, BadParameters on shape.
Pair make_pair(const SpaceModel& base, const GradedClass& c,
               const GradedClass& t, const GradedClass& b);

PairClass make_pair_class(const Pair& p);

/// Columns spanning I = (c cup H^1) + (t cup H^1) in H^3(B) coordinates
/// (no relation columns; membership tests append them).
Matrix indeterminacy_lattice(const SpaceModel& base, const GradedClass& c,
                             const GradedClass& t);

/// The T-duality transform (c, t, b) -> (-t, -c, b).  Involutive exactly,
/// and the output obstruction (-t) cup (-c) = 0 holds automatically.
Pair dualize(const Pair& p);

/// The H^3(B)-action (c, t, b) -> (c, t, b + beta).  Throws BaseMismatch
/// when beta is not a degree-3 class of the pair's base.
Pair act_h3(const Pair& p, const GradedClass& beta);

/// Class-level equality: equal c, equal t, and b - b' in the indeterminacy
/// subgroup.  Throws BaseMismatch when the bases differ.
bool pairs_isomorphic(const Pair& p, const Pair& q);

}  // namespace tdual
