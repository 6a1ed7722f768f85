#pragma once

#include <vector>

#include "tdual/gysin.hpp"
#include "tdual/space.hpp"

namespace tdual {

/// Automorphism of the torus fiber: an element of GL(2, Z), row-major
/// [[a, b], [c, d]] with ad - bc = +-1.
struct TwistMatrix {
  Int a, b, c, d;
  Int det() const { return a * d - b * c; }
};

/// Validates the unimodularity invariant; throws BadParameters.
TwistMatrix make_twist(const Int& a, const Int& b, const Int& c, const Int& d);

/// Isomorphism class of a principal T^2-bundle: the Chern pair
/// (c0, c1) in H^2(B, Z^2).
struct TorusBundleClass {
  SpaceModel base;
  GradedClass c0, c1;
};

TorusBundleClass make_torus_class(const SpaceModel& base,
                                  const GradedClass& c0,
                                  const GradedClass& c1);

/// The order-two bijection phi -> det(phi) * [[a, -c], [-b, d]].  It is an
/// anti-homomorphism, so the twisted action composes contravariantly; see
/// act_twist.
TwistMatrix sigma(const TwistMatrix& phi);

/// c(phi F) = phi^sigma c(F), the 2x2 integer action on the Chern pair.
/// Composition convention (fixed by the sigma anti-homomorphism):
/// act_twist(phi * psi, f) = act_twist(psi, act_twist(phi, f)).
TorusBundleClass act_twist(const TwistMatrix& phi, const TorusBundleClass& f);

enum class OrbitAnswer { Yes, No, Unknown };

/// Are the two Chern pairs in the same GL(2,Z)-orbit?  Over s2 the answer
/// is exact via the gcd invariant of the coefficient pair ((0,0) is its own
/// orbit); over other bases a breadth-first search over words of length
/// <= 12 in the standard generators (swap, negate-first, shear and its
/// inverse) returns Yes or Unknown, never a false No.  When a word is
/// found and `witness` is non-null it receives the generator sequence, to
/// be applied left to right through act_twist.
OrbitAnswer orbit_equivalent(const SpaceModel& base,
                             const TorusBundleClass& f,
                             const TorusBundleClass& g,
                             std::vector<TwistMatrix>* witness = nullptr);

/// A splitting h = p0^*(h0) + p1^*(h1) of a flux on the T^2-bundle with
/// Chern pair (c0, c1): h_i lives in H^3 of the circle bundle E_i with
/// Chern class c_i, in the generator frame of its gysin model.
struct Splitting {
  GradedClass h0;
  GradedClass h1;
};

/// Generators of the lattice of nontrivial splittings of h = 0, from the
/// H^3(S(V)) Gysin segment: the pullback family (pi_0^* beta, -pi_1^* beta)
/// over the generators beta of H^3(B), and the Thom-class family (k0, -k1)
/// with (pi_i)_! k_i = -c_{1-i}.  The k_i are the deterministic lattice
/// lifts; any other lift choice differs by pullback-family directions, so
/// the returned span is canonical.  Requires the Euler obstruction
/// c0 cup c1 = 0 (throws ObstructionNonzero); zero pairs are dropped and
/// each generator is sign-normalized.
std::vector<Splitting> zero_splittings(const SpaceModel& base,
                                       const GradedClass& c0,
                                       const GradedClass& c1);

struct IteratedDual {
  GradedClass c_hat0, c_hat1;  // = -(pi_i)_!(h_i)
  Splitting split_hat;         // dual fluxes in the dual bundles' frames
};

/// Factorwise T-duality of ((c0, c1), split): each circle-bundle factor
/// (E_i, h_i) is dualized through the pair module, giving the dual Chern
/// pair and the dual splitting.  Throws NotDualizable on a factor whose
/// flux violates the dualizability constraint, BadParameters on shape.
IteratedDual iterated_dual(const SpaceModel& base, const GradedClass& c0,
                           const GradedClass& c1, const Splitting& split);

}  // namespace tdual
