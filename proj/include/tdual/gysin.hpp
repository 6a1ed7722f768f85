#pragma once

#include <utility>
#include <vector>

#include "tdual/abgroup.hpp"
#include "tdual/space.hpp"

namespace tdual {

/// Principal U(1)-bundle over a catalog base, classified by its first Chern
/// class (degree 2).
struct CircleBundle {
  SpaceModel base;
  GradedClass c;
};

/// Validates the degree and coordinate shape.
CircleBundle make_bundle(const SpaceModel& base, const GradedClass& c);

/// One degree of the solved Gysin sequence
///   0 -> coker(cup c: H^{n-2} -> H^n) -> H^n(E) -> ker(cup c: H^{n-1} -> H^{n+1}) -> 0
struct GysinDegree {
  AbGroup coker_part;  // image of the pullback
  AbGroup ker_part;    // image of the pushforward
  ExtensionResult assembled;
  Homomorphism pullback;     // H^n(B) -> H^n(E)
  Homomorphism pushforward;  // H^n(E) -> H^{n-1}(B)
  Matrix coker_gens;  // representative columns in H^n(B) coordinates
  Matrix ker_gens;    // columns in H^{n-1}(B) coordinates spanning ker(cup c)
};

struct GysinResult {
  SpaceModel base;
  GradedClass c;
  long total_dimension = 0;          // dim(base) + 1 = dim(E)
  std::vector<GysinDegree> degrees;  // indices 0 .. total_dimension

  const GysinDegree& at(long n) const;  // throws DegreeOutOfRange
  bool all_resolved() const;
  /// Assembled H^n(E); trivial outside 0..total_dimension.  Requires the
  /// degree to be resolved.
  AbGroup group(long n) const;
};

/// Solve the Gysin sequence in every degree.  Extensions are resolved by:
/// free kernel part (split), trivial side, the Kunneth split for c = 0, and
/// Poincare-duality torsion matching against the companion degree for closed
/// oriented total spaces; anything still undetermined stays Ambiguous.
GysinResult gysin_cohomology(const CircleBundle& bundle);

/// chi = c cup c_hat and whether the rank-4 bundle admits a Thom class.
std::pair<GradedClass, bool> euler_obstruction(const SpaceModel& base,
                                               const GradedClass& c,
                                               const GradedClass& c_hat);

/// Apply the stored pushforward of degree h.degree.  The normalization makes
/// the dual-of-fundamental-class generator of a closed oriented total space
/// map to the one of the base.
GradedClass pushforward(const GysinResult& result, const GradedClass& h);

/// Apply the stored pullback to a base class of the same degree.
GradedClass pullback(const GysinResult& result, const GradedClass& x);

}  // namespace tdual
