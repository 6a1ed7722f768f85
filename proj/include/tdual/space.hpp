#pragma once

#include <map>
#include <string>
#include <vector>

#include "tdual/abgroup.hpp"
#include "tdual/errors.hpp"

namespace tdual {

/// A cohomology class: coordinates in the chosen generators of H^degree of
/// the owning model, torsion coordinates reduced into [0, d).
struct GradedClass {
  long degree = 0;
  std::vector<Int> coords;
};

/// Exact cohomology-ring model of a catalog space.  Immutable after
/// construction; all invariants (graded commutativity, unit law,
/// associativity, orientation pairing) are checked programmatically by
/// make_space / lens_like_model.
struct SpaceModel {
  std::string descriptor;
  long dimension = 0;
  bool oriented = true;
  long fundamental_degree = 0;  // = dimension for the closed oriented catalog
  bool ring_extrapolated = false;  // lens-like model with composite k

  std::vector<AbGroup> groups_by_degree;             // index 0..dimension
  std::vector<std::vector<std::string>> gen_names;   // aligned with groups

  /// Trilinear cup data: tensor at (p, q) has one column per generator pair
  /// (i of H^p major, j of H^q minor) holding the product in H^{p+q}
  /// coordinates.  Only stored for p, q >= 1 with all three groups nonzero.
  std::map<std::pair<long, long>, Matrix> cup_tensors;

  const AbGroup& group(long degree) const;
  const std::vector<std::string>& names(long degree) const;
};

/// Build a catalog model.  Grammar (exact):
///   pt | s1 | s2 | s3 | surface:g=<int ≥ 0> | cp:r=<int ≥ 1>
///      | torus:n=<1|2|3> | lens:k=<int ≥ 2>,r=<int ≥ 1>
/// Throws UnknownDescriptor for anything else.
SpaceModel make_space(const std::string& descriptor);

/// Model with H^0 = Z, H^{2l} = Z/k on x^l for 1 <= l <= r, H^{2r+1} = Z,
/// zero elsewhere; x^a cup x^b = x^{a+b}.  Throws BadParameters unless
/// k >= 2, r >= 1.  Composite k is flagged ring_extrapolated.
SpaceModel lens_like_model(const Int& k, long r);

GradedClass zero_class(const SpaceModel& space, long degree);
GradedClass gen_class(const SpaceModel& space, long degree, std::size_t i);

/// Validates the coordinate length and reduces torsion coordinates.
GradedClass make_class(const SpaceModel& space, long degree,
                       std::vector<Int> coords);

GradedClass add(const SpaceModel& space, const GradedClass& x,
                const GradedClass& y);
GradedClass scale(const SpaceModel& space, const Int& n, const GradedClass& x);
bool class_is_zero(const SpaceModel& space, const GradedClass& x);
bool classes_equal(const SpaceModel& space, const GradedClass& x,
                   const GradedClass& y);

/// Cup product in canonical coordinates.  Throws DegreeOverflow when the
/// target degree exceeds the dimension; internal callers that want the
/// zero-by-convention behaviour use cup_total.
GradedClass cup(const SpaceModel& space, const GradedClass& x,
                const GradedClass& y);

/// Cup product extended by zero above the dimension.
GradedClass cup_total(const SpaceModel& space, const GradedClass& x,
                      const GradedClass& y);

}  // namespace tdual
