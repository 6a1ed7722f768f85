#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdual/errors.hpp"
#include "tdual/snf.hpp"

namespace tdual {

/// Finitely generated abelian group in invariant-factor canonical form:
/// Z^rank + Z/d1 + Z/d2 + ... with 2 <= d1 | d2 | ... .  Construction
/// canonicalizes, so equality of representations is isomorphism.
class AbGroup {
 public:
  AbGroup() : rank_(0) {}

  /// Canonicalize an arbitrary presentation: `orders` may contain zeros
  /// (free summands), ones (trivial summands) and arbitrary moduli in any
  /// order; the result is the invariant-factor chain.
  static AbGroup of(long rank, std::vector<Int> orders = {});
  static AbGroup free(long rank) { return of(rank); }
  static AbGroup cyclic(const Int& n) { return of(0, {n}); }
  static AbGroup trivial() { return AbGroup(); }

  long rank() const { return rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }

  bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
  bool is_free() const { return torsion_.empty(); }
  bool is_finite() const { return rank_ == 0; }

  /// Order of the torsion subgroup (1 for free groups).
  Int torsion_order() const;

  /// Generator bookkeeping: free generators first, then the torsion chain.
  std::size_t gen_count() const { return rank_ + torsion_.size(); }
  std::vector<Int> gen_orders() const;

  /// Diagonal relation matrix (gen_count x torsion count).
  Matrix relations() const;

  /// Canonical text form: "0", "Z", "Z^2 + Z/2 + Z/6", ...
  std::string to_string() const;

  bool operator==(const AbGroup& o) const {
    return rank_ == o.rank_ && torsion_ == o.torsion_;
  }
  bool operator!=(const AbGroup& o) const { return !(*this == o); }
  bool operator<(const AbGroup& o) const;  // deterministic ordering for sets

 private:
  long rank_;
  std::vector<Int> torsion_;  // ascending divisibility chain, entries >= 2
};

AbGroup direct_sum(const AbGroup& a, const AbGroup& b);

/// Isomorphism test; representations are canonical, so this renormalizes
/// nothing beyond what construction already did.
bool is_isomorphic(const AbGroup& a, const AbGroup& b);

/// All isomorphism classes of finite abelian groups of order n (n >= 1).
std::vector<AbGroup> abelian_groups_of_order(const Int& n);

/// A homomorphism between finitely generated abelian groups, given by an
/// integer matrix whose column j is the image of the j-th generator of the
/// domain (free generators first, then the torsion chain).
struct Homomorphism {
  AbGroup domain, codomain;
  Matrix map;
};

/// Does the matrix define a map on the quotients (order relations preserved)?
bool is_well_defined(const Homomorphism& f);

/// Quotient of the lattice spanned by sup's columns by the sublattice
/// spanned by sub's columns (which must be contained in it), together with
/// explicit ambient-coordinate generators aligned with the canonical form.
struct LatticeQuotient {
  AbGroup group;
  Matrix gens;  // ambient columns, free generators first then torsion chain

  /// Quotient coordinates of an ambient vector (must lie in sup's span);
  /// torsion coordinates are reduced into [0, d).
  std::vector<Int> coords(const std::vector<Int>& ambient) const;

  // Internals for coords(): basis of sup, diagonalizing transform, orders.
  Matrix basis;
  Matrix transform;
  std::vector<Int> diag;
  std::vector<std::size_t> coord_index;
};

LatticeQuotient lattice_quotient(const Matrix& sup, const Matrix& sub);

struct HomAnalysis {
  AbGroup kernel, image, cokernel;
  Matrix kernel_gens;    // domain-coordinate columns, aligned with kernel
  Matrix cokernel_gens;  // codomain-coordinate columns, aligned with cokernel
};

/// Kernel, image and cokernel of f, all in canonical form.
/// Throws IllFormedHom if the matrix does not define a homomorphism.
HomAnalysis analyze_hom(const Homomorphism& f);

/// Outcome of a two-step extension problem 0 -> sub -> X -> quot -> 0.
struct ExtensionResult {
  enum class Kind { Resolved, Ambiguous };
  Kind kind = Kind::Resolved;
  AbGroup group;  // meaningful when resolved

  // Ambiguous payload: all candidates share the free rank; torsion_order is
  // the product |T(sub)|*|T(quot)| (an upper bound each candidate's torsion
  // order divides, attained when both sides are finite); composition_factor
  // is the cyclic layer when the ambiguity came from a homogeneous tower
  // (trivial otherwise).
  Int torsion_order = 1;
  AbGroup composition_factor;
  std::vector<AbGroup> candidates;

  static ExtensionResult resolved(AbGroup g);
  static ExtensionResult ambiguous(Int torsion_order, AbGroup factor,
                                   std::vector<AbGroup> candidates);

  bool is_resolved() const { return kind == Kind::Resolved; }
  long common_rank() const;
  std::string to_string() const;

  bool operator==(const ExtensionResult& o) const;
};

/// Spec rule set: a free quotient splits; a trivial side resolves to the
/// other; a unique candidate resolves; anything else is surfaced as
/// Ambiguous with the exact candidate list.
ExtensionResult resolve_extension(const AbGroup& sub, const AbGroup& quot);

/// Isomorphism classes of X fitting 0 -> sub -> X -> quot -> 0 (exact,
/// desk-scale enumeration).
std::vector<AbGroup> extension_candidates(const AbGroup& sub,
                                          const AbGroup& quot);

/// Isomorphism classes reachable by an r-step tower of extensions with every
/// quotient layer Z/n -- the groups admitting a composition-style series
/// with cyclic layers of order n.
std::vector<AbGroup> chain_extension_candidates(const Int& n, long r);

/// Reduce coordinates against generator orders (order 0 = free, untouched;
/// torsion coordinates land in [0, d)).
std::vector<Int> reduce_coords(std::vector<Int> coords,
                               const std::vector<Int>& orders);

}  // namespace tdual
