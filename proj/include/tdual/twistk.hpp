#pragma once

#include <string>
#include <vector>

#include "tdual/gysin.hpp"

namespace tdual {

/// K^0 and K^1 as extension-problem outcomes, with flags recording which
/// degeneration and splitting arguments produced them ("AHSS-degenerate",
/// "extension-split", "completion-theorem", "kunneth-split",
/// "tduality-transport", "mayer-vietoris").
struct KGroups {
  ExtensionResult k0, k1;
  std::vector<std::string> assumptions;
};

/// Untwisted K-theory by the Atiyah-Hirzebruch route: every differential
/// d_r (odd r >= 3) must be provably zero -- source in the unit column,
/// source or target trivial, or target torsion-free (the spectral sequence
/// degenerates rationally, so differentials take values in torsion) --
/// otherwise UnsupportedDimension.  The graded pieces of each parity are
/// folded from the deepest filtration layer outward; a homogeneous cyclic
/// tower Z/m x cnt resolves to Z/2^cnt for |m| = 2 (completion theorem) and
/// stays Ambiguous with the exact chain candidates otherwise.
KGroups k_untwisted(const SpaceModel& space);

/// Same for a solved circle-bundle total space.  A zero Chern class is
/// routed through the Kunneth split K^i(B x S^1) = K^i(B) + K^{i-1}(B)
/// instead (the AHSS rules cannot certify the trivial bundle over a
/// lens-like base).  Throws BadParameters when a degree is unresolved.
KGroups k_untwisted(const GysinResult& total_space);

/// Twisted K-theory of a closed oriented 3-manifold E with twist n, by the
/// Mayer-Vietoris formulas: K^0(E,n) = reduced K^0(E) (one free rank
/// dropped), K^1(E,n) = Z^{rank K^1(E) - 1} + Z/|n|.  n = 0 returns the
/// input unchanged.
KGroups k_twisted_3manifold(const KGroups& k_of_e, const Int& n);

/// K(E_{n,r}, k): circle bundle with Chern class n*z over cp:r, twist k.
///   k = 0:          untwisted AHSS/Kunneth route;
///   n = 0, k != 0:  transported across T-duality to the untwisted E_{-k};
///   both nonzero:   the 3-manifold route when r = 1, UnsupportedTwist
///                   otherwise (only E_0 admits nontrivial twists for r > 1).
KGroups k_cpr(const Int& n, const Int& k, long r);

/// K^i(E_k, n) = K^{i+1}(dual) over surface:g, the dual pair computed by
/// pair dualize; exact comparison of canonical forms.
bool verify_tduality_k(long g, const Int& k, const Int& n);

enum class Theory { K, HR };

/// One entry of the symbolic 2x2 transform on the basis (1, u): an integer
/// coefficient and the degree tag of the operator applied to u ("B" for the
/// Bott map, "z" for the coefficient-ring generator, "" for none).
struct SymbolicEntry {
  Int coeff;
  std::string tag;
  std::string to_string(const std::string& basis_symbol) const;
};

/// Transform p_hat_! . g^* . p^* on the basic pair, row i = image of the
/// i-th basis element (1, u).
struct AdmissibilityReport {
  Theory theory = Theory::K;
  Int g;
  SymbolicEntry matrix[2][2];
  bool is_iso = false;
  std::string image_of_one() const;
  std::string image_of_u() const;
};

/// K: 1 -> g*B(u), u -> 1, iso iff |g| = 1.  HR: 1 -> z*g*u, u -> 1,
/// iso iff g != 0.
AdmissibilityReport t_admissibility(Theory theory, const Int& g);

/// The torsion counterexample over lens:k,r -- K(F_0) vs the twisted
/// K(F_0, h_hat) = K(F_c) shifted.
struct TorsionExample {
  KGroups k_fc, k_f0, k_f0_twisted;
  bool distinct = false;
};

/// Throws BadParameters unless k is prime and r > 1.
TorsionExample torsion_example(const Int& k, long r);

}  // namespace tdual
