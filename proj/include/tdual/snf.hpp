#pragma once

#include <optional>

#include "tdual/matrix.hpp"

namespace tdual {

/// Smith normal form certificate: d = u * m * v with u, v unimodular and the
/// nonzero diagonal of d a divisibility chain d1 | d2 | ... .  The explicit
/// inverses are carried along so lattice computations never need to invert a
/// unimodular matrix after the fact.
struct SmithResult {
  Matrix u, d, v;
  Matrix u_inv, v_inv;
};

/// Production kernel: identical elementary-operation schedule to the serial
/// reference, with the independent row/column updates dispatched through
/// OpenMP once the active submatrix is large enough.  Output is bit-for-bit
/// equal to smith_normal_form_serial.
SmithResult smith_normal_form(const Matrix& m);

/// Serial reference kernel, kept for testing and benchmarking against the
/// parallel path.
SmithResult smith_normal_form_serial(const Matrix& m);

/// Nonzero diagonal entries of the Smith form (the invariant factors).
std::vector<Int> invariant_factors(const Matrix& m);

/// Basis (as columns) of the integer kernel of m : Z^cols -> Z^rows.
Matrix kernel_lattice(const Matrix& m);

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
Matrix lattice_basis(const Matrix& gens);

/// Does v lie in the column span of `gens` over Z?
bool in_lattice(const Matrix& gens, const std::vector<Int>& v);

/// Some integer solution x of gens * x = v, if one exists.
std::optional<std::vector<Int>> solve_lattice(const Matrix& gens,
                                              const std::vector<Int>& v);

}  // namespace tdual
