#include "tdual/snf.hpp"

#include <cstdlib>

namespace tdual {
namespace {

// Shared elimination driver.  All four unimodular certificates are updated
// alongside d, so the invariants
//   d = u * m * v,   u * u_inv = I,   v_inv * v = I
// hold after every elementary operation.  The parallel path dispatches the
// independent row (resp. column) updates of d/u (resp. d/v) through OpenMP
// and replays the u_inv/v_inv column accumulations serially; integer sums do
// not depend on evaluation order, so both paths produce identical output.
struct Eliminator {
  Matrix d, u, v, u_inv, v_inv;
  bool parallel;

  explicit Eliminator(const Matrix& m, bool par)
      : d(m),
        u(Matrix::identity(m.rows())),
        v(Matrix::identity(m.cols())),
        u_inv(Matrix::identity(m.rows())),
        v_inv(Matrix::identity(m.cols())),
        parallel(par) {}

  std::size_t rows() const { return d.rows(); }
  std::size_t cols() const { return d.cols(); }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
    for (std::size_t j = 0; j < rows(); ++j) {
      std::swap(u.at(a, j), u.at(b, j));
      std::swap(u_inv.at(j, a), u_inv.at(j, b));
    }
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
    for (std::size_t i = 0; i < cols(); ++i) {
      std::swap(v.at(i, a), v.at(i, b));
      std::swap(v_inv.at(a, i), v_inv.at(b, i));
    }
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols(); ++j) d.at(i, j) = -d.at(i, j);
    for (std::size_t j = 0; j < rows(); ++j) {
      u.at(i, j) = -u.at(i, j);
      u_inv.at(j, i) = -u_inv.at(j, i);
    }
  }

  // row[dst] -= q * row[src] on d and u; u_inv column src gains q * col dst.
  void row_axpy(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols(); ++j)
      d.at(dst, j) -= q * d.at(src, j);
    for (std::size_t j = 0; j < rows(); ++j) {
      u.at(dst, j) -= q * u.at(src, j);
      u_inv.at(j, src) += q * u_inv.at(j, dst);
    }
  }

  // col[dst] -= q * col[src] on d and v; v_inv row src gains q * row dst.
  void col_axpy(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows(); ++i)
      d.at(i, dst) -= q * d.at(i, src);
    for (std::size_t i = 0; i < cols(); ++i) {
      v.at(i, dst) -= q * v.at(i, src);
      v_inv.at(src, i) += q * v_inv.at(dst, i);
    }
  }

  // Clear column k below the pivot.  Returns true if every targeted entry
  // became exactly zero (no remainders survive).
  bool clear_column(std::size_t k) {
    const Int pivot = d.at(k, k);
    std::vector<Int> q(rows());
    for (std::size_t i = k + 1; i < rows(); ++i) q[i] = d.at(i, k) / pivot;

    const long n = static_cast<long>(rows());
    const bool par =
        parallel && (rows() - k) * (cols() - k) >= 4096 && rows() - k >= 2;
#pragma omp parallel for schedule(static) if (par)
    for (long i = static_cast<long>(k) + 1; i < n; ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < cols(); ++j)
        d.at(i, j) -= q[i] * d.at(k, j);
      for (std::size_t j = 0; j < rows(); ++j)
        u.at(i, j) -= q[i] * u.at(k, j);
    }
    // u_inv column k accumulates contributions from every row update.
    for (std::size_t i = k + 1; i < rows(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < rows(); ++j)
        u_inv.at(j, k) += q[i] * u_inv.at(j, i);
    }
    for (std::size_t i = k + 1; i < rows(); ++i)
      if (d.at(i, k) != 0) return false;
    return true;
  }

  bool clear_row(std::size_t k) {
    const Int pivot = d.at(k, k);
    std::vector<Int> q(cols());
    for (std::size_t j = k + 1; j < cols(); ++j) q[j] = d.at(k, j) / pivot;

    const long m = static_cast<long>(cols());
    const bool par =
        parallel && (rows() - k) * (cols() - k) >= 4096 && cols() - k >= 2;
#pragma omp parallel for schedule(static) if (par)
    for (long j = static_cast<long>(k) + 1; j < m; ++j) {
      if (q[j] == 0) continue;
      for (std::size_t i = 0; i < rows(); ++i)
        d.at(i, j) -= q[j] * d.at(i, k);
      for (std::size_t i = 0; i < cols(); ++i)
        v.at(i, j) -= q[j] * v.at(i, k);
    }
    for (std::size_t j = k + 1; j < cols(); ++j) {
      if (q[j] == 0) continue;
      for (std::size_t i = 0; i < cols(); ++i)
        v_inv.at(k, i) += q[j] * v_inv.at(j, i);
    }
    for (std::size_t j = k + 1; j < cols(); ++j)
      if (d.at(k, j) != 0) return false;
    return true;
  }

  // Smallest nonzero |entry| in the trailing submatrix (row-major tie break).
  bool find_pivot(std::size_t k, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t i = k; i < rows(); ++i)
      for (std::size_t j = k; j < cols(); ++j) {
        const Int& x = d.at(i, j);
        if (x == 0) continue;
        Int a = abs(x);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  void run() {
    const std::size_t t = std::min(rows(), cols());
    for (std::size_t k = 0; k < t; ++k) {
      for (;;) {
        std::size_t pi, pj;
        if (!find_pivot(k, pi, pj)) return;  // trailing submatrix is zero
        swap_rows(k, pi);
        swap_cols(k, pj);
        if (d.at(k, k) < 0) negate_row(k);

        bool col_done = clear_column(k);
        bool row_done = clear_row(k);
        if (!col_done || !row_done) continue;  // a smaller pivot appeared

        // Pivot divides its row and column; force it to divide the rest of
        // the submatrix so the diagonal ends up a divisibility chain.
        const Int& pivot = d.at(k, k);
        bool dirty = false;
        for (std::size_t i = k + 1; i < rows() && !dirty; ++i)
          for (std::size_t j = k + 1; j < cols() && !dirty; ++j)
            if (d.at(i, j) % pivot != 0) {
              row_axpy(k, i, Int(-1));  // pull row i into the working row
              dirty = true;
            }
        if (!dirty) break;
      }
    }
  }
};

SmithResult eliminate(const Matrix& m, bool parallel) {
  Eliminator e(m, parallel);
  e.run();
  return SmithResult{std::move(e.u), std::move(e.d), std::move(e.v),
                     std::move(e.u_inv), std::move(e.v_inv)};
}

}  // namespace

SmithResult smith_normal_form(const Matrix& m) { return eliminate(m, true); }

SmithResult smith_normal_form_serial(const Matrix& m) {
  return eliminate(m, false);
}

std::vector<Int> invariant_factors(const Matrix& m) {
  SmithResult s = smith_normal_form(m);
  std::vector<Int> f;
  for (std::size_t k = 0; k < std::min(m.rows(), m.cols()); ++k) {
    if (s.d.at(k, k) == 0) break;
    f.push_back(s.d.at(k, k));
  }
  return f;
}

Matrix kernel_lattice(const Matrix& m) {
  SmithResult s = smith_normal_form(m);
  std::size_t r = 0;
  while (r < std::min(m.rows(), m.cols()) && s.d.at(r, r) != 0) ++r;
  Matrix k(m.cols(), m.cols() - r);
  for (std::size_t j = r; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i)
      k.at(i, j - r) = s.v.at(i, j);
  return k;
}

Matrix lattice_basis(const Matrix& gens) {
  SmithResult s = smith_normal_form(gens);
  std::size_t r = 0;
  while (r < std::min(gens.rows(), gens.cols()) && s.d.at(r, r) != 0) ++r;
  // gens * v = u_inv * d, whose first r columns are independent and span the
  // same lattice as the columns of gens.
  Matrix mv = gens * s.v;
  Matrix b(gens.rows(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < gens.rows(); ++i) b.at(i, j) = mv.at(i, j);
  return b;
}

std::optional<std::vector<Int>> solve_lattice(const Matrix& gens,
                                              const std::vector<Int>& v) {
  SmithResult s = smith_normal_form(gens);
  std::vector<Int> w = s.u * v;
  std::size_t r = std::min(gens.rows(), gens.cols());
  std::vector<Int> z(gens.cols());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < r && s.d.at(i, i) != 0) {
      if (w[i] % s.d.at(i, i) != 0) return std::nullopt;
      z[i] = w[i] / s.d.at(i, i);
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v * z;
}

bool in_lattice(const Matrix& gens, const std::vector<Int>& v) {
  return solve_lattice(gens, v).has_value();
}

}  // namespace tdual
