#include <random>

#include "doctest.h"
#include "tdual/snf.hpp"

using namespace tdual;

namespace {

// Independent determinant oracle: cofactor expansion along the first row.
Int det_cofactor(const Matrix& m) {
  const std::size_t n = m.rows();
  REQUIRE(m.cols() == n);
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, w = 0; c < n; ++c)
        if (c != j) minor.at(r - 1, w++) = m.at(r, c);
    const Int term = m.at(0, j) * det_cofactor(minor);
    total += (j % 2 == 0) ? term : Int(-term);
  }
  return total;
}

// Independent invariant-factor oracle: d1 * ... * dk = gcd of all k x k
// minors.  Feasible up to 4 x 4.
Int minor_gcd(const Matrix& m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  Int g = 0;
  const auto choose = [&](auto&& self, std::vector<std::size_t>& idx,
                          std::size_t bound, std::size_t from,
                          std::size_t depth, auto&& leaf) -> void {
    if (depth == k) {
      leaf();
      return;
    }
    for (std::size_t v = from; v + (k - depth) <= bound; ++v) {
      idx[depth] = v;
      self(self, idx, bound, v + 1, depth + 1, leaf);
    }
  };
  choose(choose, rows, m.rows(), 0, 0, [&] {
    choose(choose, cols, m.cols(), 0, 0, [&] {
      Matrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          sub.at(i, j) = m.at(rows[i], cols[j]);
      g = gcd(g, det_cofactor(sub));
    });
  });
  return g;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, long bound) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long> entry(-bound, bound);
  Matrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
  return m;
}

void check_certificate(const Matrix& m, const SmithResult& s) {
  REQUIRE(s.d == s.u * m * s.v);
  REQUIRE(s.u * s.u_inv == Matrix::identity(m.rows()));
  REQUIRE(s.u_inv * s.u == Matrix::identity(m.rows()));
  REQUIRE(s.v * s.v_inv == Matrix::identity(m.cols()));
  REQUIRE(s.v_inv * s.v == Matrix::identity(m.cols()));
  REQUIRE(abs(det_cofactor(s.u)) == 1);
  REQUIRE(abs(det_cofactor(s.v)) == 1);
  Int prev = 0;
  for (std::size_t i = 0; i < s.d.rows(); ++i) {
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j) REQUIRE(s.d.at(i, j) == 0);
    if (i < s.d.cols()) {
      const Int& cur = s.d.at(i, i);
      REQUIRE(cur >= 0);
      if (prev == 0 && i > 0) REQUIRE(cur == 0);  // zeros only at the tail
      if (prev != 0) REQUIRE(cur % prev == 0);
      prev = cur;
    }
  }
}

}  // namespace

TEST_CASE("snf of a frozen matrix") {
  const Matrix m{{2, 4}, {6, 8}};
  const SmithResult s = smith_normal_form(m);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 4);
  check_certificate(m, s);
  const auto factors = invariant_factors(m);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0] == 2);
  CHECK(factors[1] == 4);
}

TEST_CASE("degenerate shapes") {
  CHECK(invariant_factors(Matrix(0, 3)).empty());
  CHECK(invariant_factors(Matrix(3, 0)).empty());
  CHECK(invariant_factors(Matrix(2, 2)).empty());  // zero matrix
  const SmithResult s = smith_normal_form(Matrix(0, 0));
  CHECK(s.d.rows() == 0);
  CHECK(s.d.cols() == 0);
}

TEST_CASE("invariant factors match the gcd-of-minors oracle") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    const Matrix m = random_matrix(rng, 4, 9);
    const SmithResult s = smith_normal_form(m);
    Int product = 1;
    std::size_t k = 0;
    const std::size_t cap = std::min(m.rows(), m.cols());
    while (k < cap && s.d.at(k, k) != 0) {
      product *= s.d.at(k, k);
      ++k;
      CHECK(minor_gcd(m, k) == product);
    }
    if (k < cap) CHECK(minor_gcd(m, k + 1) == 0);
  }
}

TEST_CASE("certificates hold on 1000 random matrices") {
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 1000; ++iter) {
    const Matrix m = random_matrix(rng, 8, 20);
    check_certificate(m, smith_normal_form(m));
  }
}

TEST_CASE("parallel kernel is bit-identical to the serial reference") {
  std::mt19937_64 rng(31337);
  for (int iter = 0; iter < 120; ++iter) {
    const Matrix m = random_matrix(rng, 12, 40);
    const SmithResult a = smith_normal_form(m);
    const SmithResult b = smith_normal_form_serial(m);
    REQUIRE(a.u == b.u);
    REQUIRE(a.d == b.d);
    REQUIRE(a.v == b.v);
    REQUIRE(a.u_inv == b.u_inv);
    REQUIRE(a.v_inv == b.v_inv);
  }
}

TEST_CASE("lattice helpers") {
  // kernel of (2 4): spanned by (2, -1)
  const Matrix m{{2, 4}};
  const Matrix k = kernel_lattice(m);
  REQUIRE(k.cols() == 1);
  CHECK(k.at(0, 0) * 2 + k.at(1, 0) * 4 == 0);
  CHECK(gcd(k.at(0, 0), k.at(1, 0)) == 1);

  const Matrix gens{{2, 0}, {0, 3}};
  CHECK(in_lattice(gens, {4, -3}));
  CHECK(!in_lattice(gens, {1, 0}));
  const auto sol = solve_lattice(gens, {6, 9});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == 3);
  CHECK((*sol)[1] == 3);
  CHECK(!solve_lattice(gens, {1, 1}).has_value());

  // lattice_basis collapses dependent generators
  const Matrix dep{{2, 4, 6}, {0, 0, 0}};
  const Matrix basis = lattice_basis(dep);
  REQUIRE(basis.cols() == 1);
  CHECK(abs(basis.at(0, 0)) == 2);
  CHECK(basis.at(1, 0) == 0);
}

TEST_CASE("matrix product has an exact Bareiss determinant") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    std::uniform_int_distribution<long> entry(-10, 10);
    const std::size_t n = dim(rng);
    Matrix a(n, n), b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) = entry(rng);
        b.at(i, j) = entry(rng);
      }
    CHECK(det(a) == det_cofactor(a));
    CHECK(det(a * b) == det(a) * det(b));
  }
}
