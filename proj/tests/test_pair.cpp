#include <random>

#include "doctest.h"
#include "tdual/pair.hpp"
#include "tdual/snf.hpp"

using namespace tdual;

TEST_CASE("normal form validation") {
  const SpaceModel cp2 = make_space("cp:r=2");
  const GradedClass z = gen_class(cp2, 2, 0);
  CHECK_THROWS_AS(make_pair(cp2, z, z, zero_class(cp2, 3)),
                  ObstructionNonzero);
  CHECK_NOTHROW(make_pair(cp2, z, zero_class(cp2, 2), zero_class(cp2, 3)));
  const SpaceModel s3 = make_space("s3");
  CHECK_THROWS_AS(
      make_pair(s3, GradedClass{1, {}}, zero_class(s3, 2), zero_class(s3, 3)),
      BadParameters);
  CHECK_THROWS_AS(make_pair(s3, zero_class(s3, 2), zero_class(s3, 2),
                            GradedClass{3, {1, 2}}),
                  BadParameters);
}

TEST_CASE("dualize is the literal exchange") {
  const SpaceModel t3 = make_space("torus:n=3");
  const GradedClass c = make_class(t3, 2, {2, 0, 1});
  const GradedClass t = make_class(t3, 2, {0, 3, 0});
  const GradedClass b = make_class(t3, 3, {4});
  const Pair p = make_pair(t3, c, t, b);
  const Pair d = dualize(p);
  CHECK(d.c.coords == std::vector<Int>({0, -3, 0}));
  CHECK(d.t.coords == std::vector<Int>({-2, 0, -1}));
  CHECK(d.b.coords == std::vector<Int>({4}));
  const Pair dd = dualize(d);
  CHECK(dd.c.coords == p.c.coords);
  CHECK(dd.t.coords == p.t.coords);
  CHECK(dd.b.coords == p.b.coords);
}

TEST_CASE("obstruction closure and equivariance on random pairs") {
  const std::vector<std::string> bases = {"s3", "surface:g=2", "torus:n=3",
                                          "lens:k=3,r=2", "cp:r=2"};
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> coeff(-4, 4);
  for (int iter = 0; iter < 200; ++iter) {
    const SpaceModel m = make_space(bases[iter % bases.size()]);
    const auto rand_class = [&](long degree) {
      std::vector<Int> v(m.group(degree).gen_count());
      for (Int& x : v) x = coeff(rng);
      return make_class(m, degree, std::move(v));
    };
    const GradedClass c = rand_class(2);
    GradedClass t = zero_class(m, 2);
    for (int tries = 0; tries < 30; ++tries) {
      GradedClass cand = rand_class(2);
      if (class_is_zero(m, cup_total(m, c, cand))) {
        t = std::move(cand);
        break;
      }
    }
    const Pair p = make_pair(m, c, t, rand_class(3));
    const Pair d = dualize(p);
    CHECK(class_is_zero(m, cup_total(m, d.c, d.t)));
    const Pair dd = dualize(d);
    CHECK(classes_equal(m, dd.c, p.c));
    CHECK(classes_equal(m, dd.t, p.t));
    CHECK(classes_equal(m, dd.b, p.b));
    const GradedClass beta = rand_class(3);
    const Pair lhs = dualize(act_h3(p, beta));
    const Pair rhs = act_h3(dualize(p), beta);
    CHECK(classes_equal(m, lhs.c, rhs.c));
    CHECK(classes_equal(m, lhs.t, rhs.t));
    CHECK(classes_equal(m, lhs.b, rhs.b));
  }
}

TEST_CASE("h3 action shape checks") {
  const SpaceModel t3 = make_space("torus:n=3");
  const Pair p = make_pair(t3, zero_class(t3, 2), zero_class(t3, 2),
                           zero_class(t3, 3));
  CHECK_THROWS_AS(act_h3(p, GradedClass{2, {1, 0, 0}}), BaseMismatch);
  CHECK_THROWS_AS(act_h3(p, GradedClass{3, {1, 2}}), BaseMismatch);
  const Pair q = act_h3(p, make_class(t3, 3, {7}));
  CHECK(q.b.coords == std::vector<Int>{7});
  CHECK(classes_equal(t3, q.c, p.c));
}

TEST_CASE("indeterminacy lattice over the 3-torus") {
  const SpaceModel t3 = make_space("torus:n=3");
  const GradedClass c = make_class(t3, 2, {2, 0, 0});
  const GradedClass zero2 = zero_class(t3, 2);
  // c cup H^1 = 2 H^3: b shifts by even multiples of the volume class
  const Matrix lat = indeterminacy_lattice(t3, c, zero2);
  CHECK(in_lattice(lat, {2}));
  CHECK(!in_lattice(lat, {1}));
  // adding t = 3-part makes the full H^3 reachable: gcd(2,3) = 1
  const GradedClass t = make_class(t3, 2, {0, 3, 0});
  const Matrix both = indeterminacy_lattice(t3, c, t);
  CHECK(in_lattice(both, {1}));
}

TEST_CASE("pair isomorphism is equality modulo the indeterminacy") {
  const SpaceModel t3 = make_space("torus:n=3");
  const GradedClass c = make_class(t3, 2, {2, 0, 0});
  const GradedClass t0 = zero_class(t3, 2);
  const auto pair_b = [&](long b) {
    return make_pair(t3, c, t0, make_class(t3, 3, {b}));
  };
  CHECK(pairs_isomorphic(pair_b(0), pair_b(2)));
  CHECK(pairs_isomorphic(pair_b(1), pair_b(-3)));
  CHECK(!pairs_isomorphic(pair_b(0), pair_b(1)));
  // different c is never isomorphic
  const Pair other = make_pair(t3, make_class(t3, 2, {1, 0, 0}), t0,
                               make_class(t3, 3, {0}));
  CHECK(!pairs_isomorphic(pair_b(0), other));

  // trivial indeterminacy separates every b on s3
  const SpaceModel s3 = make_space("s3");
  const auto s3_pair = [&](long b) {
    return make_pair(s3, zero_class(s3, 2), zero_class(s3, 2),
                     make_class(s3, 3, {b}));
  };
  CHECK(pairs_isomorphic(s3_pair(5), s3_pair(5)));
  CHECK(!pairs_isomorphic(s3_pair(5), s3_pair(4)));

  // mismatched bases are a usage error
  const Pair a = s3_pair(0);
  const Pair b = make_pair(make_space("torus:n=3"), zero_class(t3, 2),
                           zero_class(t3, 2), zero_class(t3, 3));
  CHECK_THROWS_AS(pairs_isomorphic(a, b), BaseMismatch);
}

TEST_CASE("equivariance moves the class by exactly beta") {
  const SpaceModel s3 = make_space("s3");
  const Pair p = make_pair(s3, zero_class(s3, 2), zero_class(s3, 2),
                           make_class(s3, 3, {1}));
  const Pair moved = act_h3(p, make_class(s3, 3, {-1}));
  CHECK(class_is_zero(s3, moved.b));
  CHECK(!pairs_isomorphic(p, moved));  // I = 0 here, so the action is free
}

TEST_CASE("pair class carries the indeterminacy matrix") {
  const SpaceModel t3 = make_space("torus:n=3");
  const Pair p = make_pair(t3, make_class(t3, 2, {2, 0, 0}),
                           zero_class(t3, 2), zero_class(t3, 3));
  const PairClass pc = make_pair_class(p);
  CHECK(in_lattice(pc.indeterminacy, {2}));
  CHECK(!in_lattice(pc.indeterminacy, {1}));
}
