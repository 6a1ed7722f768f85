#include <random>

#include "doctest.h"
#include "tdual/gysin.hpp"
#include "tdual/torus.hpp"

using namespace tdual;

namespace {

bool twist_eq(const TwistMatrix& x, const TwistMatrix& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

TwistMatrix mul(const TwistMatrix& x, const TwistMatrix& y) {
  return TwistMatrix{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                     x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

const TwistMatrix kGens[] = {
    {0, 1, 1, 0},    // swap
    {-1, 0, 0, 1},   // negate first
    {1, 1, 0, 1},    // shear
    {1, -1, 0, 1},   // shear inverse
};

TwistMatrix random_word(std::mt19937_64& rng, int len) {
  TwistMatrix w{1, 0, 0, 1};
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < len; ++i) w = mul(w, kGens[pick(rng)]);
  return w;
}

}  // namespace

TEST_CASE("twist matrices are unimodular") {
  CHECK_NOTHROW(make_twist(1, 1, 0, 1));
  CHECK_NOTHROW(make_twist(0, 1, 1, 0));
  CHECK_THROWS_AS(make_twist(2, 0, 0, 1), BadParameters);
  CHECK_THROWS_AS(make_twist(1, 2, 2, 4), BadParameters);
  CHECK(make_twist(0, 1, 1, 0).det() == -1);
}

TEST_CASE("sigma is an involutive anti-homomorphism") {
  // frozen: sigma of the shear
  const TwistMatrix shear = make_twist(1, 1, 0, 1);
  const TwistMatrix s = sigma(shear);
  CHECK(twist_eq(s, TwistMatrix{1, 0, -1, 1}));
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 500; ++iter) {
    const TwistMatrix x = random_word(rng, 6);
    const TwistMatrix y = random_word(rng, 6);
    CHECK(twist_eq(sigma(sigma(x)), x));
    CHECK(twist_eq(sigma(mul(x, y)), mul(sigma(y), sigma(x))));
    CHECK(abs(sigma(x).det()) == 1);
  }
}

TEST_CASE("twisted action on chern pairs") {
  const SpaceModel s2 = make_space("s2");
  const GradedClass z = gen_class(s2, 2, 0);
  const TorusBundleClass f =
      make_torus_class(s2, scale(s2, 2, z), scale(s2, 5, z));
  // the swap exchanges the chern classes
  const TorusBundleClass swapped = act_twist(make_twist(0, 1, 1, 0), f);
  CHECK(swapped.c0.coords == std::vector<Int>{5});
  CHECK(swapped.c1.coords == std::vector<Int>{2});
  // negating the first circle negates the second chern class
  const TorusBundleClass neg = act_twist(make_twist(-1, 0, 0, 1), f);
  CHECK(neg.c0.coords == std::vector<Int>{2});
  CHECK(neg.c1.coords == std::vector<Int>{-5});
  // composition is contravariant through sigma
  std::mt19937_64 rng(808);
  for (int iter = 0; iter < 200; ++iter) {
    const TwistMatrix x = random_word(rng, 5);
    const TwistMatrix y = random_word(rng, 5);
    const TorusBundleClass lhs = act_twist(mul(x, y), f);
    const TorusBundleClass rhs = act_twist(y, act_twist(x, f));
    CHECK(classes_equal(s2, lhs.c0, rhs.c0));
    CHECK(classes_equal(s2, lhs.c1, rhs.c1));
  }
}

TEST_CASE("orbit classification over s2 is exact via the gcd") {
  const SpaceModel s2 = make_space("s2");
  const GradedClass z = gen_class(s2, 2, 0);
  const auto pair_of = [&](long m0, long m1) {
    return make_torus_class(s2, scale(s2, m0, z), scale(s2, m1, z));
  };
  CHECK(orbit_equivalent(s2, pair_of(1, 1), pair_of(0, 0)) ==
        OrbitAnswer::No);
  CHECK(orbit_equivalent(s2, pair_of(2, 4), pair_of(1, 0)) ==
        OrbitAnswer::No);

  std::vector<TwistMatrix> witness;
  CHECK(orbit_equivalent(s2, pair_of(2, 0), pair_of(0, 2), &witness) ==
        OrbitAnswer::Yes);
  TorusBundleClass replay = pair_of(2, 0);
  for (const TwistMatrix& w : witness) replay = act_twist(w, replay);
  CHECK(classes_equal(s2, replay.c0, scale(s2, 0, z)));
  CHECK(classes_equal(s2, replay.c1, scale(s2, 2, z)));

  witness.clear();
  CHECK(orbit_equivalent(s2, pair_of(1, 1), pair_of(1, -1), &witness) ==
        OrbitAnswer::Yes);
  replay = pair_of(1, 1);
  for (const TwistMatrix& w : witness) replay = act_twist(w, replay);
  CHECK(classes_equal(s2, replay.c0, z));
  CHECK(classes_equal(s2, replay.c1, scale(s2, -1, z)));

  // gcd zero means both classes vanish; only (0,0) sits in that orbit
  CHECK(orbit_equivalent(s2, pair_of(0, 0), pair_of(0, 0)) ==
        OrbitAnswer::Yes);
}

TEST_CASE("orbit search over other bases never reports a false no") {
  const SpaceModel t2 = make_space("torus:n=2");
  const GradedClass v = gen_class(t2, 2, 0);
  const auto pair_of = [&](long m0, long m1) {
    return make_torus_class(t2, scale(t2, m0, v), scale(t2, m1, v));
  };
  CHECK(orbit_equivalent(t2, pair_of(3, 0), pair_of(0, 3)) ==
        OrbitAnswer::Yes);
  // distinct-looking pairs outside the reach of short words stay Unknown
  const OrbitAnswer far = orbit_equivalent(t2, pair_of(1, 0), pair_of(0, 2));
  CHECK(far != OrbitAnswer::No);
}

TEST_CASE("zero splittings over s2") {
  const SpaceModel s2 = make_space("s2");
  const GradedClass z = gen_class(s2, 2, 0);
  // chern pair (z, z): exactly one generator, the thom family (o, -o)
  const auto splits = zero_splittings(s2, z, z);
  REQUIRE(splits.size() == 1);
  CHECK(splits[0].h0.degree == 3);
  CHECK(splits[0].h0.coords == std::vector<Int>{1});
  CHECK(splits[0].h1.coords == std::vector<Int>{-1});
  // trivial pair: every splitting of zero is trivial over s2
  CHECK(zero_splittings(s2, zero_class(s2, 2), zero_class(s2, 2)).empty());
  // nonzero euler class: no torus bundle at all
  const SpaceModel cp2 = make_space("cp:r=2");
  const GradedClass w = gen_class(cp2, 2, 0);
  CHECK_THROWS_AS(zero_splittings(cp2, w, w), ObstructionNonzero);
}

TEST_CASE("zero splittings include the pullback family") {
  // base with H^3 != 0: the pullback family contributes one generator per
  // H^3 generator, beyond the thom family
  const SpaceModel t3 = make_space("torus:n=3");
  const auto splits =
      zero_splittings(t3, zero_class(t3, 2), zero_class(t3, 2));
  REQUIRE(splits.size() == 1);  // (pi_0^* vol, -pi_1^* vol), thom pair trivial
  CHECK(splits[0].h0.degree == 3);
  CHECK(!splits[0].h0.coords.empty());
}

TEST_CASE("iterated duality depends on the splitting") {
  const SpaceModel s2 = make_space("s2");
  const GradedClass z = gen_class(s2, 2, 0);
  const auto splits = zero_splittings(s2, z, z);
  REQUIRE(splits.size() == 1);
  const GysinResult model = gysin_cohomology(make_bundle(s2, z));
  const Splitting trivial{
      GradedClass{3, std::vector<Int>(model.group(3).gen_count(), 0)},
      GradedClass{3, std::vector<Int>(model.group(3).gen_count(), 0)}};

  const IteratedDual d0 = iterated_dual(s2, z, z, trivial);
  CHECK(class_is_zero(s2, d0.c_hat0));
  CHECK(class_is_zero(s2, d0.c_hat1));

  const IteratedDual d1 = iterated_dual(s2, z, z, splits[0]);
  CHECK(d1.c_hat0.coords == std::vector<Int>{-1});
  CHECK(d1.c_hat1.coords == std::vector<Int>{1});

  // the two duals are genuinely different torus bundles
  CHECK(orbit_equivalent(s2, make_torus_class(s2, d0.c_hat0, d0.c_hat1),
                         make_torus_class(s2, d1.c_hat0, d1.c_hat1)) ==
        OrbitAnswer::No);

  // dual fluxes integrate back to minus the original chern classes
  const GysinResult dual0 = gysin_cohomology(make_bundle(s2, d1.c_hat0));
  const GradedClass t_hat0 = pushforward(dual0, d1.split_hat.h0);
  CHECK(t_hat0.coords == std::vector<Int>{-1});  // -c1 = -z
  const GysinResult dual1 = gysin_cohomology(make_bundle(s2, d1.c_hat1));
  const GradedClass t_hat1 = pushforward(dual1, d1.split_hat.h1);
  CHECK(t_hat1.coords == std::vector<Int>{-1});  // -c0 = -z
}

TEST_CASE("iterated duality of a flat torus bundle with flux") {
  // trivial chern classes, splitting fluxes integrating to 3 and -2:
  // the duals pick up chern classes -3 and 2
  const SpaceModel sg = make_space("surface:g=1");
  const GradedClass c0 = zero_class(sg, 2);
  const GysinResult model = gysin_cohomology(make_bundle(sg, c0));
  REQUIRE(model.group(3).gen_count() == 1);
  const Int unit = pushforward(model, GradedClass{3, {1}}).coords.at(0);
  REQUIRE(abs(unit) == 1);
  const auto flux = [&](long n) { return GradedClass{3, {n * unit}}; };
  const Splitting split{flux(3), flux(-2)};
  const IteratedDual d = iterated_dual(sg, c0, c0, split);
  CHECK(d.c_hat0.coords == std::vector<Int>{-3});
  CHECK(d.c_hat1.coords == std::vector<Int>{2});
}
