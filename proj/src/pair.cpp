#include "tdual/pair.hpp"

#include "tdual/errors.hpp"
#include "tdual/snf.hpp"

namespace tdual {

namespace {

GradedClass checked(const SpaceModel& base, const GradedClass& x,
                    long degree) {
  if (x.degree != degree) {
    throw BadParameters("pair component has degree " +
                        std::to_string(x.degree) + ", expected " +
                        std::to_string(degree));
  }
  return make_class(base, degree, x.coords);
}

}  // namespace

Pair make_pair(const SpaceModel& base, const GradedClass& c,
               const GradedClass& t, const GradedClass& b) {
  Pair p;
  p.base = base;
  p.c = checked(base, c, 2);
  p.t = checked(base, t, 2);
  p.b = checked(base, b, 3);
  if (!class_is_zero(base, cup_total(base, p.c, p.t))) {
    throw ObstructionNonzero("c cup t != 0: no pair has this normal form");
  }
  return p;
}

Matrix indeterminacy_lattice(const SpaceModel& base, const GradedClass& c,
                             const GradedClass& t) {
  const std::size_t h3 = base.group(3).gen_count();
  const std::size_t h1 = base.group(1).gen_count();
  std::vector<std::vector<Int>> cols;
  for (std::size_t j = 0; j < h1; ++j) {
    const GradedClass gamma = gen_class(base, 1, j);
    cols.push_back(cup_total(base, c, gamma).coords);
    cols.push_back(cup_total(base, t, gamma).coords);
  }
  return from_columns(h3, cols);
}

PairClass make_pair_class(const Pair& p) {
  return PairClass{p, indeterminacy_lattice(p.base, p.c, p.t)};
}

Pair dualize(const Pair& p) {
  return make_pair(p.base, scale(p.base, -1, p.t), scale(p.base, -1, p.c),
                   p.b);
}

Pair act_h3(const Pair& p, const GradedClass& beta) {
  if (beta.degree != 3 ||
      beta.coords.size() != p.base.group(3).gen_count()) {
    throw BaseMismatch("beta is not a degree-3 class of the pair's base");
  }
  Pair q = p;
  q.b = add(p.base, p.b, beta);
  return q;
}

bool pairs_isomorphic(const Pair& p, const Pair& q) {
  if (p.base.descriptor != q.base.descriptor) {
    throw BaseMismatch("pairs live over different bases: " +
                       p.base.descriptor + " vs " + q.base.descriptor);
  }
  if (!classes_equal(p.base, p.c, q.c) || !classes_equal(p.base, p.t, q.t)) {
    return false;
  }
  const AbGroup& h3 = p.base.group(3);
  if (h3.gen_count() == 0) return true;
  std::vector<Int> diff(h3.gen_count());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = p.b.coords[i] - q.b.coords[i];
  }
  // b - b' must lie in I; relation columns make the test one in the group.
  const Matrix span =
      indeterminacy_lattice(p.base, p.c, p.t).augmented(h3.relations());
  return in_lattice(span, diff);
}

}  // namespace tdual
