#include "tdual/space.hpp"

#include <algorithm>
#include <sstream>

namespace tdual {
namespace {

const AbGroup kTrivial{};
const std::vector<std::string> kNoNames{};

std::string subscripted(const std::string& stem, std::size_t i) {
  std::ostringstream os;
  os << stem << "_" << i;
  return os.str();
}

std::string power_name(const std::string& stem, long l) {
  if (l == 1) return stem;
  std::ostringstream os;
  os << stem << "^" << l;
  return os.str();
}

// --- construction-time validation -----------------------------------------

Int tensor_entry(const SpaceModel& s, long p, long q, std::size_t i,
                 std::size_t j, std::size_t k) {
  auto it = s.cup_tensors.find({p, q});
  if (it == s.cup_tensors.end()) return 0;
  return it->second.at(k, i * s.group(q).gen_count() + j);
}

void check_graded_commutativity(const SpaceModel& s) {
  for (long p = 1; p <= s.dimension; ++p)
    for (long q = 1; p + q <= s.dimension; ++q) {
      long n = p + q;
      std::vector<Int> orders = s.group(n).gen_orders();
      bool flip = (p % 2) && (q % 2);
      for (std::size_t i = 0; i < s.group(p).gen_count(); ++i)
        for (std::size_t j = 0; j < s.group(q).gen_count(); ++j)
          for (std::size_t k = 0; k < orders.size(); ++k) {
            Int lhs = tensor_entry(s, p, q, i, j, k);
            Int rhs = tensor_entry(s, q, p, j, i, k);
            Int diff = flip ? Int(lhs + rhs) : Int(lhs - rhs);
            if (orders[k] != 0) diff %= orders[k];
            if (diff != 0)
              throw std::logic_error("cup tensor not graded-commutative: " +
                                     s.descriptor);
          }
    }
}

void check_associativity(const SpaceModel& s) {
  for (long p = 1; p <= s.dimension; ++p)
    for (long q = 1; q <= s.dimension; ++q)
      for (long r = 1; p + q + r <= s.dimension; ++r)
        for (std::size_t i = 0; i < s.group(p).gen_count(); ++i)
          for (std::size_t j = 0; j < s.group(q).gen_count(); ++j)
            for (std::size_t k = 0; k < s.group(r).gen_count(); ++k) {
              GradedClass a = gen_class(s, p, i);
              GradedClass b = gen_class(s, q, j);
              GradedClass c = gen_class(s, r, k);
              GradedClass lhs = cup_total(s, cup_total(s, a, b), c);
              GradedClass rhs = cup_total(s, a, cup_total(s, b, c));
              if (!classes_equal(s, lhs, rhs))
                throw std::logic_error("cup tensor not associative: " +
                                       s.descriptor);
            }
}

void check_orientation_pairing(const SpaceModel& s) {
  if (!s.oriented) return;
  const AbGroup& top = s.group(s.dimension);
  if (top.rank() != 1 || !top.is_free())
    throw std::logic_error("oriented model needs H^dim = Z: " + s.descriptor);
  for (long p = 0; p <= s.dimension; ++p) {
    long q = s.dimension - p;
    long np = s.group(p).rank();
    long nq = s.group(q).rank();
    if (np != nq)
      throw std::logic_error("pairing ranks differ: " + s.descriptor);
    if (np == 0) continue;
    Matrix pairing(np, nq);
    for (long i = 0; i < np; ++i)
      for (long j = 0; j < nq; ++j) {
        GradedClass prod =
            cup_total(s, gen_class(s, p, i), gen_class(s, q, j));
        pairing.at(i, j) = prod.coords.empty() ? Int(0) : prod.coords[0];
      }
    Int d = det(pairing);
    if (d != 1 && d != -1)
      throw std::logic_error("orientation pairing not unimodular: " +
                             s.descriptor);
  }
}

void check_unit_law(const SpaceModel& s) {
  if (s.group(0) != AbGroup::free(1))
    throw std::logic_error("catalog models are connected: " + s.descriptor);
  for (long q = 0; q <= s.dimension; ++q)
    for (std::size_t j = 0; j < s.group(q).gen_count(); ++j) {
      GradedClass g = gen_class(s, q, j);
      GradedClass one = gen_class(s, 0, 0);
      if (!classes_equal(s, cup_total(s, one, g), g) ||
          !classes_equal(s, cup_total(s, g, one), g))
        throw std::logic_error("unit law fails: " + s.descriptor);
    }
}

void validate(const SpaceModel& s) {
  check_unit_law(s);
  check_graded_commutativity(s);
  check_associativity(s);
  check_orientation_pairing(s);
}

// --- catalog ---------------------------------------------------------------

void set_product(SpaceModel& s, long p, long q, std::size_t i, std::size_t j,
                 const std::vector<Int>& result) {
  auto key = std::make_pair(p, q);
  auto it = s.cup_tensors.find(key);
  if (it == s.cup_tensors.end()) {
    Matrix t(s.group(p + q).gen_count(),
             s.group(p).gen_count() * s.group(q).gen_count());
    it = s.cup_tensors.emplace(key, std::move(t)).first;
  }
  std::size_t col = i * s.group(q).gen_count() + j;
  for (std::size_t k = 0; k < result.size(); ++k)
    it->second.at(k, col) = result[k];
}

SpaceModel make_point() {
  SpaceModel s;
  s.descriptor = "pt";
  s.dimension = 0;
  s.groups_by_degree = {AbGroup::free(1)};
  s.gen_names = {{"1"}};
  return s;
}

SpaceModel make_sphere(long dim, const std::string& top_name) {
  SpaceModel s;
  s.descriptor = dim == 1 ? "s1" : (dim == 2 ? "s2" : "s3");
  s.dimension = dim;
  s.groups_by_degree.assign(dim + 1, AbGroup::trivial());
  s.gen_names.assign(dim + 1, {});
  s.groups_by_degree[0] = AbGroup::free(1);
  s.gen_names[0] = {"1"};
  s.groups_by_degree[dim] = AbGroup::free(1);
  s.gen_names[dim] = {top_name};
  return s;
}

SpaceModel make_surface(long g) {
  SpaceModel s;
  std::ostringstream os;
  os << "surface:g=" << g;
  s.descriptor = os.str();
  s.dimension = 2;
  s.groups_by_degree = {AbGroup::free(1), AbGroup::free(2 * g),
                        AbGroup::free(1)};
  std::vector<std::string> h1;
  for (long i = 1; i <= g; ++i) {
    h1.push_back(subscripted("a", i));
    h1.push_back(subscripted("b", i));
  }
  s.gen_names = {{"1"}, h1, {"vol"}};
  for (long i = 0; i < g; ++i) {
    set_product(s, 1, 1, 2 * i, 2 * i + 1, {Int(1)});
    set_product(s, 1, 1, 2 * i + 1, 2 * i, {Int(-1)});
  }
  return s;
}

SpaceModel make_projective(long r) {
  SpaceModel s;
  std::ostringstream os;
  os << "cp:r=" << r;
  s.descriptor = os.str();
  s.dimension = 2 * r;
  s.groups_by_degree.assign(2 * r + 1, AbGroup::trivial());
  s.gen_names.assign(2 * r + 1, {});
  s.groups_by_degree[0] = AbGroup::free(1);
  s.gen_names[0] = {"1"};
  for (long l = 1; l <= r; ++l) {
    s.groups_by_degree[2 * l] = AbGroup::free(1);
    s.gen_names[2 * l] = {power_name("z", l)};
  }
  for (long l = 1; l <= r; ++l)
    for (long m = 1; l + m <= r; ++m) set_product(s, 2 * l, 2 * m, 0, 0, {Int(1)});
  return s;
}

SpaceModel make_torus(long n) {
  SpaceModel s;
  std::ostringstream os;
  os << "torus:n=" << n;
  s.descriptor = os.str();
  s.dimension = n;
  s.groups_by_degree.assign(n + 1, AbGroup::trivial());
  s.gen_names.assign(n + 1, {});
  s.groups_by_degree[0] = AbGroup::free(1);
  s.gen_names[0] = {"1"};
  if (n == 1) {
    s.groups_by_degree[1] = AbGroup::free(1);
    s.gen_names[1] = {"u_1"};
    return s;
  }
  if (n == 2) {
    s.groups_by_degree[1] = AbGroup::free(2);
    s.gen_names[1] = {"u_1", "u_2"};
    s.groups_by_degree[2] = AbGroup::free(1);
    s.gen_names[2] = {"vol"};
    set_product(s, 1, 1, 0, 1, {Int(1)});
    set_product(s, 1, 1, 1, 0, {Int(-1)});
    return s;
  }
  // n == 3: exterior algebra on u_1, u_2, u_3
  s.groups_by_degree[1] = AbGroup::free(3);
  s.gen_names[1] = {"u_1", "u_2", "u_3"};
  s.groups_by_degree[2] = AbGroup::free(3);
  s.gen_names[2] = {"u_1u_2", "u_1u_3", "u_2u_3"};
  s.groups_by_degree[3] = AbGroup::free(1);
  s.gen_names[3] = {"vol"};
  // u_i cup u_j, i < j, maps to the basis 2-form; wedge signs throughout
  auto pair_index = [](std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j == 1 ? 0 : 1;
    return 2;  // (1,2)
  };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      std::vector<Int> v(3, Int(0));
      v[pair_index(std::min(i, j), std::max(i, j))] = i < j ? 1 : -1;
      set_product(s, 1, 1, i, j, v);
    }
  // u_k cup (u_i wedge u_j): sign of the permutation (k, i, j)
  struct Triple { std::size_t k, i, j; long sign; };
  const std::vector<Triple> triples = {
      {0, 1, 2, 1}, {1, 0, 2, -1}, {2, 0, 1, 1}};
  for (const auto& t : triples) {
    std::size_t two = pair_index(t.i, t.j);
    set_product(s, 1, 2, t.k, two, {Int(t.sign)});
    set_product(s, 2, 1, two, t.k, {Int(t.sign)});  // even shuffle, same sign
  }
  return s;
}

}  // namespace

const AbGroup& SpaceModel::group(long degree) const {
  if (degree < 0 || degree > dimension) return kTrivial;
  return groups_by_degree[degree];
}

const std::vector<std::string>& SpaceModel::names(long degree) const {
  if (degree < 0 || degree > dimension) return kNoNames;
  return gen_names[degree];
}

SpaceModel lens_like_model(const Int& k, long r) {
  if (k < 2 || r < 1) throw BadParameters("lens-like model needs k >= 2, r >= 1");
  SpaceModel s;
  std::ostringstream os;
  os << "lens:k=" << k.get_str() << ",r=" << r;
  s.descriptor = os.str();
  s.dimension = 2 * r + 1;
  s.fundamental_degree = s.dimension;
  s.groups_by_degree.assign(s.dimension + 1, AbGroup::trivial());
  s.gen_names.assign(s.dimension + 1, {});
  s.groups_by_degree[0] = AbGroup::free(1);
  s.gen_names[0] = {"1"};
  for (long l = 1; l <= r; ++l) {
    s.groups_by_degree[2 * l] = AbGroup::cyclic(k);
    s.gen_names[2 * l] = {power_name("x", l)};
  }
  s.groups_by_degree[s.dimension] = AbGroup::free(1);
  s.gen_names[s.dimension] = {"o"};
  for (long l = 1; l <= r; ++l)
    for (long m = 1; l + m <= r; ++m) set_product(s, 2 * l, 2 * m, 0, 0, {Int(1)});
  // The ring structure is only asserted by the source material for prime k.
  for (Int p = 2; p * p <= k; ++p)
    if (k % p == 0 && k != p) s.ring_extrapolated = true;
  validate(s);
  return s;
}

SpaceModel make_space(const std::string& descriptor) {
  auto parse_long = [&](const std::string& text) -> std::optional<long> {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(text, &pos);
    } catch (...) {
      return std::nullopt;
    }
    if (pos != text.size()) return std::nullopt;
    return v;
  };

  SpaceModel s;
  if (descriptor == "pt") {
    s = make_point();
  } else if (descriptor == "s1") {
    s = make_sphere(1, "u");
  } else if (descriptor == "s2") {
    s = make_sphere(2, "z");
  } else if (descriptor == "s3") {
    s = make_sphere(3, "o");
  } else if (descriptor.rfind("surface:g=", 0) == 0) {
    auto g = parse_long(descriptor.substr(10));
    if (!g || *g < 0) throw UnknownDescriptor("bad descriptor: " + descriptor);
    s = make_surface(*g);
  } else if (descriptor.rfind("cp:r=", 0) == 0) {
    auto r = parse_long(descriptor.substr(5));
    if (!r || *r < 1) throw UnknownDescriptor("bad descriptor: " + descriptor);
    s = make_projective(*r);
  } else if (descriptor.rfind("torus:n=", 0) == 0) {
    auto n = parse_long(descriptor.substr(8));
    if (!n || *n < 1 || *n > 3)
      throw UnknownDescriptor("bad descriptor: " + descriptor);
    s = make_torus(*n);
  } else if (descriptor.rfind("lens:k=", 0) == 0) {
    std::size_t comma = descriptor.find(",r=");
    if (comma == std::string::npos)
      throw UnknownDescriptor("bad descriptor: " + descriptor);
    auto k = parse_long(descriptor.substr(7, comma - 7));
    auto r = parse_long(descriptor.substr(comma + 3));
    if (!k || !r || *k < 2 || *r < 1)
      throw UnknownDescriptor("bad descriptor: " + descriptor);
    return lens_like_model(*k, *r);  // validates itself
  } else {
    throw UnknownDescriptor("bad descriptor: " + descriptor);
  }
  s.fundamental_degree = s.dimension;
  validate(s);
  return s;
}

GradedClass zero_class(const SpaceModel& space, long degree) {
  return GradedClass{degree,
                     std::vector<Int>(space.group(degree).gen_count(), Int(0))};
}

GradedClass gen_class(const SpaceModel& space, long degree, std::size_t i) {
  GradedClass g = zero_class(space, degree);
  g.coords.at(i) = 1;
  return g;
}

GradedClass make_class(const SpaceModel& space, long degree,
                       std::vector<Int> coords) {
  if (coords.size() != space.group(degree).gen_count())
    throw BadParameters("coordinate count does not match H^" +
                        std::to_string(degree) + " of " + space.descriptor);
  return GradedClass{degree, reduce_coords(std::move(coords),
                                           space.group(degree).gen_orders())};
}

GradedClass add(const SpaceModel& space, const GradedClass& x,
                const GradedClass& y) {
  if (x.degree != y.degree)
    throw BadParameters("adding classes of different degree");
  std::vector<Int> c(x.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords[i] + y.coords[i];
  return make_class(space, x.degree, std::move(c));
}

GradedClass scale(const SpaceModel& space, const Int& n, const GradedClass& x) {
  std::vector<Int> c(x.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = n * x.coords[i];
  return make_class(space, x.degree, std::move(c));
}

bool class_is_zero(const SpaceModel& space, const GradedClass& x) {
  GradedClass r = make_class(space, x.degree, x.coords);
  return std::all_of(r.coords.begin(), r.coords.end(),
                     [](const Int& v) { return v == 0; });
}

bool classes_equal(const SpaceModel& space, const GradedClass& x,
                   const GradedClass& y) {
  if (x.degree != y.degree) return false;
  return make_class(space, x.degree, x.coords).coords ==
         make_class(space, y.degree, y.coords).coords;
}

GradedClass cup_total(const SpaceModel& space, const GradedClass& x,
                      const GradedClass& y) {
  long n = x.degree + y.degree;
  if (n > space.dimension) return zero_class(space, n);
  if (x.degree == 0) return scale(space, x.coords.at(0), y);
  if (y.degree == 0) return scale(space, y.coords.at(0), x);
  auto it = space.cup_tensors.find({x.degree, y.degree});
  if (it == space.cup_tensors.end()) return zero_class(space, n);
  const Matrix& t = it->second;
  std::vector<Int> out(space.group(n).gen_count(), Int(0));
  std::size_t nq = space.group(y.degree).gen_count();
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] == 0) continue;
    for (std::size_t j = 0; j < y.coords.size(); ++j) {
      if (y.coords[j] == 0) continue;
      Int scalar = x.coords[i] * y.coords[j];
      for (std::size_t k = 0; k < out.size(); ++k)
        out[k] += scalar * t.at(k, i * nq + j);
    }
  }
  return make_class(space, n, std::move(out));
}

GradedClass cup(const SpaceModel& space, const GradedClass& x,
                const GradedClass& y) {
  if (x.degree + y.degree > space.dimension)
    throw DegreeOverflow("cup product lands above the dimension of " +
                         space.descriptor);
  return cup_total(space, x, y);
}

}  // namespace tdual
