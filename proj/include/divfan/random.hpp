#pragma once

#include <random>
#include <vector>

#include "divfan/number_field.hpp"
#include "divfan/polyhedron.hpp"

namespace divfan {

/// Seeded generator of small random exact objects for property checks.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  Rational rational(long lo = -5, long hi = 5, long maxden = 3) {
    return make_rational(integer(lo * maxden, hi * maxden), integer(1, maxden));
  }
  FieldElement element(const FieldRef& f) {
    std::vector<Rational> c;
    for (int i = 0; i < f->degree(); ++i) c.push_back(rational());
    return FieldElement(f, c);
  }
  LatticeVector lattice(std::size_t n, long lo = -3, long hi = 3) {
    LatticeVector v = LatticeVector::zero(n);
    for (std::size_t i = 0; i < n; ++i) v.c[i] = integer(lo, hi);
    return v;
  }
  LatticeVector rational_point(std::size_t n) {
    LatticeVector v = LatticeVector::zero(n);
    for (std::size_t i = 0; i < n; ++i) v.c[i] = rational(-3, 3, 2);
    return v;
  }
  DualVector dual(std::size_t n, long lo = -3, long hi = 3) {
    DualVector v = DualVector::zero(n);
    for (std::size_t i = 0; i < n; ++i) v.c[i] = integer(lo, hi);
    return v;
  }
  /// Pointed cone with up to three random integer generators (possibly {0}).
  Cone pointed_cone(std::size_t n) {
    for (;;) {
      std::vector<LatticeVector> g;
      long k = integer(0, static_cast<long>(n) + 1);
      for (long i = 0; i < k; ++i) g.push_back(lattice(n, -2, 2));
      Cone c = Cone::from_generators(n, g);
      if (c.is_pointed()) return c;
    }
  }
  Polyhedron polyhedron(std::size_t n) {
    Cone t = pointed_cone(n);
    std::vector<LatticeVector> vs;
    long k = integer(1, 3);
    for (long i = 0; i < k; ++i) vs.push_back(rational_point(n));
    return Polyhedron::make(vs, t);
  }
  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace divfan
