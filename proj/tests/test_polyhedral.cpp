#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "divfan/polyhedron.hpp"
#include "test_support.hpp"

using namespace divfan;
using divfan::testing::Gen;
using divfan::testing::q;

namespace {

LatticeVector lv(std::initializer_list<long> xs) {
  LatticeVector v;
  for (long x : xs) v.c.push_back(x);
  return v;
}
DualVector dv(std::initializer_list<long> xs) {
  DualVector v;
  for (long x : xs) v.c.push_back(x);
  return v;
}
Cone cone(std::size_t n, std::initializer_list<LatticeVector> g) { return Cone::from_generators(n, g); }
Cone quadrant() { return cone(2, {lv({1, 0}), lv({0, 1})}); }
Polyhedron interval(const char* a, const char* b) {
  return Polyhedron::make({LatticeVector{q(a)}, LatticeVector{q(b)}}, Cone::zero(1));
}
Polyhedron staircase() { return Polyhedron::make({lv({1, 0}), lv({0, 1})}, quadrant()); }

/// Independent membership oracle: x ∈ conv(V) + cone(R) iff x lies in a
/// simplex on at most n+1 generators (Carathéodory), found by exact solves.
bool vrep_contains(const Polyhedron& p, const LatticeVector& x) {
  if (p.is_empty()) return false;
  const std::size_t n = p.ambient_rank();
  struct G {
    linalg::Row v;
    bool point;
  };
  std::vector<G> gens;
  for (const auto& v : p.vertices()) gens.push_back({v.c, true});
  for (const auto& r : p.tail().rays()) gens.push_back({r.c, false});
  for (const auto& l : p.tail().lineality()) {
    gens.push_back({l.c, false});
    gens.push_back({(-l).c, false});
  }
  const std::size_t k = gens.size();
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (!pick.empty()) {
      bool has_point = false;
      for (auto i : pick) has_point = has_point || gens[i].point;
      if (has_point) {
        // rows: coordinates then the convexity row.
        linalg::Matrix a(n + 1, linalg::Row(pick.size(), Rational(0)));
        linalg::Row b(n + 1, Rational(0));
        for (std::size_t j = 0; j < pick.size(); ++j) {
          for (std::size_t i = 0; i < n; ++i) a[i][j] = gens[pick[j]].v[i];
          a[n][j] = gens[pick[j]].point ? 1 : 0;
        }
        for (std::size_t i = 0; i < n; ++i) b[i] = x[i];
        b[n] = 1;
        if (linalg::rank(a, pick.size()) == pick.size()) {
          auto sol = linalg::solve(a, b, pick.size());
          if (sol) {
            bool ok = true;
            for (const auto& s : *sol) ok = ok && s >= 0;
            if (ok) return true;
          }
        }
      }
    }
    if (pick.size() == n + 1) return false;
    for (std::size_t i = start; i < k; ++i) {
      pick.push_back(i);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

/// Random point of a nonempty polyhedron.
LatticeVector sample_point(Gen& g, const Polyhedron& p) {
  const auto& vs = p.vertices();
  std::vector<Rational> w;
  Rational total = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    w.push_back(g.integer(0, 3));
    total += w.back();
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  LatticeVector x = LatticeVector::zero(p.ambient_rank());
  for (std::size_t i = 0; i < vs.size(); ++i) x = x + vs[i] * (w[i] / total);
  for (const auto& r : p.tail().rays()) x = x + r * Rational(g.integer(0, 2));
  return x;
}

DualVector sample_dual(Gen& g, const Cone& tail) {
  const std::size_t n = tail.ambient_rank();
  for (int tries = 0; tries < 50; ++tries) {
    DualVector m = g.dual(n);
    if (tail.dual_contains(m)) return m;
  }
  return DualVector::zero(n);
}

}  // namespace

TEST(Minkowski, StaircaseFromSegmentAndQuadrant) {
  auto seg = Polyhedron::make({lv({1, 0}), lv({0, 1})}, Cone::zero(2));
  auto sum = seg + Polyhedron::from_cone(quadrant());
  EXPECT_EQ(sum.vertices(), (std::vector<LatticeVector>{lv({0, 1}), lv({1, 0})}));
  EXPECT_EQ(sum.tail(), quadrant());
  EXPECT_TRUE(sum.contains(lv({5, 5})));
  EXPECT_FALSE(sum.contains(LatticeVector{q("1/3"), q("1/3")}));
}

TEST(Minkowski, IdentityAndEmpty) {
  auto d = staircase();
  EXPECT_EQ(d + Polyhedron::point(lv({0, 0})), d);
  auto e = Polyhedron::empty_with_tail(quadrant());
  EXPECT_TRUE((e + d).is_empty());
  EXPECT_TRUE((d + e).is_empty());
}

TEST(Minkowski, RedundantVerticesDropped) {
  auto p = Polyhedron::make({lv({0, 0}), lv({2, 0}), lv({1, 0}), lv({0, 2}), LatticeVector{q("1/2"), q("1/2")}},
                            Cone::zero(2));
  EXPECT_EQ(p.vertices().size(), 3u);
}

TEST(SupportValue, Staircase) {
  auto d = staircase();
  EXPECT_EQ(d.support_value(dv({1, 1})).value, 1);
  EXPECT_EQ(d.support_value(dv({1, 0})).value, 0);
  EXPECT_TRUE(d.support_value(dv({-1, 0})).minus_infinity);
  EXPECT_THROW(Polyhedron::empty_with_tail(quadrant()).support_value(dv({1, 1})), Error);
}

TEST(FaceBy, Examples) {
  auto d = staircase();
  auto f = d.face_by(dv({1, 1}));
  EXPECT_EQ(f.vertices(), (std::vector<LatticeVector>{lv({0, 1}), lv({1, 0})}));
  EXPECT_TRUE(f.tail().is_zero());
  EXPECT_EQ(d.face_by(dv({0, 0})), d);
  auto ray = Polyhedron::make({lv({1})}, cone(1, {lv({1})}));
  EXPECT_EQ(ray.face_by(dv({1})), Polyhedron::point(lv({1})));
  EXPECT_THROW(d.face_by(dv({-1, 0})), Error);
}

TEST(Intersect, Examples) {
  EXPECT_EQ(interval("0", "1").intersect(interval("1", "2")), Polyhedron::point(lv({1})));
  EXPECT_TRUE(interval("0", "1").intersect(interval("2", "3")).is_empty());
  auto d = staircase();
  EXPECT_EQ(d.intersect(d), d);
  auto q1 = Polyhedron::from_cone(quadrant());
  auto q2 = Polyhedron::from_cone(cone(2, {lv({-1, 0}), lv({0, 1})}));
  auto both = q1.intersect(q2);
  // Direct halfspace solve: x >= 0 and x <= 0 force x = 0, y >= 0 remains.
  EXPECT_EQ(both, Polyhedron::from_cone(cone(2, {lv({0, 1})})));
}

TEST(Intersect, AgreesWithGridOracle) {
  Gen g(21);
  for (int trial = 0; trial < 12; ++trial) {
    auto a = g.polyhedron(2), b = g.polyhedron(2);
    auto ab = a.intersect(b);
    for (int x = -10; x <= 10; ++x)
      for (int y = -10; y <= 10; ++y) {
        LatticeVector p{make_rational(x, 2), make_rational(y, 2)};
        bool expect = vrep_contains(a, p) && vrep_contains(b, p);
        ASSERT_EQ(vrep_contains(ab, p), expect) << "trial " << trial << " at " << to_string(p);
        ASSERT_EQ(ab.contains(p), expect);
      }
  }
}

TEST(DualCone, Examples) {
  EXPECT_EQ(quadrant().dual(), MCone::from_generators(2, {DualVector{1, 0}, DualVector{0, 1}}));
  auto full = Cone::zero(2).dual();
  EXPECT_FALSE(full.is_pointed());
  EXPECT_EQ(full.lineality().size(), 2u);
  auto d = cone(2, {lv({1, 0}), lv({1, 2})}).dual();
  // Oracle: normals orthogonal to each ray, oriented positive on the other.
  DualVector n1{0, 1}, n2{2, -1};
  EXPECT_EQ(pairing(n1, lv({1, 0})), 0);
  EXPECT_GT(pairing(n1, lv({1, 2})), 0);
  EXPECT_EQ(pairing(n2, lv({1, 2})), 0);
  EXPECT_GT(pairing(n2, lv({1, 0})), 0);
  EXPECT_EQ(d, MCone::from_generators(2, {n1, n2}));
  EXPECT_THROW(Cone::zero(7).dual(), Error);
}

TEST(DualCone, InvolutionOnRandomFullCones) {
  Gen g(31);
  int checked = 0;
  while (checked < 60) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto c = g.pointed_cone(n);
    if (!c.is_full_dimensional()) continue;
    EXPECT_EQ(c.dual().dual(), c);
    ++checked;
  }
}

TEST(Cone, HalfspacesCutOutRayHull) {
  Gen g(32);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    std::vector<LatticeVector> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(g.lattice(n, -2, 2));
    auto c = Cone::from_generators(n, gens);
    for (const auto& v : gens) EXPECT_TRUE(c.contains(v));
    if (!c.is_pointed()) continue;
    for (const auto& r : c.rays()) {
      bool among = false;
      for (const auto& v : gens)
        if (!v.is_zero() && LatticeVector(linalg::primitive(v.c)) == r) among = true;
      EXPECT_TRUE(among);
    }
  }
}

TEST(Membership, Modes) {
  auto c = quadrant();
  EXPECT_TRUE(c.relint_contains(lv({1, 1})));
  EXPECT_FALSE(c.relint_contains(lv({1, 0})));
  EXPECT_TRUE(c.contains(lv({1, 0})));
  EXPECT_TRUE(staircase().contains(LatticeVector{q("1/2"), q("1/2")}));
  EXPECT_FALSE(staircase().relint_contains(LatticeVector{q("1/2"), q("1/2")}));
  EXPECT_TRUE(interval("0", "1").relint_contains(LatticeVector{q("1/2")}));
  // Relative interior of a lower-dimensional polyhedron uses its affine hull.
  auto seg = Polyhedron::make({lv({1, 0}), lv({0, 1})}, Cone::zero(2));
  EXPECT_TRUE(seg.relint_contains(LatticeVector{q("1/2"), q("1/2")}));
  EXPECT_FALSE(seg.relint_contains(lv({1, 0})));
}

TEST(ConeFaceTest, Examples) {
  auto m = cone_face_test(cone(2, {lv({1, 0})}), quadrant());
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, (DualVector{0, 1}));
  auto self = cone_face_test(quadrant(), quadrant());
  ASSERT_TRUE(self);
  EXPECT_TRUE(self->is_zero());
  EXPECT_FALSE(cone_face_test(cone(2, {lv({1, 1})}), quadrant()));
  EXPECT_TRUE(cone_face_test(Cone::zero(2), quadrant()));
}

TEST(Quasifan, Examples) {
  auto cells = normal_quasifan(staircase());
  ASSERT_EQ(cells.size(), 2u);
  for (const auto& cell : cells) {
    EXPECT_TRUE(cell.cone.contains(DualVector{1, 1}));
    EXPECT_FALSE(cell.cone.relint_contains(DualVector{1, 1}));
  }
  auto pt = normal_quasifan(Polyhedron::point(lv({2, 3})));
  ASSERT_EQ(pt.size(), 1u);
  EXPECT_EQ(pt[0].linear_form, lv({2, 3}));
  auto iv = normal_quasifan(interval("0", "1"));
  ASSERT_EQ(iv.size(), 2u);
  for (const auto& cell : iv) {
    if (cell.linear_form == lv({0})) {
      EXPECT_EQ(cell.cone, MCone::from_generators(1, {DualVector{1}}));
    } else {
      EXPECT_EQ(cell.linear_form, lv({1}));
      EXPECT_EQ(cell.cone, MCone::from_generators(1, {DualVector{-1}}));
    }
  }
}

TEST(Quasifan, LinearOnCellsAndCovers) {
  Gen g(41);
  for (int k = 0; k < 60; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto d = g.polyhedron(n);
    auto cells = normal_quasifan(d);
    for (int s = 0; s < 10; ++s) {
      DualVector m = sample_dual(g, d.tail());
      bool covered = false;
      for (const auto& cell : cells) {
        if (!cell.cone.contains(m)) continue;
        covered = true;
        EXPECT_EQ(d.support_value(m).value, pairing(m, cell.linear_form));
      }
      EXPECT_TRUE(covered);
    }
  }
}

TEST(HilbertBasis, Examples) {
  EXPECT_EQ(hilbert_basis(quadrant()), (std::vector<LatticeVector>{lv({0, 1}), lv({1, 0})}));
  EXPECT_EQ(hilbert_basis(cone(1, {lv({1})})), (std::vector<LatticeVector>{lv({1})}));
  EXPECT_THROW(hilbert_basis(Cone::full(2)), Error);
  EXPECT_THROW(hilbert_basis(Cone::zero(4)), Error);
}

TEST(HilbertBasis, ParallelepipedOracle) {
  // cone{(1,0),(1,2)}: lattice points of the half-open fundamental
  // parallelepiped together with the generators.
  auto c = cone(2, {lv({1, 0}), lv({1, 2})});
  std::vector<LatticeVector> expected{lv({1, 0}), lv({1, 2})};
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y) {
      // λ1 (1,0) + λ2 (1,2) = (x,y) → λ2 = y/2, λ1 = x − y/2.
      Rational l2 = make_rational(y, 2), l1 = Rational(x) - l2;
      if (l1 >= 0 && l1 < 1 && l2 >= 0 && l2 < 1 && (x != 0 || y != 0)) expected.push_back(lv({x, y}));
    }
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(hilbert_basis(c), expected);
}

TEST(HilbertBasis, GeneratesLatticePointsOfRandomCones) {
  Gen g(42);
  for (int k = 0; k < 25; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(2, 3));
    auto c = g.pointed_cone(n);
    auto hb = hilbert_basis(c);
    // Every small lattice point of the cone is a nonnegative integer
    // combination: greedy recursion with memo on a bounded box.
    std::map<std::vector<Rational>, bool> memo;
    std::function<bool(const LatticeVector&)> gen = [&](const LatticeVector& x) -> bool {
      if (x.is_zero()) return true;
      auto it = memo.find(x.c);
      if (it != memo.end()) return it->second;
      bool ok = false;
      for (const auto& h : hb) {
        auto y = x - h;
        if (c.contains(y) && gen(y)) {
          ok = true;
          break;
        }
      }
      memo[x.c] = ok;
      return ok;
    };
    for (int s = 0; s < 40; ++s) {
      auto x = g.lattice(n, -4, 4);
      if (c.contains(x)) EXPECT_TRUE(gen(x));
    }
    // Minimality: no basis element is a sum of two nonzero lattice points of the cone.
    for (const auto& h : hb) {
      std::vector<long> lo(n), hi(n);
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = std::min(0L, to_long(h[i]));
        hi[i] = std::max(0L, to_long(h[i]));
      }
      std::vector<long> cur(n);
      detail::enumerate_box(lo, hi, 0, cur, [&](const std::vector<long>& p) {
        LatticeVector a = LatticeVector::zero(n);
        for (std::size_t i = 0; i < n; ++i) a.c[i] = p[i];
        if (a.is_zero() || a == h) return;
        EXPECT_FALSE(c.contains(a) && c.contains(h - a)) << to_string(h);
      });
    }
  }
}

TEST(Properties, FaceLemmaPartOne) {
  Gen g(51);
  for (int k = 0; k < 1000; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto d = g.polyhedron(n);
    std::vector<LatticeVector> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(sample_point(g, d));
    std::vector<LatticeVector> sub_rays;
    for (const auto& r : d.tail().rays())
      if (g.coin()) sub_rays.push_back(r);
    auto sub = Polyhedron::make(pts, Cone::from_generators(n, sub_rays));
    ASSERT_TRUE(sub.subset_of(d));
    DualVector m = sample_dual(g, d.tail());
    auto lhs = sub.intersect(d.face_by(m));
    EXPECT_TRUE(lhs.subset_of(sub.face_by(m))) << "case " << k;
  }
}

TEST(Properties, FaceLemmaPartTwoConvexUnions) {
  Gen g(52);
  for (int k = 0; k < 300; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto p = g.polyhedron(n);
    // Split p by a hyperplane; the two halves have convex union p.
    DualVector l = g.dual(n);
    if (l.is_zero()) continue;
    Rational c = pairing(l, sample_point(g, p));
    linalg::Row up = l.c, down = (-l).c;
    up.push_back(-c);
    down.push_back(c);
    auto half_a = Polyhedron::from_inequalities(n, {up}, {}, p.tail()).intersect(p);
    auto half_b = Polyhedron::from_inequalities(n, {down}, {}, p.tail()).intersect(p);
    DualVector m = sample_dual(g, p.tail());
    auto face = p.face_by(m);
    auto piece_a = face.intersect(Polyhedron::from_inequalities(n, {up}, {}, p.tail()));
    auto piece_b = face.intersect(Polyhedron::from_inequalities(n, {down}, {}, p.tail()));
    if (!piece_a.is_empty()) EXPECT_TRUE(piece_a.subset_of(half_a.face_by(m))) << "case " << k;
    if (!piece_b.is_empty()) EXPECT_TRUE(piece_b.subset_of(half_b.face_by(m))) << "case " << k;
  }
}

TEST(Properties, FaceLemmaPartThree) {
  Gen g(53);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto d = g.polyhedron(n);
    DualVector m = sample_dual(g, d.tail()), m2 = sample_dual(g, d.tail());
    auto f1 = d.face_by(m), f2 = d.face_by(m2);
    auto meet = f1.intersect(f2);
    if (meet.is_empty()) continue;
    EXPECT_EQ(f1.face_by(m2), meet) << "case " << k;
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(Properties, SupportSuperadditivity) {
  Gen g(54);
  for (int k = 0; k < 500; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto d = g.polyhedron(n);
    DualVector m = sample_dual(g, d.tail()), m2 = sample_dual(g, d.tail());
    auto a = d.support_value(m), b = d.support_value(m2), ab = d.support_value(m + m2);
    ASSERT_FALSE(a.minus_infinity || b.minus_infinity || ab.minus_infinity);
    EXPECT_LE(a.value + b.value, ab.value);
  }
}

TEST(Properties, MinkowskiAlgebra) {
  Gen g(55);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto a = g.polyhedron(n), b = g.polyhedron(n), c = g.polyhedron(n);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a + b).tail(), a.tail().sum(b.tail()));
    EXPECT_EQ(a + Polyhedron::from_cone(a.tail()), a);
  }
}
