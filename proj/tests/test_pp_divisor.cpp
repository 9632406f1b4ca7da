#include <gtest/gtest.h>

#include "divfan/fixtures.hpp"
#include "divfan/pp_divisor.hpp"
#include "test_support.hpp"

using namespace divfan;
using divfan::fixtures::half_line;
using divfan::fixtures::interval;
using divfan::fixtures::pt;
using divfan::fixtures::pt_inf;
using divfan::fixtures::ray1;
using divfan::testing::Gen;
using divfan::testing::q;

namespace {

FieldElement one() { return FieldElement::from_rational(rationals(), 1); }
BaseVariety P1() { return BaseVariety::line(rationals()); }
RationalFunction mono(std::map<BasePoint, long> e) { return RationalFunction::make(one(), e); }

const std::vector<long> kRoots = {0, 1, -1, 2};

PPDivisor random_ppdivisor(Gen& g, std::size_t n, bool allow_empty = true) {
  BaseVariety base = g.integer(0, 3) == 0 ? BaseVariety::open(rationals(), {pt_inf()}) : P1();
  Cone tail = g.pointed_cone(n);
  std::vector<PPDivisor::Entry> entries;
  std::vector<BasePoint> pool = {pt(0), pt(1), pt(-1), pt(2), pt_inf()};
  for (const auto& p : pool) {
    long roll = g.integer(0, 9);
    if (roll < 4) continue;
    if (roll == 4 && allow_empty) {
      entries.push_back({p, std::nullopt});
      continue;
    }
    std::vector<LatticeVector> vs;
    long k = g.integer(1, 3);
    for (long i = 0; i < k; ++i) vs.push_back(g.rational_point(n));
    entries.push_back({p, Polyhedron::make(vs, tail)});
  }
  // Keep at least one point of the base in the locus.
  try {
    return PPDivisor::make(base, tail, entries);
  } catch (const Error&) {
    return PPDivisor::make(base, tail, {});
  }
}

DualVector random_dual_in(Gen& g, const Cone& tail, long box = 3) {
  for (int tries = 0; tries < 200; ++tries) {
    auto m = g.dual(tail.ambient_rank(), -box, box);
    if (tail.dual_contains(m)) return m;
  }
  return DualVector::zero(tail.ambient_rank());
}

/// A random section of 𝔇(m) on the locus; m falls back to 0 when none turns up.
RationalFunction random_section(Gen& g, const PPDivisor& d, DualVector& m) {
  auto dm = evaluate(d, m);
  for (int tries = 0; tries < 60; ++tries) {
    std::map<BasePoint, long> e;
    for (long a : kRoots)
      if (g.coin()) e[pt(a)] = g.integer(-2, 2);
    auto f = RationalFunction::make(FieldElement::from_rational(rationals(), g.integer(1, 3)), e);
    if (section_membership(f, dm, d.locus())) return f;
  }
  m = DualVector::zero(d.rank());
  return RationalFunction::one(rationals());
}

SemilinearBaseMap random_mobius(Gen& g) {
  for (;;) {
    SemilinearBaseMap::Mat m;
    for (auto& x : m) x = FieldElement::from_rational(rationals(), g.integer(-2, 2));
    if ((m[0] * m[3] - m[1] * m[2]).is_zero()) continue;
    return SemilinearBaseMap(m, FieldAutomorphism::identity(rationals()));
  }
}

IntMatrix random_matrix(Gen& g, std::size_t rows, std::size_t cols) {
  IntMatrix f;
  f.a.assign(rows, std::vector<long>(cols, 0));
  for (auto& r : f.a)
    for (auto& x : r) x = g.integer(-2, 2);
  return f;
}

Plurifunction random_plurifunction(Gen& g, std::size_t n) {
  Plurifunction pf(n, rationals());
  long k = g.integer(0, 2);
  for (long i = 0; i < k; ++i) pf.add(g.lattice(n, -1, 1), mono({{pt(kRoots[g.integer(0, 3)]), g.integer(-2, 2)}}));
  return pf;
}

/// The target that makes (ψ, F, 𝔣) valid with equality: Δ'_{ψ(p)} = F(Δ_p) + ω' + ord_p 𝔣.
PPDivisor image_divisor(const PPDivisor& d, const PPDMorphism& phi) {
  Cone t = d.tail().image(phi.F);
  std::set<BasePoint> pts = d.points();
  for (const auto& p : phi.plurifn.support(d.base())) pts.insert(p);
  std::vector<PPDivisor::Entry> entries;
  for (const auto& p : pts) {
    auto c = d.coefficient(p);
    std::optional<Polyhedron> img;
    if (c) img = c->image(phi.F, t).translate(phi.plurifn.order_at(p));
    entries.push_back({phi.psi.apply(p), img});
  }
  return PPDivisor::make(phi.psi.inverse().pullback(d.base()), t, entries);
}

/// Properness on a curve base by the vertex criterion: on the complete line
/// every vertex of Σ Δ_p must lie in ω ∖ {0}; on an affine open only the tail matters.
bool proper_by_vertices(const PPDivisor& d) {
  if (!d.tail().is_pointed()) return false;
  for (const auto& [p, poly] : d.coefficients())
    if (poly.tail() != d.tail()) return false;
  if (!d.locus().is_complete()) return true;
  Polyhedron sum = Polyhedron::from_cone(d.tail());
  for (const auto& [p, poly] : d.coefficients()) sum = sum + poly;
  for (const auto& v : sum.vertices())
    if (v.is_zero() || !d.tail().contains(v)) return false;
  return true;
}

}  // namespace

TEST(Evaluate, HirzebruchExamples) {
  auto f = fixtures::hirzebruch_members(1);
  QDivisor e2;
  e2.add(pt_inf(), q("-1/2"));
  EXPECT_EQ(evaluate(f[1], DualVector{1}), e2);
  QDivisor e1;
  e1.add(pt(0), 1);
  EXPECT_EQ(evaluate(f[0], DualVector{1}), e1);
  for (const auto& d : f) EXPECT_TRUE(evaluate(d, DualVector{0}).is_zero());
  EXPECT_THROW(evaluate(f[0], DualVector{-1}), Error);
}

TEST(Locus, Examples) {
  auto f = fixtures::hirzebruch_members(1);
  EXPECT_EQ(f[1].locus(), BaseVariety::open(rationals(), {pt(0)}));
  EXPECT_EQ(f[0].locus(), P1());
  EXPECT_THROW(PPDivisor::make(BaseVariety::point(), Cone::zero(1), {{BasePoint::sole(), std::nullopt}}), Error);
  try {
    PPDivisor::make(BaseVariety::point(), Cone::zero(1), {{BasePoint::sole(), std::nullopt}});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyLocus);
  }
}

TEST(CheckProper, Examples) {
  for (const auto& d : fixtures::hirzebruch_members(1)) EXPECT_TRUE(check_proper(d).verdict.ok) << d.name();
  auto bad = PPDivisor::make(P1(), ray1(1), {{pt(0), half_line(-1, 1)}});
  auto r = check_proper(bad);
  EXPECT_FALSE(r.verdict.ok);
  ASSERT_TRUE(r.failing_m.has_value());
  EXPECT_LT(evaluate(bad, *r.failing_m).degree(), 0);
  auto quadrant = Cone::from_generators(2, {{1, 0}, {0, 1}});
  EXPECT_TRUE(check_proper(PPDivisor::toric(quadrant)).verdict.ok);
  auto mixed = PPDivisor::make(P1(), ray1(1), {{pt(0), interval(0, 1)}});
  EXPECT_EQ(check_proper(mixed).verdict.clause, "tail");
}

TEST(CheckProper, AgreesWithVertexCriterion) {
  Gen g(41);
  int proper = 0;
  for (int i = 0; i < 300; ++i) {
    std::size_t n = g.integer(1, 2);
    Cone tail = g.pointed_cone(n);
    BaseVariety base = g.integer(0, 4) == 0 ? BaseVariety::open(rationals(), {pt(1)}) : P1();
    std::vector<PPDivisor::Entry> entries;
    for (long a : {0L, -1L}) {
      std::vector<LatticeVector> vs;
      for (int k = 0; k < g.integer(1, 2); ++k) {
        LatticeVector v = LatticeVector::zero(n);
        for (const auto& ray : tail.rays()) v = v + ray * g.rational(-1, 2, 2);
        if (g.integer(0, 3) == 0) v = v + g.rational_point(n);
        vs.push_back(v);
      }
      entries.push_back({pt(a), Polyhedron::make(vs, tail)});
    }
    auto d = PPDivisor::make(base, tail, entries);
    bool expect = proper_by_vertices(d);
    proper += expect;
    EXPECT_EQ(check_proper(d).verdict.ok, expect) << to_string(d);
  }
  EXPECT_GT(proper, 20);
}

TEST(Localize, Examples) {
  auto quadrant = Cone::from_generators(2, {{1, 0}, {0, 1}});
  auto toric = PPDivisor::toric(quadrant);
  auto loc = localize(toric, DualVector{0, 1}, RationalFunction::one(rationals()));
  EXPECT_EQ(loc.tail(), Cone::from_generators(2, {{1, 0}}));

  auto d1 = fixtures::hirzebruch_members(1)[0];
  auto f = mono({{pt(0), -1}});
  auto lz = localize_with_zero_set(d1, DualVector{1}, f);
  EXPECT_EQ(lz.zero_set, std::set<BasePoint>{pt_inf()});
  EXPECT_EQ(lz.divisor.locus(), BaseVariety::open(rationals(), {pt_inf()}));
  EXPECT_EQ(*lz.divisor.coefficient(pt(0)), Polyhedron::point(LatticeVector{1}));
  EXPECT_EQ(lz.divisor.tail(), Cone::zero(1));

  EXPECT_EQ(localize(d1, DualVector{0}, RationalFunction::one(rationals())), d1);
  EXPECT_THROW(localize(d1, DualVector{1}, mono({{pt(0), 2}}).inverse()), Error);
  EXPECT_THROW(localize(d1, DualVector{-1}, RationalFunction::one(rationals())), Error);
}

TEST(LocalizationIdentity, Examples) {
  auto d1 = fixtures::hirzebruch_members(1)[0];
  auto r = localization_identity_check(d1, DualVector{1}, RationalFunction::one(rationals()), DualVector{-1});
  EXPECT_TRUE(r.verdict.ok) << r.verdict.witness;
  EXPECT_EQ(r.k, 1);
  auto r0 = localization_identity_check(d1, DualVector{1}, mono({{pt(0), -1}}), DualVector{0});
  EXPECT_TRUE(r0.verdict.ok);
  EXPECT_EQ(r0.k, 0);
}

TEST(LocalizationIdentity, RandomRankTwo) {
  Gen g(7);
  int nontrivial = 0;
  for (int i = 0; i < 500; ++i) {
    auto d = random_ppdivisor(g, 2);
    auto m = random_dual_in(g, d.tail());
    auto f = random_section(g, d, m);
    auto loc = localize(d, m, f);
    auto mp = random_dual_in(g, loc.tail(), 3);
    auto r = localization_identity_check(d, m, f, mp);
    EXPECT_TRUE(r.verdict.ok) << to_string(d) << " m=" << to_string(m) << " m'=" << to_string(mp) << " "
                              << r.verdict.witness;
    nontrivial += r.k > 0;
  }
  EXPECT_GT(nontrivial, 50);
}

TEST(Localize, TwiceCommutesWhenFacesMeet) {
  Gen g(13);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto d = random_ppdivisor(g, 2);
    auto m1 = random_dual_in(g, d.tail(), 2), m2 = random_dual_in(g, d.tail(), 2);
    bool meet = true;
    for (const auto& [p, poly] : d.coefficients())
      if (poly.face_by(m1).intersect(poly.face_by(m2)).is_empty()) meet = false;
    if (!meet) continue;
    auto f1 = random_section(g, d, m1), f2 = random_section(g, d, m2);
    auto a = localize(localize(d, m1, f1), m2, f2);
    auto b = localize(localize(d, m2, f2), m1, f1);
    auto c = localize(d, m1 + m2, f1 * f2);
    EXPECT_EQ(a, b) << to_string(d);
    EXPECT_EQ(a, c) << to_string(d);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Evaluate, Superadditive) {
  Gen g(3);
  for (int i = 0; i < 300; ++i) {
    auto d = random_ppdivisor(g, 2);
    auto m1 = random_dual_in(g, d.tail()), m2 = random_dual_in(g, d.tail());
    EXPECT_TRUE(evaluate(d, m1) + evaluate(d, m2) <= evaluate(d, m1 + m2)) << to_string(d);
  }
}

TEST(FiberAndWeightedSum, Examples) {
  auto f = fixtures::hirzebruch_members(1);
  EXPECT_EQ(fiber_polyhedron(f[0], pt(0)), half_line(1, 1));
  EXPECT_EQ(fiber_polyhedron(f[0], pt(5)), Polyhedron::from_cone(ray1(1)));
  EXPECT_THROW(fiber_polyhedron(f[1], pt(0)), Error);
  EXPECT_EQ(weighted_sum(f[0], {{pt(0), 2}}), half_line(2, 1));
  EXPECT_EQ(weighted_sum(f[0], {{pt(0), 0}}), Polyhedron::from_cone(ray1(1)));
  EXPECT_THROW(weighted_sum(f[1], {{pt(0), 1}}), Error);
  EXPECT_EQ(weighted_sum(f[1], {{pt(0), 0}, {pt_inf(), 2}}), interval(-1, 0));
}

TEST(Intersect, Examples) {
  auto f = fixtures::hirzebruch_members(1);
  auto x = intersect_ppdivisors(f[0], f[1]);
  EXPECT_EQ(x.tail(), Cone::zero(1));
  EXPECT_FALSE(x.coefficient(pt(0)).has_value());
  EXPECT_EQ(*x.coefficient(pt_inf()), Polyhedron::point(LatticeVector{0}));
  EXPECT_EQ(intersect_ppdivisors(f[2], f[2]), f[2]);
  auto y = intersect_ppdivisors(f[0], f[3]);
  EXPECT_EQ(*y.coefficient(pt(0)), Polyhedron::point(LatticeVector{1}));
  EXPECT_FALSE(y.in_locus(pt_inf()));
  auto a = PPDivisor::make(P1(), Cone::zero(1), {{pt(1), interval(0, 1)}});
  auto b = PPDivisor::make(P1(), Cone::zero(1), {{pt(1), interval(2, 3)}});
  EXPECT_FALSE(intersect_ppdivisors(a, b).in_locus(pt(1)));
  auto c = PPDivisor::make(BaseVariety::open(rationals(), {pt(3)}), Cone::zero(1), {});
  EXPECT_THROW(intersect_ppdivisors(a, c), Error);
}

TEST(PullPush, Examples) {
  auto d1 = fixtures::hirzebruch_members(1)[0];
  EXPECT_EQ(pullback(d1, SemilinearBaseMap::identity(rationals())), d1);
  IntMatrix zero{{{0}}};
  auto z = pushforward(d1, zero, ray1(1));
  EXPECT_TRUE(z.coefficients().empty());
  auto neg = pushforward(d1, IntMatrix{{{-1}}}, ray1(-1));
  EXPECT_EQ(*neg.coefficient(pt(0)), half_line(-1, -1));
  EXPECT_THROW(pushforward(d1, IntMatrix{{{-1}}}, ray1(1)), Error);
  // z ↦ 1/z moves the coefficient at 0 to ∞.
  auto o = FieldElement::from_rational(rationals(), 1), zf = FieldElement::from_rational(rationals(), 0);
  SemilinearBaseMap flip({zf, o, o, zf}, FieldAutomorphism::identity(rationals()));
  EXPECT_EQ(*pullback(d1, flip).coefficient(pt_inf()), half_line(1, 1));
}

TEST(Morphism, Examples) {
  auto f = fixtures::hirzebruch_members(1);
  for (const auto& d : f) EXPECT_TRUE(verify_morphism(d, d, PPDMorphism::identity(d)).ok);
  auto x = intersect_ppdivisors(f[0], f[1]);
  EXPECT_TRUE(verify_morphism(x, f[0], PPDMorphism::identity(x)).ok);
  EXPECT_TRUE(verify_morphism(x, f[1], PPDMorphism::identity(x)).ok);
  EXPECT_FALSE(verify_morphism(f[0], x, PPDMorphism::identity(x)).ok);
  auto bad = PPDMorphism::identity(f[0]);
  bad.plurifn.add(LatticeVector{1}, mono({{pt(0), -1}}));
  auto v = verify_morphism(f[0], f[0], bad);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.witness.find("at 0"), std::string::npos) << v.witness;
}

TEST(Morphism, ComposeIdentity) {
  auto d = fixtures::hirzebruch_members(1)[2];
  auto id = PPDMorphism::identity(d);
  EXPECT_EQ(compose_morphisms(id, id), id);
  auto a = PPDMorphism::identity(d);
  a.F = IntMatrix{{{1, 0}}};
  EXPECT_THROW(compose_morphisms(a, a), Error);
}

TEST(Morphism, CompositionValidAndAssociative) {
  Gen g(101);
  for (int i = 0; i < 200; ++i) {
    std::size_t n0 = g.integer(1, 2), n1 = g.integer(1, 2), n2 = g.integer(1, 2), n3 = g.integer(1, 2);
    auto d0 = random_ppdivisor(g, n0);
    PPDMorphism a{random_mobius(g), random_matrix(g, n1, n0), random_plurifunction(g, n1)};
    auto d1 = image_divisor(d0, a);
    PPDMorphism b{random_mobius(g), random_matrix(g, n2, n1), random_plurifunction(g, n2)};
    auto d2 = image_divisor(d1, b);
    PPDMorphism c{random_mobius(g), random_matrix(g, n3, n2), random_plurifunction(g, n3)};
    auto d3 = image_divisor(d2, c);
    ASSERT_TRUE(verify_morphism(d0, d1, a).ok) << verify_morphism(d0, d1, a).witness;
    ASSERT_TRUE(verify_morphism(d1, d2, b).ok);
    auto ba = compose_morphisms(b, a);
    auto v = verify_morphism(d0, d2, ba);
    EXPECT_TRUE(v.ok) << v.clause << ": " << v.witness;
    EXPECT_TRUE(verify_morphism(d0, d3, compose_morphisms(c, ba)).ok);
    EXPECT_EQ(compose_morphisms(c, ba), compose_morphisms(compose_morphisms(c, b), a));
  }
}

TEST(Face, Examples) {
  auto quadrant = Cone::from_generators(2, {{1, 0}, {0, 1}});
  auto sup = PPDivisor::toric(quadrant);
  auto sub = PPDivisor::toric(Cone::from_generators(2, {{1, 0}}));
  auto one_fn = RationalFunction::one(rationals());
  EXPECT_TRUE(verify_face(sub, sup, {{DualVector{0, 1}, one_fn}}).ok);
  EXPECT_FALSE(verify_face(sub, sup, {{DualVector{1, 0}, one_fn}}).ok);
  for (const auto& d : fixtures::hirzebruch_members(1)) {
    auto v = verify_face(d, d, {{DualVector{0}, one_fn}});
    EXPECT_TRUE(v.ok) << d.name() << " " << v.witness;
  }
}

TEST(Face, PointFaceOfSegment) {
  // {1}⊗{0} against [0,1]⊗{0}: over the affine line t is a section of 𝔇(−1)
  // with no zeros, over the complete line 𝔇(−1) has degree −1 and no sections.
  auto one_fn = RationalFunction::one(rationals());
  auto t = mono({{pt(0), 1}});
  auto aff = BaseVariety::open(rationals(), {pt_inf()});
  auto sup_a = PPDivisor::make(aff, Cone::zero(1), {{pt(0), interval(0, 1)}});
  auto sub_a = PPDivisor::make(aff, Cone::zero(1), {{pt(0), Polyhedron::point(LatticeVector{1})}});
  EXPECT_TRUE(verify_face(sub_a, sup_a, {{DualVector{-1}, t}}).ok);
  EXPECT_TRUE(search_face(sub_a, sup_a, 3).has_value());
  auto sup_c = PPDivisor::make(P1(), Cone::zero(1), {{pt(0), interval(0, 1)}});
  auto sub_c = PPDivisor::make(P1(), Cone::zero(1), {{pt(0), Polyhedron::point(LatticeVector{1})}});
  EXPECT_FALSE(verify_face(sub_c, sup_c, {{DualVector{-1}, t}}).ok);
  EXPECT_FALSE(verify_face(sub_c, sup_c, {{DualVector{-1}, one_fn}}).ok);
  EXPECT_FALSE(search_face(sub_c, sup_c, 3).has_value());
}

TEST(Face, SearchOnHirzebruchEdges) {
  auto f = fixtures::hirzebruch_members(1);
  int edges = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      auto x = intersect_ppdivisors(f[i], f[j]);
      if (x.tail().is_zero() && x.coefficients().empty() && x.empties().size() == 2) continue;
      ++edges;
      for (const auto* sup : {&f[i], &f[j]}) {
        auto c = search_face(x, *sup, 3);
        ASSERT_TRUE(c.has_value()) << sup->name() << " ∩ edge " << to_string(x);
        EXPECT_TRUE(verify_face(x, *sup, *c).ok);
      }
    }
  EXPECT_EQ(edges, 4);
  auto same = search_face(f[0], f[0], 3);
  ASSERT_TRUE(same.has_value());
  ASSERT_EQ(same->size(), 1u);
  EXPECT_TRUE((*same)[0].m.is_zero());
}

TEST(Face, SearchFindsNothingWithoutSection) {
  // Removing a point from D_omega1 is a face (m = 1, f = (t-1)/t), but over
  // the trivial divisor 𝔇(m) = 0 only constants are sections.
  auto d1 = fixtures::hirzebruch_members(1)[0];
  auto open1 = PPDivisor::make(P1(), ray1(1), {{pt(0), half_line(1, 1)}, {pt(1), std::nullopt}});
  EXPECT_TRUE(search_face(open1, d1, 3).has_value());
  auto trivial = PPDivisor::make(P1(), ray1(1), {});
  auto sub = PPDivisor::make(P1(), ray1(1), {{pt(1), std::nullopt}});
  EXPECT_FALSE(search_face(sub, trivial, 3).has_value());
}

TEST(Face, LocalizationsAreFaces) {
  Gen g(23);
  int found = 0;
  for (int i = 0; i < 200; ++i) {
    auto d = random_ppdivisor(g, g.integer(1, 2));
    auto m = random_dual_in(g, d.tail(), 2);
    auto f = random_section(g, d, m);
    auto sub = localize(d, m, f);
    auto v = verify_face(sub, d, {{m, f}});
    ASSERT_TRUE(v.ok) << v.clause << ": " << v.witness << " " << to_string(d);
    EXPECT_TRUE(cone_face_test(sub.tail(), d.tail()).has_value());
    for (const auto& [p, poly] : sub.coefficients()) EXPECT_TRUE(poly.face_by(m).subset_of(poly));
    if (i % 5 == 0) {
      auto c = search_face(sub, d, 2);
      if (c) {
        ++found;
        EXPECT_TRUE(verify_face(sub, d, *c).ok);
      }
    }
  }
  EXPECT_GT(found, 10);
}
