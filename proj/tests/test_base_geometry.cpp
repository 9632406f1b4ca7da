#include <gtest/gtest.h>

#include "divfan/base_geometry.hpp"
#include "divfan/group.hpp"
#include "test_support.hpp"

using namespace divfan;
using divfan::testing::Gen;
using divfan::testing::q;

namespace {

FieldRef Q() { return rationals(); }
FieldElement el(long x, const FieldRef& f = rationals()) { return FieldElement::from_rational(f, x); }
BasePoint pt(long x, const FieldRef& f = rationals()) { return BasePoint::finite(el(x, f)); }
BasePoint inf() { return BasePoint::infinity(); }
RationalFunction t_minus(long a, long e = 1, const FieldRef& f = rationals()) {
  return RationalFunction::make(el(1, f), {{pt(a, f), e}});
}
QDivisor div(std::initializer_list<std::pair<BasePoint, const char*>> xs) {
  QDivisor d;
  for (const auto& [p, c] : xs) d.add(p, q(c));
  return d;
}

RationalFunction random_function(Gen& g, const FieldRef& f) {
  std::map<BasePoint, long> fac;
  long k = g.integer(0, 4);
  for (long i = 0; i < k; ++i) fac[BasePoint::finite(g.element(f))] += g.integer(-3, 3);
  FieldElement c = g.element(f);
  if (c.is_zero()) c = el(1, f);
  return RationalFunction::make(c, fac);
}

SemilinearBaseMap random_mobius(Gen& g, const FieldRef& f, const FieldAutomorphism& twist) {
  for (;;) {
    SemilinearBaseMap::Mat m{g.element(f), g.element(f), g.element(f), g.element(f)};
    if ((m[0] * m[3] - m[1] * m[2]).is_zero()) continue;
    return SemilinearBaseMap(m, twist);
  }
}

}  // namespace

TEST(DivisorOfFunction, Examples) {
  auto line = BaseVariety::line(Q());
  auto t = t_minus(0);
  EXPECT_EQ(divisor_of_function(t, line), div({{pt(0), "1"}, {inf(), "-1"}}));
  auto f = RationalFunction::make(el(1), {{pt(1), 2}, {pt(0), -1}});
  EXPECT_EQ(divisor_of_function(f, line), div({{pt(1), "2"}, {pt(0), "-1"}, {inf(), "-1"}}));
  EXPECT_THROW(divisor_of_function(t, BaseVariety::point()), Error);
  // Removed points drop out.
  auto open = BaseVariety::open(Q(), {pt(0)});
  EXPECT_EQ(divisor_of_function(t, open), div({{inf(), "-1"}}));
}

TEST(DivisorOfFunction, DegreeZeroOnLine) {
  Gen g(61);
  auto f = gaussian_rationals();
  for (int k = 0; k < 200; ++k) EXPECT_EQ(divisor_of_function(random_function(g, f), BaseVariety::line(f)).degree(), 0);
}

TEST(Positivity, Examples) {
  auto line = BaseVariety::line(Q());
  auto a = classify_positivity(div({{pt(0), "1/2"}}), line);
  EXPECT_TRUE(a.big && a.semiample);
  auto b = classify_positivity(div({{inf(), "-1"}}), line);
  EXPECT_FALSE(b.big || b.semiample);
  auto c = classify_positivity(div({{inf(), "-7"}}), BaseVariety::open(Q(), {pt(0)}));
  EXPECT_TRUE(c.big && c.semiample);
  auto z = classify_positivity(QDivisor(), line);
  EXPECT_TRUE(z.semiample);
  EXPECT_FALSE(z.big);
  auto p = classify_positivity(QDivisor(), BaseVariety::point());
  EXPECT_TRUE(p.big && p.semiample);
}

TEST(SectionDim, Examples) {
  auto line = BaseVariety::line(Q());
  EXPECT_EQ(section_dim(div({{pt(0), "3"}}), line), 4);
  EXPECT_EQ(section_dim(div({{pt(0), "1/2"}}), line), 1);
  EXPECT_EQ(section_dim(div({{inf(), "-1"}}), line), 0);
  EXPECT_THROW(section_dim(QDivisor(), BaseVariety::open(Q(), {pt(0)})), Error);
}

TEST(SectionDim, Monotone) {
  Gen g(62);
  auto line = BaseVariety::line(Q());
  std::vector<BasePoint> pts{pt(0), pt(1), pt(-2), inf()};
  for (int k = 0; k < 200; ++k) {
    QDivisor d, e;
    for (const auto& p : pts) {
      Rational c = g.rational(-3, 3, 3);
      d.add(p, c);
      e.add(p, c + Rational(g.integer(0, 2)) + make_rational(g.integer(0, 2), 3));
    }
    ASSERT_TRUE(d <= e);
    EXPECT_LE(section_dim(d, line), section_dim(e, line));
  }
}

TEST(SectionMembership, Examples) {
  auto line = BaseVariety::line(Q());
  EXPECT_TRUE(section_membership(t_minus(0), div({{inf(), "1"}}), line));
  EXPECT_TRUE(section_membership(RationalFunction::one(Q()), div({{pt(3), "2"}, {inf(), "1/2"}}), line));
  EXPECT_FALSE(section_membership(t_minus(0, -1), QDivisor(), line));
  // The pole sits at a removed point, which is exempt.
  EXPECT_TRUE(section_membership(t_minus(0, -1), div({{inf(), "-1"}}), BaseVariety::open(Q(), {pt(0)})));
}

TEST(Plurifunction, Evaluation) {
  Plurifunction a(1, Q());
  a.add(LatticeVector{1}, t_minus(0));
  EXPECT_EQ(a.eval(DualVector{2}), t_minus(0, 2));
  EXPECT_EQ(a.eval(DualVector{0}), RationalFunction::one(Q()));
  Plurifunction b(2, Q());
  b.add(LatticeVector{1, 0}, t_minus(0)).add(LatticeVector{0, 1}, t_minus(1));
  EXPECT_EQ(b.eval(DualVector{1, 1}), RationalFunction::make(el(1), {{pt(0), 1}, {pt(1), 1}}));
  EXPECT_THROW(b.eval(DualVector{q("1/2"), 0}), Error);
}

TEST(Plurifunction, PrincipalDivisor) {
  auto line = BaseVariety::line(Q());
  Plurifunction a(1, Q());
  a.add(LatticeVector{1}, t_minus(0));
  auto terms = plurifunction_principal_divisor(a, Cone::zero(1), line);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].first, pt(0));
  EXPECT_EQ(terms[0].second, Polyhedron::point(LatticeVector{1}));
  EXPECT_EQ(terms[1].first, inf());
  EXPECT_EQ(terms[1].second, Polyhedron::point(LatticeVector{-1}));

  Plurifunction c(1, Q());
  c.add(LatticeVector{3}, RationalFunction::constant(el(5)));
  EXPECT_TRUE(plurifunction_principal_divisor(c, Cone::zero(1), line).empty());

  // div(𝔣) + div(𝔣⁻¹) is neutral at every point.
  auto both = plurifunction_principal_divisor(a * a.inverse(), Cone::zero(1), line);
  EXPECT_TRUE(both.empty());
  auto plus = plurifunction_principal_divisor(a, Cone::zero(1), line);
  auto minus = plurifunction_principal_divisor(a.inverse(), Cone::zero(1), line);
  for (std::size_t i = 0; i < plus.size(); ++i)
    EXPECT_EQ(plus[i].second + minus[i].second, Polyhedron::from_cone(Cone::zero(1)));
}

TEST(Plurifunction, HomomorphismAndDivisorCompatibility) {
  Gen g(63);
  auto f = gaussian_rationals();
  auto line = BaseVariety::line(f);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    Plurifunction pf(n, f);
    for (long i = g.integer(0, 3); i > 0; --i) pf.add(g.lattice(n), random_function(g, f));
    DualVector m = g.dual(n), m2 = g.dual(n);
    EXPECT_EQ(pf.eval(m + m2), pf.eval(m) * pf.eval(m2));
    // div(𝔣(m)) equals the m-evaluation of div(𝔣) with tail cone {0}.
    QDivisor lhs = divisor_of_function(pf.eval(m), line), rhs;
    for (const auto& [p, poly] : plurifunction_principal_divisor(pf, Cone::zero(n), line))
      rhs.add(p, poly.support_value(m).value);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(BaseMap, Examples) {
  auto f = gaussian_rationals();
  auto z = el(0, f), o = el(1, f);
  SemilinearBaseMap inv_z({z, o, o, z}, FieldAutomorphism::identity(f));
  EXPECT_EQ(inv_z.apply(BasePoint::finite(z)), inf());
  EXPECT_EQ(inv_z.apply(inf()), BasePoint::finite(z));
  auto conj = SemilinearBaseMap::twist_only(complex_conjugation());
  auto i = FieldElement::generator(f);
  EXPECT_EQ(conj.apply(BasePoint::finite(i)), BasePoint::finite(-i));
  EXPECT_EQ(conj.apply(inf()), inf());
}

TEST(BaseMap, PullbackOfPointIsInverseImage) {
  Gen g(64);
  auto f = gaussian_rationals();
  for (int k = 0; k < 100; ++k) {
    auto twist = g.coin() ? complex_conjugation() : FieldAutomorphism::identity(f);
    auto psi = random_mobius(g, f, twist);
    BasePoint p = g.integer(0, 5) == 0 ? inf() : BasePoint::finite(g.element(f));
    QDivisor d;
    d.add(p, 1);
    auto back = psi.pullback(d);
    ASSERT_EQ(back.terms().size(), 1u);
    const BasePoint& pre = back.terms().begin()->first;
    // Independent route: ψ(pre) must return p.
    EXPECT_EQ(psi.apply(pre), p);
    // Explicit 2×2 inverse, twisted back by σ⁻¹.
    const auto& m = psi.matrix();
    auto s = twist.inverse();
    BasePoint expect = inf();
    if (p.is_infinity()) {
      if (!m[2].is_zero()) expect = BasePoint::finite(s.apply(-m[3] / m[2]));
    } else {
      auto num = m[3] * p.value() - m[1], den = -m[2] * p.value() + m[0];
      if (!den.is_zero()) expect = BasePoint::finite(s.apply(num / den));
    }
    EXPECT_EQ(pre, expect);
  }
}

TEST(BaseMap, FunctionPullbackMatchesDivisorPullback) {
  Gen g(65);
  auto f = gaussian_rationals();
  auto line = BaseVariety::line(f);
  for (int k = 0; k < 100; ++k) {
    auto twist = g.coin() ? complex_conjugation() : FieldAutomorphism::identity(f);
    auto psi = random_mobius(g, f, twist);
    auto fn = random_function(g, f);
    EXPECT_EQ(divisor_of_function(psi.pullback(fn), line), psi.pullback(divisor_of_function(fn, line)));
    // Pointwise: (ψ*f)(x) = σ⁻¹(f(ψ(x))) at a sample point away from zeros and poles.
    auto x = g.element(f);
    auto y = psi.apply(BasePoint::finite(x));
    auto pb = psi.pullback(fn);
    auto value = [](const RationalFunction& h, const FieldElement& at) -> std::optional<FieldElement> {
      FieldElement v = h.constant_term();
      for (const auto& [p, e] : h.factors()) {
        auto b = at - p.value();
        if (b.is_zero()) return std::nullopt;
        v = v * b.pow(e);
      }
      return v;
    };
    if (!y.is_finite()) continue;
    auto lhs = value(pb, x), rhs = value(fn, y.value());
    if (lhs && rhs) EXPECT_EQ(*lhs, twist.inverse().apply(*rhs));
  }
}

TEST(BaseMap, CompositionOverGroup) {
  Gen g(66);
  auto f = gaussian_rationals();
  auto i = FieldElement::generator(f);
  auto o = el(1, f), z = el(0, f);
  std::vector<SemilinearBaseMap> gens{SemilinearBaseMap({i, z, z, o}, FieldAutomorphism::identity(f)),
                                      SemilinearBaseMap({o, o, -o, o}, FieldAutomorphism::identity(f)),
                                      SemilinearBaseMap::twist_only(complex_conjugation())};
  auto res = generate_group<SemilinearBaseMap>(
      SemilinearBaseMap::identity(f), gens, [](const auto& a, const auto& b) { return a.compose(b); }, 48);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->second.order(), 48);
  EXPECT_TRUE(verify_group_presentation(res->second).valid);
  for (const auto& a : res->first)
    for (const auto& b : res->first) {
      BasePoint p = BasePoint::finite(g.element(f));
      EXPECT_EQ(a.compose(b).apply(p), a.apply(b.apply(p)));
      EXPECT_EQ(a.compose(b).apply(inf()), a.apply(b.apply(inf())));
    }
  for (const auto& a : res->first) EXPECT_EQ(a.compose(a.inverse()), SemilinearBaseMap::identity(f));
}
