#pragma once

#include <functional>
#include <string>
#include <vector>

#include "divfan/lp.hpp"
#include "divfan/parallel.hpp"
#include "divfan/pp_divisor.hpp"
#include "divfan/random.hpp"

namespace divfan {

/// Outcome of one randomized property suite.
struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

namespace selftest {

inline BasePoint qpt(long a) { return BasePoint::finite(FieldElement::from_rational(rationals(), a)); }

inline const std::vector<long>& roots() {
  static const std::vector<long> r = {0, 1, -1, 2};
  return r;
}

/// Records a failing case without stopping the suite.
class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }
  void check(bool ok, const std::function<std::string()>& what) {
    ++r_.cases;
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = what();
  }
  SuiteResult done() { return r_; }

 private:
  SuiteResult r_;
};

inline LatticeVector sample_point(Gen& g, const Polyhedron& p) {
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

inline DualVector sample_dual(Gen& g, const Cone& tail, long box = 3) {
  const std::size_t n = tail.ambient_rank();
  for (int tries = 0; tries < 200; ++tries) {
    DualVector m = g.dual(n, -box, box);
    if (tail.dual_contains(m)) return m;
  }
  return DualVector::zero(n);
}

inline PPDivisor random_ppdivisor(Gen& g, std::size_t n) {
  BaseVariety base = g.integer(0, 3) == 0 ? BaseVariety::open(rationals(), {BasePoint::infinity()})
                                          : BaseVariety::line(rationals());
  Cone tail = g.pointed_cone(n);
  std::vector<PPDivisor::Entry> entries;
  std::vector<BasePoint> pool = {qpt(0), qpt(1), qpt(-1), qpt(2), BasePoint::infinity()};
  for (const auto& p : pool) {
    long roll = g.integer(0, 9);
    if (roll < 4) continue;
    if (roll == 4) {
      entries.push_back({p, std::nullopt});
      continue;
    }
    std::vector<LatticeVector> vs;
    for (long i = g.integer(1, 3); i > 0; --i) vs.push_back(g.rational_point(n));
    entries.push_back({p, Polyhedron::make(vs, tail)});
  }
  try {
    return PPDivisor::make(base, tail, entries);
  } catch (const Error&) {
    return PPDivisor::make(base, tail, {});
  }
}

/// A section of 𝔇(m) on the locus; m drops to 0 when none turns up.
inline RationalFunction random_section(Gen& g, const PPDivisor& d, DualVector& m) {
  auto dm = evaluate(d, m);
  for (int tries = 0; tries < 60; ++tries) {
    std::map<BasePoint, long> e;
    for (long a : roots())
      if (g.coin()) e[qpt(a)] = g.integer(-2, 2);
    auto f = RationalFunction::make(FieldElement::from_rational(rationals(), g.integer(1, 3)), e);
    if (section_membership(f, dm, d.locus())) return f;
  }
  m = DualVector::zero(d.rank());
  return RationalFunction::one(rationals());
}

inline SemilinearBaseMap random_mobius(Gen& g) {
  for (;;) {
    SemilinearBaseMap::Mat m;
    for (auto& x : m) x = FieldElement::from_rational(rationals(), g.integer(-2, 2));
    if ((m[0] * m[3] - m[1] * m[2]).is_zero()) continue;
    return SemilinearBaseMap(m, FieldAutomorphism::identity(rationals()));
  }
}

inline IntMatrix random_matrix(Gen& g, std::size_t rows, std::size_t cols) {
  IntMatrix f;
  f.a.assign(rows, std::vector<long>(cols, 0));
  for (auto& r : f.a)
    for (auto& x : r) x = g.integer(-2, 2);
  return f;
}

inline RationalFunction random_function(Gen& g, const FieldRef& f) {
  std::map<BasePoint, long> fac;
  for (long i = g.integer(0, 4); i > 0; --i) fac[BasePoint::finite(g.element(f))] += g.integer(-3, 3);
  FieldElement c = g.element(f);
  if (c.is_zero()) c = FieldElement::from_rational(f, 1);
  return RationalFunction::make(c, fac);
}

inline Plurifunction random_plurifunction(Gen& g, std::size_t n) {
  Plurifunction pf(n, rationals());
  for (long i = g.integer(0, 2); i > 0; --i)
    pf.add(g.lattice(n, -1, 1),
           RationalFunction::make(FieldElement::from_rational(rationals(), 1),
                                  {{qpt(roots()[g.integer(0, 3)]), g.integer(-2, 2)}}));
  return pf;
}

/// The target making (ψ, F, 𝔣) valid with equality.
inline PPDivisor image_divisor(const PPDivisor& d, const PPDMorphism& phi) {
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

inline SuiteResult face_lemma_part_one(unsigned seed, int cases) {
  Gen g(seed);
  Tally t("face lemma part 1: Δ' ⊆ Δ gives Δ' ∩ face(Δ,m) ⊆ face(Δ',m)");
  for (int k = 0; k < cases; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto d = g.polyhedron(n);
    std::vector<LatticeVector> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(sample_point(g, d));
    std::vector<LatticeVector> sub_rays;
    for (const auto& r : d.tail().rays())
      if (g.coin()) sub_rays.push_back(r);
    auto sub = Polyhedron::make(pts, Cone::from_generators(n, sub_rays));
    DualVector m = sample_dual(g, d.tail());
    bool ok = sub.subset_of(d) && sub.intersect(d.face_by(m)).subset_of(sub.face_by(m));
    t.check(ok, [&] { return to_string(sub) + " in " + to_string(d) + " m=" + to_string(m); });
  }
  return t.done();
}

inline SuiteResult face_lemma_part_three(unsigned seed, int cases) {
  Gen g(seed);
  Tally t("face lemma part 3: face(face(Δ,m),m') = face(Δ,m) ∩ face(Δ,m') = face(face(Δ,m'),m)");
  for (int k = 0; k < cases; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    auto d = g.polyhedron(n);
    DualVector m = sample_dual(g, d.tail()), m2 = sample_dual(g, d.tail());
    auto f1 = d.face_by(m), f2 = d.face_by(m2);
    auto meet = f1.intersect(f2);
    bool ok = meet.is_empty() || (f1.face_by(m2) == meet && f2.face_by(m) == meet);
    t.check(ok, [&] { return to_string(d) + " m=" + to_string(m) + " m'=" + to_string(m2); });
  }
  return t.done();
}

inline SuiteResult cpl_superadditivity(unsigned seed, int cases) {
  Gen g(seed);
  Tally t("CPL superadditivity: 𝔇(m) + 𝔇(m') ≤ 𝔇(m+m')");
  for (int k = 0; k < cases; ++k) {
    auto d = random_ppdivisor(g, static_cast<std::size_t>(g.integer(1, 3)));
    auto m1 = sample_dual(g, d.tail()), m2 = sample_dual(g, d.tail());
    bool ok = evaluate(d, m1) + evaluate(d, m2) <= evaluate(d, m1 + m2);
    t.check(ok, [&] { return to_string(d) + " m=" + to_string(m1) + " m'=" + to_string(m2); });
  }
  return t.done();
}

inline SuiteResult localization_identity(unsigned seed, int cases) {
  Gen g(seed);
  Tally t("localization identity: 𝔇_f(m') = 𝔇(m' + k·m) + k·div f for k ≫ 0");
  for (int k = 0; k < cases; ++k) {
    auto d = random_ppdivisor(g, 2);
    auto m = sample_dual(g, d.tail());
    auto f = random_section(g, d, m);
    auto loc = localize(d, m, f);
    auto mp = sample_dual(g, loc.tail());
    auto r = localization_identity_check(d, m, f, mp);
    t.check(r.verdict.ok, [&] { return to_string(d) + " m=" + to_string(m) + ": " + r.verdict.witness; });
  }
  return t.done();
}

inline SuiteResult morphism_composition(unsigned seed, int cases) {
  Gen g(seed);
  Tally t("morphism composition: valid and associative");
  for (int k = 0; k < cases; ++k) {
    std::size_t n0 = g.integer(1, 2), n1 = g.integer(1, 2), n2 = g.integer(1, 2), n3 = g.integer(1, 2);
    auto d0 = random_ppdivisor(g, n0);
    PPDMorphism a{random_mobius(g), random_matrix(g, n1, n0), random_plurifunction(g, n1)};
    auto d1 = image_divisor(d0, a);
    PPDMorphism b{random_mobius(g), random_matrix(g, n2, n1), random_plurifunction(g, n2)};
    auto d2 = image_divisor(d1, b);
    PPDMorphism c{random_mobius(g), random_matrix(g, n3, n2), random_plurifunction(g, n3)};
    auto d3 = image_divisor(d2, c);
    auto ba = compose_morphisms(b, a);
    bool ok = verify_morphism(d0, d1, a).ok && verify_morphism(d1, d2, b).ok && verify_morphism(d0, d2, ba).ok &&
              verify_morphism(d0, d3, compose_morphisms(c, ba)).ok &&
              compose_morphisms(c, ba) == compose_morphisms(compose_morphisms(c, b), a);
    t.check(ok, [&] { return to_string(d0); });
  }
  return t.done();
}

inline SuiteResult plurifunction_evaluation(unsigned seed, int cases) {
  Gen g(seed);
  Tally t("plurifunction evaluation: homomorphism in m and div(𝔣(m)) = div(𝔣)(m)");
  auto f = gaussian_rationals();
  auto line = BaseVariety::line(f);
  for (int k = 0; k < cases; ++k) {
    std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    Plurifunction pf(n, f);
    for (long i = g.integer(0, 3); i > 0; --i) pf.add(g.lattice(n), random_function(g, f));
    DualVector m = g.dual(n), m2 = g.dual(n);
    QDivisor lhs = divisor_of_function(pf.eval(m), line), rhs;
    for (const auto& [p, poly] : plurifunction_principal_divisor(pf, Cone::zero(n), line))
      rhs.add(p, poly.support_value(m).value);
    bool ok = pf.eval(m + m2) == pf.eval(m) * pf.eval(m2) && lhs == rhs;
    t.check(ok, [&] { return "m=" + to_string(m) + " m'=" + to_string(m2); });
  }
  return t.done();
}

inline SuiteResult simplex_vs_elimination(unsigned seed, int cases) {
  Gen g(seed);
  Tally t("simplex agrees with Fourier-Motzkin elimination");
  for (int k = 0; k < cases; ++k) {
    LinearProgram p;
    std::size_t n = g.integer(1, 6);
    for (std::size_t j = 0; j < n; ++j) p.var("x" + std::to_string(j));
    for (long rows = g.integer(1, 10); rows > 0; --rows) {
      linalg::Row a(n);
      for (auto& x : a) x = g.integer(-3, 3);
      Rational b = g.rational(-4, 4, 2);
      if (g.integer(0, 5) == 0)
        p.eq(a, b);
      else
        p.ge(a, b);
    }
    for (auto& c : p.objective) c = g.integer(-2, 2);
    for (std::size_t j = 0; j < n; ++j) {
      linalg::Row a(n, Rational(0));
      a[j] = 1;
      p.ge(a, -10);
      a[j] = -1;
      p.ge(a, -10);
    }
    auto r = solve(p);
    bool infeasible = r.status == LpResult::Status::Infeasible;
    bool ok = infeasible != fm_eliminate(p);
    if (infeasible)
      ok = ok && r.farkas && check_farkas(p, *r.farkas);
    else
      ok = ok && r.status == LpResult::Status::Optimal && p.satisfied_by(r.assignment);
    t.check(ok, [&] { return "case " + std::to_string(k) + " status " + status_name(r.status); });
  }
  return t.done();
}

}  // namespace selftest

/// The randomized identity suites with their fixed case counts; suites run
/// concurrently under `jobs`, results come back in a fixed order.
inline std::vector<SuiteResult> run_property_suites(unsigned seed = 2026, unsigned jobs = 1) {
  using Suite = SuiteResult (*)(unsigned, int);
  const std::vector<std::pair<Suite, int>> suites = {
      {selftest::face_lemma_part_one, 1000},   {selftest::face_lemma_part_three, 1000},
      {selftest::cpl_superadditivity, 500},    {selftest::localization_identity, 500},
      {selftest::morphism_composition, 200},   {selftest::plurifunction_evaluation, 200},
      {selftest::simplex_vs_elimination, 100},
  };
  return parallel_map(suites.size(), jobs, [&](std::size_t i) {
    return suites[i].first(seed + static_cast<unsigned>(i), suites[i].second);
  });
}

}  // namespace divfan
