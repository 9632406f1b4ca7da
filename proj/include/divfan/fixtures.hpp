#pragma once

#include <string>
#include <vector>

#include "divfan/galois.hpp"
#include "divfan/pp_divisor.hpp"

namespace divfan::fixtures {

inline BasePoint pt(long a, const FieldRef& f = rationals()) {
  return BasePoint::finite(FieldElement::from_rational(f, a));
}
inline BasePoint pt_inf() { return BasePoint::infinity(); }

inline Cone ray1(long s) { return Cone::from_generators(1, {LatticeVector{Rational(s)}}); }
inline Polyhedron interval(const Rational& lo, const Rational& hi) {
  return Polyhedron::make({LatticeVector{lo}, LatticeVector{hi}}, Cone::zero(1));
}
inline Polyhedron half_line(const Rational& v, long dir) { return Polyhedron::make({LatticeVector{v}}, ray1(dir)); }

/// Maximal pp-divisors of the Hirzebruch surface 𝔽_r as a ℂ*-surface over P¹.
/// Slices: at 0 the cuts are 0 and 1, at ∞ they are −1/(r+1) and 0.
inline std::vector<PPDivisor> hirzebruch_members(long r) {
  auto y = BaseVariety::line(rationals());
  Rational c = Rational(-1) / Rational(r + 1);
  return {
      PPDivisor::make(y, ray1(1), {{pt(0), half_line(1, 1)}}, "D_omega1"),
      PPDivisor::make(y, Cone::zero(1), {{pt(0), std::nullopt}, {pt_inf(), interval(c, 0)}}, "D_omega2"),
      PPDivisor::make(y, ray1(-1), {{pt_inf(), half_line(c, -1)}}, "D_omega3"),
      PPDivisor::make(y, Cone::zero(1), {{pt(0), interval(0, 1)}, {pt_inf(), std::nullopt}}, "D_omega4"),
  };
}

/// Tail cones of the toric surface 𝔽_r: rays (1,0), (0,1), (−1,r), (0,−1).
inline std::vector<Cone> hirzebruch_toric_cones(long r) {
  LatticeVector a{1, 0}, b{0, 1}, c{-1, Rational(r)}, d{0, -1};
  return {Cone::from_generators(2, {a, b}), Cone::from_generators(2, {b, c}), Cone::from_generators(2, {c, d}),
          Cone::from_generators(2, {d, a})};
}

/// A complete simplicial fan in rank 3 with no strictly concave support function:
/// the positive octant is subdivided around the triangle w1 w2 w3.
inline std::vector<Cone> nonprojective_toric_cones() {
  LatticeVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1}, e0{-1, -1, -1};
  LatticeVector w1{2, 1, 1}, w2{1, 2, 1}, w3{1, 1, 2};
  auto c = [](std::vector<LatticeVector> g) { return Cone::from_generators(3, g); };
  return {c({w1, w2, w3}), c({e1, e2, w2}), c({e1, w2, w1}), c({e2, e3, w3}), c({e2, w3, w2}),
          c({e3, e1, w1}),  c({e3, w1, w3}), c({e1, e2, e0}), c({e2, e3, e0}), c({e3, e1, e0})};
}

inline std::vector<PPDivisor> toric_members(const std::vector<Cone>& cones, const std::string& prefix = "sigma") {
  std::vector<PPDivisor> out;
  for (std::size_t i = 0; i < cones.size(); ++i) out.push_back(PPDivisor::toric(cones[i], prefix + std::to_string(i)));
  return out;
}

/// Charts of A¹×P¹ as a ℂ*-variety over P¹ with Δ = [1,∞): the two affine
/// charts and their common open.
inline std::vector<PPDivisor> s1_members() {
  auto y = BaseVariety::line(rationals());
  auto delta = half_line(1, 1);
  return {
      PPDivisor::make(y, ray1(1), {{pt(0), std::nullopt}, {pt_inf(), delta}}, "S1_a"),
      PPDivisor::make(y, ray1(1), {{pt(0), delta}, {pt_inf(), std::nullopt}}, "S1_b"),
      PPDivisor::make(y, ray1(1), {{pt(0), std::nullopt}, {pt_inf(), std::nullopt}}, "S1_c"),
  };
}

/// Two pp-divisors over the affine line whose union is not separated:
/// [0,1]⊗{0} + [0,1]⊗{1} and [1,2]⊗{0} + [−1,0]⊗{1}.
inline std::vector<PPDivisor> nonseparated_pair() {
  auto y = BaseVariety::open(rationals(), {pt_inf()});
  return {
      PPDivisor::make(y, Cone::zero(1), {{pt(0), interval(0, 1)}, {pt(1), interval(0, 1)}}, "sep_D"),
      PPDivisor::make(y, Cone::zero(1), {{pt(0), interval(1, 2)}, {pt(1), interval(-1, 0)}}, "sep_Dprime"),
  };
}

/// Quadrants of ℚ² numbered counterclockwise from the positive one.
inline Cone quadrant(int k) {
  long sx = (k == 1 || k == 4) ? 1 : -1, sy = (k == 1 || k == 2) ? 1 : -1;
  return Cone::from_generators(2, {LatticeVector{Rational(sx), 0}, LatticeVector{0, Rational(sy)}});
}

/// P³ as a T-variety of complexity one over P¹ with the base over ℚ(i).
inline std::vector<PPDivisor> p3_members() {
  FieldRef f = gaussian_rationals();
  auto y = BaseVariety::line(f);
  BasePoint zero = pt(0, f);
  auto poly = [](std::vector<LatticeVector> v, const Cone& t) { return Polyhedron::make(v, t); };
  LatticeVector o{0, 0}, e1{1, 0}, e2{0, 1}, m{-1, -1};
  return {
      PPDivisor::make(y, quadrant(2), {{zero, poly({e2}, quadrant(2))}, {pt_inf(), poly({o, m}, quadrant(2))}}, "D0"),
      PPDivisor::make(y, quadrant(4), {{zero, poly({e1}, quadrant(4))}, {pt_inf(), poly({o, m}, quadrant(4))}}, "D1"),
      PPDivisor::make(y, quadrant(3), {{zero, poly({e2, e1}, quadrant(3))}, {pt_inf(), poly({m}, quadrant(3))}}, "D2"),
      PPDivisor::make(y, quadrant(1), {{zero, poly({e1, e2}, quadrant(1))}}, "D3"),
  };
}

inline FiniteGroup c2() {
  auto g = cyclic_group(2);
  g.elements = {"e", "gamma"};
  return g;
}

/// The toric P¹ fan over ℚ(i) as a divisorial fan over a point.
inline DivisorialFan p1_toric_fan() {
  auto f = gaussian_rationals();
  return closure_generate({PPDivisor::toric(ray1(1), "P1_plus", f), PPDivisor::toric(ray1(-1), "P1_minus", f)});
}

/// C₂ = Gal(ℚ(i)/ℚ) acting on the toric P¹ fan by (γ, ±id, c) with c a constant.
inline GaloisFanAction p1_action(long sign, long constant) {
  auto s = p1_toric_fan();
  auto f = gaussian_rationals();
  auto conj = complex_conjugation();
  GaloisFanAction act{c2(), {FieldAutomorphism::identity(f), conj}, {}};
  Plurifunction pf(1, f);
  if (constant != 1) pf.add(LatticeVector{Rational(1)}, RationalFunction::constant(FieldElement::from_rational(f, constant)));
  SemilinearFanMorphism id{"e", PPDMorphism::identity(s.members()[0]), {}};
  SemilinearFanMorphism g{"gamma", {SemilinearBaseMap::twist_only(conj), IntMatrix::scalar(1, sign), pf, false}, {}};
  act.elements = {complete_assignment(s, id), complete_assignment(s, g)};
  return act;
}

/// C₂ acting on the P³ fan: ψ twists coordinates by conjugation, with the given F and 𝔣 = v ⊗ t.
/// Without an explicit assignment the targets are searched.
inline GaloisFanAction p3_action(const DivisorialFan& s, const IntMatrix& F, const LatticeVector& v,
                                 std::map<std::string, std::string> assignment = {
                                     {"D0", "D1"}, {"D1", "D0"}, {"D2", "D3"}, {"D3", "D2"}}) {
  auto f = gaussian_rationals();
  auto conj = complex_conjugation();
  Plurifunction pf(2, f);
  if (!v.is_zero()) pf.add(v, RationalFunction::linear(FieldElement::from_rational(f, 0)));
  SemilinearFanMorphism id{"e", PPDMorphism::identity(s.members()[0]), {}};
  SemilinearFanMorphism g{"gamma", {SemilinearBaseMap::twist_only(conj), F, pf, false}, std::move(assignment)};
  return {c2(), {FieldAutomorphism::identity(f), conj}, {complete_assignment(s, id), complete_assignment(s, g)}};
}

/// The action as written: F(a,b) = (−b,−a), 𝔣 = 𝟙.
inline GaloisFanAction p3_stated_action(const DivisorialFan& s) {
  return p3_action(s, IntMatrix{{{0, -1}, {-1, 0}}}, LatticeVector{0, 0});
}
/// Swapping x₀↔x₁ and x₂↔x₃ acts on N by −id and needs 𝔣 = (1,1) ⊗ t.
inline GaloisFanAction p3_corrected_action(const DivisorialFan& s) {
  return p3_action(s, IntMatrix::scalar(2, -1), LatticeVector{1, 1});
}

inline SemilinearBaseMap mobius(const FieldRef& f, std::array<FieldElement, 4> m) {
  return SemilinearBaseMap(std::move(m), FieldAutomorphism::identity(f));
}

/// Octahedral generators z ↦ iz and z ↦ (z+1)/(1−z) over ℚ(i), whose vertices are
/// 0, ∞, ±1, ±i. With conjugate = true they are conjugated by h(z) = (z+2)/(z+3),
/// which moves the vertices off 0 and ∞.
inline std::vector<SemilinearBaseMap> s4_generators(bool conjugate) {
  auto f = gaussian_rationals();
  auto q = [&](long a) { return FieldElement::from_rational(f, a); };
  auto i = FieldElement::generator(f);
  std::vector<SemilinearBaseMap> gens{mobius(f, {i, q(0), q(0), q(1)}), mobius(f, {q(1), q(1), q(-1), q(1)})};
  if (!conjugate) return gens;
  auto h = mobius(f, {q(1), q(2), q(1), q(3)});
  for (auto& g : gens) g = h.compose(g).compose(h.inverse());
  return gens;
}

/// The Möbius group generated by s4_generators, identity first.
inline std::vector<SemilinearBaseMap> s4_group(bool conjugate) {
  auto gens = s4_generators(conjugate);
  auto id = SemilinearBaseMap::identity(gaussian_rationals());
  auto r = generate_group(id, gens, [](const SemilinearBaseMap& a, const SemilinearBaseMap& b) { return a.compose(b); });
  if (!r) throw Error(ErrorKind::SizeBudgetExceeded, "Möbius group is larger than 48");
  return r->first;
}

/// 𝔽_r members over ℚ(i), the base field of the Möbius transport.
inline std::vector<PPDivisor> hirzebruch_members_gaussian(long r) {
  auto f = gaussian_rationals();
  auto y = BaseVariety::line(f);
  Rational c = Rational(-1) / Rational(r + 1);
  return {
      PPDivisor::make(y, ray1(1), {{pt(0, f), half_line(1, 1)}}, "D_omega1"),
      PPDivisor::make(y, Cone::zero(1), {{pt(0, f), std::nullopt}, {pt_inf(), interval(c, 0)}}, "D_omega2"),
      PPDivisor::make(y, ray1(-1), {{pt_inf(), half_line(c, -1)}}, "D_omega3"),
      PPDivisor::make(y, Cone::zero(1), {{pt(0, f), interval(0, 1)}, {pt_inf(), std::nullopt}}, "D_omega4"),
  };
}

/// Cyclic permutation (x,y,z) ↦ (z,x,y), a symmetry of the non-projective fan.
inline IntMatrix cyclic_permutation3() { return IntMatrix{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}; }

/// Three planar cones of the non-projective fan meeting only at the origin,
/// over a point. Their union has no strictly concave support function.
inline DivisorialFan fragmented_fan() {
  LatticeVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1}, w1{2, 1, 1}, w2{1, 2, 1}, w3{1, 1, 2};
  return closure_generate({PPDivisor::toric(Cone::from_generators(3, {e3, w1}), "frag0"),
                           PPDivisor::toric(Cone::from_generators(3, {e1, w2}), "frag1"),
                           PPDivisor::toric(Cone::from_generators(3, {e2, w3}), "frag2")});
}

/// C₃ permuting the fragments, with trivial Galois part over ℚ.
inline GaloisFanAction fragmented_action(const DivisorialFan& s) {
  auto q = rationals();
  GaloisFanAction act{cyclic_group(3), {}, {}};
  IntMatrix f = IntMatrix::identity(3);
  for (int k = 0; k < 3; ++k) {
    act.galois.push_back(FieldAutomorphism::identity(q));
    SemilinearFanMorphism g{act.group.elements[k], {SemilinearBaseMap::identity(q), f, Plurifunction::one(3, q), false}, {}};
    act.elements.push_back(complete_assignment(s, g));
    f = cyclic_permutation3() * f;
  }
  return act;
}

}  // namespace divfan::fixtures
