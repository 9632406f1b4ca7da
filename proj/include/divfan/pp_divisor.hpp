#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divfan/base_geometry.hpp"

namespace divfan {

/// Σ Δ_p ⊗ {p} over a base. Points not listed carry the tail cone; empty
/// coefficients cut the locus. Only the restriction to the locus matters,
/// so equality compares locus, tail and nontrivial coefficients.
class PPDivisor {
 public:
  struct Entry {
    BasePoint point;
    std::optional<Polyhedron> poly;  // nullopt = ∅
  };

  PPDivisor() = default;
  static PPDivisor make(const BaseVariety& base, const Cone& tail, const std::vector<Entry>& entries,
                        std::string name = {}) {
    PPDivisor d;
    d.base_ = base;
    d.tail_ = tail;
    d.name_ = std::move(name);
    std::set<BasePoint> seen;
    for (const auto& e : entries) {
      if (!seen.insert(e.point).second)
        throw Error(ErrorKind::MalformedInput, "two coefficients at point " + to_string(e.point));
      if (!base.contains(e.point)) continue;
      d.set(e.point, e.poly);
    }
    if (base.is_point() && d.empties_.count(BasePoint::sole()))
      throw Error(ErrorKind::EmptyLocus, "every point of the base carries an empty coefficient");
    return d;
  }
  /// The toric case: a single cone over a point.
  static PPDivisor toric(const Cone& c, std::string name = {}, FieldRef field = rationals()) {
    return make(BaseVariety::point(std::move(field)), c, {}, std::move(name));
  }

  const BaseVariety& base() const { return base_; }
  std::size_t rank() const { return tail_.ambient_rank(); }
  const Cone& tail() const { return tail_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::map<BasePoint, Polyhedron>& coefficients() const { return coeffs_; }
  const std::set<BasePoint>& empties() const { return empties_; }

  BaseVariety locus() const { return base_.remove(empties_); }
  bool in_locus(const BasePoint& p) const { return base_.contains(p) && !empties_.count(p); }
  /// Coefficient at p: nullopt when empty or outside the base, the tail when unlisted.
  std::optional<Polyhedron> coefficient(const BasePoint& p) const {
    if (!in_locus(p)) return std::nullopt;
    auto it = coeffs_.find(p);
    if (it != coeffs_.end()) return it->second;
    return Polyhedron::from_cone(tail_);
  }
  /// Points with a nontrivial or empty coefficient.
  std::set<BasePoint> points() const {
    std::set<BasePoint> s = empties_;
    for (const auto& [p, d] : coeffs_) s.insert(p);
    return s;
  }
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (const auto& p : points()) out.push_back({p, coefficient(p)});
    return out;
  }

  bool operator==(const PPDivisor& o) const {
    return base_ == o.base_ && tail_ == o.tail_ && empties_ == o.empties_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const PPDivisor& o) const { return !(*this == o); }
  bool operator<(const PPDivisor& o) const {
    if (tail_ != o.tail_) return tail_ < o.tail_;
    if (empties_ != o.empties_) return empties_ < o.empties_;
    return coeffs_ < o.coeffs_;
  }

 private:
  void set(const BasePoint& p, const std::optional<Polyhedron>& poly) {
    if (!poly || poly->is_empty()) {
      empties_.insert(p);
      return;
    }
    if (poly->ambient_rank() != rank()) throw Error(ErrorKind::RankMismatch, "coefficient rank differs from tail");
    if (*poly != Polyhedron::from_cone(tail_)) coeffs_.insert_or_assign(p, *poly);
  }

  BaseVariety base_ = BaseVariety::point();
  Cone tail_;
  std::string name_;
  std::map<BasePoint, Polyhedron> coeffs_;
  std::set<BasePoint> empties_;
};

inline std::string to_string(const PPDivisor& d) {
  std::string s;
  for (const auto& e : d.entries())
    s += (s.empty() ? "" : " + ") + (e.poly ? to_string(*e.poly) : std::string("empty")) + "@" + to_string(e.point);
  if (s.empty()) s = "0";
  return s + " | tail " + to_string(d.tail());
}

inline void require_lattice_point(const DualVector& m) {
  if (!m.is_integral()) throw Error(ErrorKind::NonIntegralPairing, "m must be a lattice point");
}

/// 𝔇(m) on the locus.
inline QDivisor evaluate(const PPDivisor& d, const DualVector& m) {
  if (!d.tail().dual_contains(m)) throw Error(ErrorKind::OutsideDualCone, to_string(m) + " is not in the dual of the tail");
  QDivisor out;
  if (d.base().is_point()) return out;
  for (const auto& [p, poly] : d.coefficients()) out.add(p, poly.support_value(m).value);
  return out;
}

inline BaseVariety locus(const PPDivisor& d) { return d.locus(); }

inline Polyhedron fiber_polyhedron(const PPDivisor& d, const BasePoint& y) {
  auto c = d.coefficient(y);
  if (!c) throw Error(ErrorKind::OutsideLocus, to_string(y) + " is outside the locus");
  return *c;
}

namespace detail {

/// Σ μ(p)Δ_p with ∅ + Δ = ∅ and 0·∅ = ω; nullopt stands for ∅.
inline std::optional<Polyhedron> weighted_sum_or_empty(const PPDivisor& d, const std::map<BasePoint, Rational>& w) {
  Polyhedron acc = Polyhedron::from_cone(d.tail());
  bool empty = false;
  for (const auto& [p, c] : w) {
    if (c < 0) throw Error(ErrorKind::MalformedInput, "weights must be nonnegative");
    if (c == 0) continue;
    auto poly = d.coefficient(p);
    if (!poly) {
      empty = true;
      continue;
    }
    acc = acc + poly->dilate(c);
  }
  if (empty) return std::nullopt;
  return acc;
}

}  // namespace detail

inline Polyhedron weighted_sum(const PPDivisor& d, const std::map<BasePoint, Rational>& weights) {
  for (const auto& [p, c] : weights)
    if (c != 0 && !d.in_locus(p)) throw Error(ErrorKind::OutsideLocus, to_string(p) + " is outside the locus");
  return *detail::weighted_sum_or_empty(d, weights);
}

inline PPDivisor intersect_ppdivisors(const PPDivisor& a, const PPDivisor& b) {
  if (a.base() != b.base()) throw Error(ErrorKind::BaseMismatch, "intersection needs a common base");
  if (a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "intersection needs a common lattice");
  std::set<BasePoint> pts = a.points();
  for (const auto& p : b.points()) pts.insert(p);
  std::vector<PPDivisor::Entry> entries;
  for (const auto& p : pts) {
    auto x = a.coefficient(p), y = b.coefficient(p);
    if (!x || !y) {
      entries.push_back({p, std::nullopt});
      continue;
    }
    entries.push_back({p, x->intersect(*y)});
  }
  return PPDivisor::make(a.base(), a.tail().intersect(b.tail()), entries);
}

/// 𝔇_f: faces by m, with ∅ over the zero set Z(f) = Supp(div f + 𝔇(m)).
struct Localization {
  PPDivisor divisor;
  std::set<BasePoint> zero_set;
};

inline std::set<BasePoint> zero_set(const PPDivisor& d, const DualVector& m, const RationalFunction& f) {
  std::set<BasePoint> z;
  if (d.base().is_point()) return z;
  auto loc = d.locus();
  auto sum = divisor_of_function(f, loc) + evaluate(d, m).restrict_to(loc);
  return sum.support();
}

inline Localization localize_with_zero_set(const PPDivisor& d, const DualVector& m, const RationalFunction& f) {
  require_lattice_point(m);
  if (!d.tail().dual_contains(m)) throw Error(ErrorKind::OutsideDualCone, to_string(m) + " is not in the dual of the tail");
  auto loc = d.locus();
  if (!section_membership(f, evaluate(d, m), loc))
    throw Error(ErrorKind::NotASection, to_string(f) + " is not a section of D(" + to_string(m) + ")");
  auto z = zero_set(d, m, f);
  std::vector<PPDivisor::Entry> entries;
  for (const auto& p : d.points()) {
    if (z.count(p)) continue;
    auto c = d.coefficient(p);
    entries.push_back({p, c ? std::optional<Polyhedron>(c->face_by(m)) : std::nullopt});
  }
  for (const auto& p : z) entries.push_back({p, std::nullopt});
  return {PPDivisor::make(d.base(), d.tail().face_by(m), entries, d.name()), z};
}

inline PPDivisor localize(const PPDivisor& d, const DualVector& m, const RationalFunction& f) {
  return localize_with_zero_set(d, m, f).divisor;
}

struct LocalizationIdentity {
  Verdict verdict;
  long k = 0;
};

/// 𝔇_f(m') = 𝔇(m'+km)|_{Y_f} − 𝔇(km)|_{Y_f}. The shift k is the least one for
/// which m'+km is in the dual of the tail and every minimizer of m'+km over
/// each coefficient already lies in its m-face.
inline LocalizationIdentity localization_identity_check(const PPDivisor& d, const DualVector& m,
                                                        const RationalFunction& f, const DualVector& mp) {
  auto loc = localize_with_zero_set(d, m, f);
  const auto& df = loc.divisor;
  if (!df.tail().dual_contains(mp))
    throw Error(ErrorKind::OutsideDualCone, "m' is not in the dual of the localized tail");
  Rational kq = 0;
  auto need = [&](const Rational& gain, const Rational& deficit) {
    // k·gain ≥ deficit with gain > 0.
    if (gain > 0) kq = std::max(kq, Rational(deficit / gain));
  };
  for (const auto& r : d.tail().rays()) need(pairing(m, r), -pairing(mp, r));
  for (const auto& l : d.tail().lineality()) {
    need(pairing(m, l), -pairing(mp, l));
    need(-pairing(m, l), pairing(mp, l));
  }
  for (const auto& [p, poly] : d.coefficients()) {
    auto face = poly.face_by(m);
    for (const auto& v : poly.vertices()) {
      if (face.contains(v)) continue;
      for (const auto& w : face.vertices()) need(pairing(m, v - w), pairing(mp, w - v));
    }
  }
  long k = to_long(ceil_of(kq));
  DualVector km = m * Rational(k);
  auto yf = df.locus();
  QDivisor lhs = evaluate(df, mp).restrict_to(yf);
  QDivisor rhs = (evaluate(d, mp + km) - evaluate(d, km)).restrict_to(yf);
  if (lhs != rhs) return {Verdict::fail("identity", to_string(lhs) + " != " + to_string(rhs)), k};
  return {Verdict::pass(), k};
}

inline PPDivisor pullback(const PPDivisor& d, const SemilinearBaseMap& psi) {
  if (d.base().is_point()) return d;
  auto inv = psi.inverse();
  std::vector<PPDivisor::Entry> entries;
  for (const auto& e : d.entries()) entries.push_back({inv.apply(e.point), e.poly});
  return PPDivisor::make(psi.pullback(d.base()), d.tail(), entries, d.name());
}

inline PPDivisor pushforward(const PPDivisor& d, const IntMatrix& F, const Cone& target_tail) {
  if (F.cols() != d.rank() || F.rows() != target_tail.ambient_rank())
    throw Error(ErrorKind::RankMismatch, "matrix shape does not match the lattices");
  if (!target_tail.contains(d.tail().image(F)))
    throw Error(ErrorKind::TailViolation, "F does not map the tail into the target tail");
  std::vector<PPDivisor::Entry> entries;
  for (const auto& e : d.entries())
    entries.push_back({e.point, e.poly ? std::optional<Polyhedron>(e.poly->image(F, target_tail)) : std::nullopt});
  return PPDivisor::make(d.base(), target_tail, entries, d.name());
}

/// (ψ, F, 𝔣): ψ on the base, F: N → N', 𝔣 a plurifunction over N'.
struct PPDMorphism {
  SemilinearBaseMap psi;
  IntMatrix F;
  Plurifunction plurifn;
  bool point_collapse = false;  // the target base is a point

  static PPDMorphism identity(const PPDivisor& d) {
    FieldRef f = d.base().field();
    return {SemilinearBaseMap::identity(f), IntMatrix::identity(d.rank()), Plurifunction::one(d.rank(), f), false};
  }
  BasePoint image(const BasePoint& p) const { return point_collapse ? BasePoint::sole() : psi.apply(p); }
  bool operator==(const PPDMorphism& o) const {
    return psi == o.psi && F == o.F && plurifn == o.plurifn && point_collapse == o.point_collapse;
  }
};

/// ψ*(𝔇') ≤ F_*(𝔇) + div(𝔣): at each point p of the source locus,
/// F(Δ_p) + ω' + Σ ord_p(fᵢ)vᵢ ⊆ Δ'_{ψ(p)}.
inline Verdict verify_morphism(const PPDivisor& src, const PPDivisor& dst, const PPDMorphism& phi) {
  if (phi.F.cols() != src.rank() || phi.F.rows() != dst.rank())
    return Verdict::fail("ranks", "F has shape incompatible with the lattices");
  if (phi.plurifn.rank() != dst.rank()) return Verdict::fail("ranks", "plurifunction lives on the wrong lattice");
  if (!dst.tail().contains(src.tail().image(phi.F))) return Verdict::fail("tail", "F(tail) is not inside the target tail");
  if (src.base().is_point()) {
    // Over a point both sides are tail cones; the tail clause settles it.
    return Verdict::pass();
  }
  auto inv = phi.point_collapse ? phi.psi : phi.psi.inverse();
  std::set<BasePoint> pts = src.points();
  for (const auto& p : phi.plurifn.support(src.base())) pts.insert(p);
  if (!phi.point_collapse) {
    for (const auto& q : dst.points()) pts.insert(inv.apply(q));
    for (const auto& q : dst.base().removed()) pts.insert(inv.apply(q));
  }
  for (const auto& p : pts) {
    auto src_c = src.coefficient(p);
    if (!src_c) continue;
    auto rhs = src_c->image(phi.F, dst.tail()).translate(phi.plurifn.order_at(p));
    BasePoint q = phi.image(p);
    auto lhs = dst.coefficient(q);
    if (!lhs) return Verdict::fail("containment", to_string(p) + " maps to " + to_string(q) + " outside the target locus");
    if (!rhs.subset_of(*lhs))
      return Verdict::fail("containment", "at " + to_string(p) + ": " + to_string(rhs) + " not inside " + to_string(*lhs));
  }
  return Verdict::pass();
}

/// b ∘ a = (ψ_b∘ψ_a, F_b F_a, F_b*(𝔣_a)·ψ_a*(𝔣_b)).
inline PPDMorphism compose_morphisms(const PPDMorphism& b, const PPDMorphism& a) {
  if (b.F.cols() != a.F.rows()) throw Error(ErrorKind::ChainMismatch, "lattice maps do not chain");
  if (a.point_collapse) throw Error(ErrorKind::ChainMismatch, "cannot continue past a point-collapse");
  return {b.point_collapse ? a.psi : b.psi.compose(a.psi), b.F * a.F,
          a.plurifn.push(b.F) * a.psi.pullback(b.plurifn), b.point_collapse};
}

struct FaceWitness {
  DualVector m;
  RationalFunction f;
};
using FaceCertificate = std::vector<FaceWitness>;

/// Face clauses: coefficientwise containment, sections, the locus union
/// Loc(𝔇') = ⋃ Loc(𝔇)_{fᵢ}, and face(Δ'_p, mᵢ) = face(Δ_p, mᵢ) off Z(fᵢ).
namespace detail {

inline Verdict face_preconditions(const PPDivisor& sub, const PPDivisor& super) {
  if (sub.base() != super.base()) return Verdict::fail("base", "sub and super live over different bases");
  if (sub.rank() != super.rank()) return Verdict::fail("rank", "sub and super have different lattices");
  if (!super.tail().contains(sub.tail())) return Verdict::fail("containment", "tail of sub is not inside tail of super");
  std::set<BasePoint> pts = sub.points();
  for (const auto& p : super.points()) pts.insert(p);
  for (const auto& p : pts) {
    auto a = sub.coefficient(p), b = super.coefficient(p);
    if (a && (!b || !a->subset_of(*b))) return Verdict::fail("containment", "coefficient at " + to_string(p));
  }
  return Verdict::pass();
}

}  // namespace detail

inline Verdict verify_face(const PPDivisor& sub, const PPDivisor& super, const FaceCertificate& cert) {
  if (auto v = detail::face_preconditions(sub, super); !v) return v;
  std::set<BasePoint> pts = sub.points();
  for (const auto& p : super.points()) pts.insert(p);
  if (cert.empty()) return Verdict::fail("locus", "empty certificate covers nothing");
  std::optional<std::set<BasePoint>> meet;
  std::vector<std::set<BasePoint>> zs;
  for (const auto& w : cert) {
    if (!w.m.is_integral() || !super.tail().dual_contains(w.m))
      return Verdict::fail("certificate", to_string(w.m) + " is not a lattice point of the dual tail");
    if (!section_membership(w.f, evaluate(super, w.m), super.locus()))
      return Verdict::fail("certificate", to_string(w.f) + " is not a section of D(" + to_string(w.m) + ")");
    auto z = zero_set(super, w.m, w.f);
    zs.push_back(z);
    if (!meet) {
      meet = z;
    } else {
      std::set<BasePoint> keep;
      for (const auto& p : *meet)
        if (z.count(p)) keep.insert(p);
      meet = keep;
    }
  }
  // Loc(super) ∖ ⋂Z must equal Loc(sub).
  std::set<BasePoint> cut;
  for (const auto& p : sub.empties())
    if (super.in_locus(p)) cut.insert(p);
  if (*meet != cut) {
    std::string s;
    for (const auto& p : *meet) s += to_string(p) + " ";
    return Verdict::fail("locus", "common zero set {" + s + "} differs from the removed locus");
  }
  for (std::size_t i = 0; i < cert.size(); ++i) {
    const auto& m = cert[i].m;
    if (sub.tail().face_by(m) != super.tail().face_by(m))
      return Verdict::fail("faces", "generic point, m = " + to_string(m));
    for (const auto& p : pts) {
      if (!super.in_locus(p) || zs[i].count(p)) continue;
      auto a = sub.coefficient(p), b = super.coefficient(p);
      if (!a) return Verdict::fail("faces", to_string(p) + " lies off Z(f) but outside Loc(sub)");
      if (a->face_by(m) != b->face_by(m)) return Verdict::fail("faces", "at " + to_string(p) + ", m = " + to_string(m));
    }
  }
  return Verdict::pass();
}

namespace detail {

/// Lattice points of a pointed cone that are combinations of its Hilbert
/// basis with coefficients in [0, bound].
inline std::vector<DualVector> bounded_combinations(const MCone& c, long bound) {
  auto hb = hilbert_basis(c);
  std::set<DualVector> out{DualVector::zero(c.ambient_rank())};
  for (const auto& h : hb) {
    std::set<DualVector> next = out;
    for (const auto& x : out)
      for (long k = 1; k <= bound; ++k) next.insert(x + h * Rational(k));
    out.swap(next);
  }
  return {out.begin(), out.end()};
}

/// Cells of the common refinement of the coefficient quasifans, split into
/// orthants where needed so that every cell is pointed.
inline std::vector<MCone> refinement_cells(const PPDivisor& super, const PPDivisor& sub) {
  const std::size_t n = super.rank();
  MCone dual = super.tail().dual();
  std::vector<MCone> cells{dual};
  auto refine = [&](const Polyhedron& poly) {
    std::vector<MCone> next;
    for (const auto& c : normal_quasifan(poly)) {
      for (const auto& cell : cells) {
        auto x = cell.intersect(c.cone);
        if (x.dim() == cell.dim()) next.push_back(x);
      }
    }
    if (!next.empty()) cells.swap(next);
  };
  for (const auto* d : {&super, &sub})
    for (const auto& [p, poly] : d->coefficients())
      if (poly.tail().dual().contains(super.tail().dual())) refine(poly);
  std::vector<MCone> pointed;
  for (const auto& cell : cells) {
    if (cell.is_pointed()) {
      pointed.push_back(cell);
      continue;
    }
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<DualVector> orth;
      for (std::size_t i = 0; i < n; ++i) orth.push_back(DualVector::unit(n, i) * Rational((mask >> i) & 1 ? -1 : 1));
      pointed.push_back(cell.intersect(MCone::from_generators(n, orth)));
    }
  }
  return pointed;
}

inline long norm1(const DualVector& m) {
  long s = 0;
  for (const auto& x : m.c) s += std::labs(to_long(x));
  return s;
}

}  // namespace detail

/// Bounded search for a face certificate; nullopt means "not found within the bound".
inline std::optional<FaceCertificate> search_face(const PPDivisor& sub, const PPDivisor& super, long bound) {
  if (super.rank() > kHilbertRankBudget) throw Error(ErrorKind::RankBudgetExceeded, "face search rank exceeds 3");
  if (!detail::face_preconditions(sub, super)) return std::nullopt;

  std::set<DualVector> mset;
  for (const auto& cell : detail::refinement_cells(super, sub))
    for (const auto& m : detail::bounded_combinations(cell, bound)) mset.insert(m);
  std::vector<DualVector> ms;
  for (const auto& m : mset)
    if (super.tail().dual_contains(m) && sub.tail().face_by(m) == super.tail().face_by(m)) ms.push_back(m);
  std::stable_sort(ms.begin(), ms.end(),
                   [](const DualVector& a, const DualVector& b) { return detail::norm1(a) < detail::norm1(b); });

  FieldRef field = super.base().field();
  // Roots may sit off the locus: 1/t is a section over the line minus {0}.
  std::vector<BasePoint> roots;
  if (!super.base().is_point()) {
    std::set<BasePoint> pts = super.points();
    for (const auto& p : sub.points()) pts.insert(p);
    for (const auto& p : super.base().removed()) pts.insert(p);
    for (const auto& p : pts)
      if (p.is_finite()) roots.push_back(p);
  }
  std::set<BasePoint> cut;
  for (const auto& p : sub.empties())
    if (super.in_locus(p)) cut.insert(p);

  std::set<BasePoint> all_pts = super.points();
  for (const auto& p : sub.points()) all_pts.insert(p);
  auto faces_agree = [&](const DualVector& m, const std::set<BasePoint>& z) {
    for (const auto& p : all_pts) {
      if (!super.in_locus(p) || z.count(p)) continue;
      auto a = sub.coefficient(p), b = super.coefficient(p);
      if (!a || a->face_by(m) != b->face_by(m)) return false;
    }
    return true;
  };

  FaceCertificate chosen;
  std::optional<std::set<BasePoint>> meet;
  auto consider = [&](const DualVector& m, const RationalFunction& f) -> bool {
    if (!section_membership(f, evaluate(super, m), super.locus())) return false;
    auto z = zero_set(super, m, f);
    for (const auto& p : cut)
      if (!z.count(p)) return false;
    if (!faces_agree(m, z)) return false;
    std::set<BasePoint> next;
    if (!meet) {
      next = z;
    } else {
      for (const auto& p : *meet)
        if (z.count(p)) next.insert(p);
      if (next == *meet) return false;
    }
    meet = next;
    chosen.push_back({m, f});
    return *meet == cut;
  };

  bool done = false;
  for (const auto& m : ms) {
    if (done) break;
    if (super.base().is_point()) {
      done = consider(m, RationalFunction::one(field));
      continue;
    }
    // c = 1 and ∏(t − a)^e with |e| ≤ bound, smallest total exponent first.
    std::vector<std::map<BasePoint, long>> exps{{}};
    for (const auto& r : roots) {
      std::vector<std::map<BasePoint, long>> next;
      for (const auto& e : exps)
        for (long k = -bound; k <= bound; ++k) {
          auto x = e;
          if (k != 0) x[r] = k;
          next.push_back(x);
        }
      exps.swap(next);
    }
    auto weight = [](const std::map<BasePoint, long>& e) {
      long s = 0;
      for (const auto& [p, k] : e) s += std::labs(k);
      return s;
    };
    std::stable_sort(exps.begin(), exps.end(), [&](const auto& a, const auto& b) { return weight(a) < weight(b); });
    for (const auto& e : exps) {
      if (consider(m, RationalFunction::make(FieldElement::from_rational(field, 1), e))) {
        done = true;
        break;
      }
    }
  }
  if (!done) return std::nullopt;
  // Drop witnesses that the rest already cover, then re-verify.
  for (std::size_t i = chosen.size(); i-- > 0;) {
    if (chosen.size() == 1) break;
    auto trial = chosen;
    trial.erase(trial.begin() + static_cast<long>(i));
    if (verify_face(sub, super, trial).ok) chosen = trial;
  }
  if (!verify_face(sub, super, chosen).ok) return std::nullopt;
  return chosen;
}

/// Properness on a curve or point base: shared tail, pointed tail, and
/// 𝔇(m) big for sampled interior m and semiample for sampled boundary m.
struct ProperReport {
  Verdict verdict;
  std::optional<DualVector> failing_m;
  std::size_t samples = 0;
};

inline std::vector<DualVector> properness_samples(const Cone& tail) {
  const std::size_t n = tail.ambient_rank();
  MCone dual = tail.dual();
  std::set<DualVector> s{DualVector::zero(n)};
  if (dual.is_pointed() && n <= kHilbertRankBudget) {
    auto hb = hilbert_basis(dual);
    DualVector all = DualVector::zero(n);
    for (const auto& h : hb) {
      s.insert(h);
      all = all + h;
      for (const auto& h2 : hb) s.insert(h + h2);
    }
    s.insert(all);
  } else {
    std::vector<long> lo(n, -2), hi(n, 2), cur(n);
    detail::enumerate_box(lo, hi, 0, cur, [&](const std::vector<long>& p) {
      DualVector m = DualVector::zero(n);
      for (std::size_t i = 0; i < n; ++i) m.c[i] = p[i];
      if (dual.contains(m)) s.insert(m);
    });
  }
  return {s.begin(), s.end()};
}

inline ProperReport check_proper(const PPDivisor& d) {
  ProperReport r;
  if (!d.tail().is_pointed()) {
    r.verdict = Verdict::fail("tail", "tail cone is not pointed");
    return r;
  }
  for (const auto& [p, poly] : d.coefficients())
    if (poly.tail() != d.tail()) {
      r.verdict = Verdict::fail("tail", "coefficient at " + to_string(p) + " has tail " + to_string(poly.tail()));
      return r;
    }
  MCone dual = d.tail().dual();
  auto loc = d.locus();
  auto samples = properness_samples(d.tail());
  r.samples = samples.size();
  for (const auto& m : samples) {
    auto pos = classify_positivity(evaluate(d, m), loc);
    bool interior = dual.relint_contains(m);
    if (interior && !pos.big) {
      r.verdict = Verdict::fail("big", "D(" + to_string(m) + ") is not big");
      r.failing_m = m;
      return r;
    }
    if (!pos.semiample) {
      r.verdict = Verdict::fail("semiample", "D(" + to_string(m) + ") is not semiample");
      r.failing_m = m;
      return r;
    }
  }
  r.verdict = Verdict::pass();
  return r;
}

}  // namespace divfan
