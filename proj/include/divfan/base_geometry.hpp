#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divfan/number_field.hpp"
#include "divfan/polyhedron.hpp"

namespace divfan {

/// A closed point of the base: [a:1], the point at infinity, or the unique
/// point of a zero-dimensional base.
class BasePoint {
 public:
  enum class Kind { Finite, Infinity, Sole };

  static BasePoint finite(const FieldElement& a) { return BasePoint(Kind::Finite, a); }
  static BasePoint infinity() { return BasePoint(Kind::Infinity, std::nullopt); }
  static BasePoint sole() { return BasePoint(Kind::Sole, std::nullopt); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  const FieldElement& value() const { return *a_; }

  bool operator==(const BasePoint& o) const { return kind_ == o.kind_ && (!is_finite() || *a_ == *o.a_); }
  bool operator!=(const BasePoint& o) const { return !(*this == o); }
  /// Finite points in coefficient order, then infinity.
  bool operator<(const BasePoint& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    return is_finite() && *a_ < *o.a_;
  }

 private:
  BasePoint(Kind k, std::optional<FieldElement> a) : kind_(k), a_(std::move(a)) {}
  Kind kind_;
  std::optional<FieldElement> a_;
};

inline std::string to_string(const BasePoint& p) {
  switch (p.kind()) {
    case BasePoint::Kind::Infinity: return "inf";
    case BasePoint::Kind::Sole: return "pt";
    default: return to_string(p.value());
  }
}

/// Y: a point, P¹ over a number field, or P¹ minus finitely many points.
class BaseVariety {
 public:
  enum class Kind { Point, ProjectiveLine, OpenOfProjectiveLine };

  static BaseVariety point(FieldRef field = rationals()) { return BaseVariety(Kind::Point, std::move(field), {}); }
  static BaseVariety line(FieldRef field) { return BaseVariety(Kind::ProjectiveLine, std::move(field), {}); }
  static BaseVariety open(FieldRef field, std::set<BasePoint> removed) {
    if (removed.empty()) return line(std::move(field));
    return BaseVariety(Kind::OpenOfProjectiveLine, std::move(field), std::move(removed));
  }

  Kind kind() const { return kind_; }
  const FieldRef& field() const { return field_; }
  const std::set<BasePoint>& removed() const { return removed_; }
  bool is_point() const { return kind_ == Kind::Point; }
  bool is_curve() const { return kind_ != Kind::Point; }
  bool is_complete() const { return kind_ == Kind::ProjectiveLine; }

  bool contains(const BasePoint& p) const {
    if (is_point()) return p.kind() == BasePoint::Kind::Sole;
    if (p.kind() == BasePoint::Kind::Sole) return false;
    return !removed_.count(p);
  }
  BaseVariety remove(const std::set<BasePoint>& pts) const {
    if (is_point()) {
      if (!pts.empty()) throw Error(ErrorKind::EmptyLocus, "removing the only point of a point base");
      return *this;
    }
    auto r = removed_;
    r.insert(pts.begin(), pts.end());
    return open(field_, r);
  }
  /// Same ambient curve (or both points) over the same field.
  bool same_ambient(const BaseVariety& o) const {
    return is_point() == o.is_point() && (is_point() || same_field(field_, o.field_));
  }

  bool operator==(const BaseVariety& o) const {
    return kind_ == o.kind_ && same_field(field_, o.field_) && removed_ == o.removed_;
  }
  bool operator!=(const BaseVariety& o) const { return !(*this == o); }

 private:
  BaseVariety(Kind k, FieldRef f, std::set<BasePoint> r) : kind_(k), field_(std::move(f)), removed_(std::move(r)) {}
  Kind kind_;
  FieldRef field_;
  std::set<BasePoint> removed_;
};

/// Finite ℚ-linear combination of base points, zero terms pruned.
class QDivisor {
 public:
  QDivisor() = default;
  explicit QDivisor(const std::map<BasePoint, Rational>& t) {
    for (const auto& [p, c] : t) add(p, c);
  }

  const std::map<BasePoint, Rational>& terms() const { return terms_; }
  Rational coeff(const BasePoint& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  void add(const BasePoint& p, const Rational& c) {
    Rational v = coeff(p) + c;
    if (v == 0)
      terms_.erase(p);
    else
      terms_.insert_or_assign(p, v);
  }
  Rational degree() const {
    Rational s = 0;
    for (const auto& [p, c] : terms_) s += c;
    return s;
  }
  bool is_zero() const { return terms_.empty(); }
  bool is_effective() const {
    for (const auto& [p, c] : terms_)
      if (c < 0) return false;
    return true;
  }
  std::set<BasePoint> support() const {
    std::set<BasePoint> s;
    for (const auto& [p, c] : terms_) s.insert(p);
    return s;
  }
  QDivisor floor() const {
    QDivisor d;
    for (const auto& [p, c] : terms_) d.add(p, Rational(floor_of(c)));
    return d;
  }
  QDivisor restrict_to(const BaseVariety& y) const {
    QDivisor d;
    for (const auto& [p, c] : terms_)
      if (y.contains(p)) d.add(p, c);
    return d;
  }

  QDivisor operator+(const QDivisor& o) const {
    QDivisor d = *this;
    for (const auto& [p, c] : o.terms_) d.add(p, c);
    return d;
  }
  QDivisor operator-() const {
    QDivisor d;
    for (const auto& [p, c] : terms_) d.add(p, -c);
    return d;
  }
  QDivisor operator-(const QDivisor& o) const { return *this + (-o); }
  QDivisor operator*(const Rational& s) const {
    QDivisor d;
    for (const auto& [p, c] : terms_) d.add(p, c * s);
    return d;
  }
  /// Pointwise order.
  bool operator<=(const QDivisor& o) const { return (o - *this).is_effective(); }
  bool operator==(const QDivisor& o) const { return terms_ == o.terms_; }
  bool operator!=(const QDivisor& o) const { return !(*this == o); }

 private:
  std::map<BasePoint, Rational> terms_;
};

inline std::string to_string(const QDivisor& d) {
  if (d.is_zero()) return "0";
  std::string s;
  for (const auto& [p, c] : d.terms()) s += (s.empty() ? "" : " + ") + to_string(c) + "{" + to_string(p) + "}";
  return s;
}

/// c·∏(t − a)^e on P¹ with distinct finite roots and nonzero exponents.
class RationalFunction {
 public:
  RationalFunction() = default;
  static RationalFunction constant(const FieldElement& c) {
    if (c.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero is not a unit of the function field");
    RationalFunction f;
    f.c_ = c;
    return f;
  }
  static RationalFunction one(const FieldRef& field) { return constant(FieldElement::from_rational(field, 1)); }
  /// t − a.
  static RationalFunction linear(const FieldElement& a) {
    auto f = one(a.field());
    f.factors_[BasePoint::finite(a)] = 1;
    return f;
  }
  static RationalFunction make(const FieldElement& c, const std::map<BasePoint, long>& factors) {
    auto f = constant(c);
    for (const auto& [p, e] : factors) {
      if (!p.is_finite()) throw Error(ErrorKind::MalformedInput, "factor roots must be finite points");
      if (!same_field(p.value().field(), c.field())) throw Error(ErrorKind::FieldMismatch, "root field differs");
      if (e != 0) f.factors_[p] = e;
    }
    return f;
  }

  const FieldElement& constant_term() const { return *c_; }
  const FieldRef& field() const { return c_->field(); }
  const std::map<BasePoint, long>& factors() const { return factors_; }
  bool is_constant() const { return factors_.empty(); }
  long total_exponent() const {
    long s = 0;
    for (const auto& [p, e] : factors_) s += e;
    return s;
  }
  long order_at(const BasePoint& p) const {
    if (p.kind() == BasePoint::Kind::Sole) return 0;
    if (p.is_infinity()) return -total_exponent();
    auto it = factors_.find(p);
    return it == factors_.end() ? 0 : it->second;
  }

  RationalFunction operator*(const RationalFunction& o) const {
    RationalFunction f;
    f.c_ = *c_ * *o.c_;
    f.factors_ = factors_;
    for (const auto& [p, e] : o.factors_) {
      long v = (f.factors_.count(p) ? f.factors_[p] : 0) + e;
      if (v == 0)
        f.factors_.erase(p);
      else
        f.factors_[p] = v;
    }
    return f;
  }
  RationalFunction pow(long k) const {
    RationalFunction f;
    f.c_ = c_->pow(k);
    if (k != 0)
      for (const auto& [p, e] : factors_) f.factors_[p] = e * k;
    return f;
  }
  RationalFunction inverse() const { return pow(-1); }

  bool operator==(const RationalFunction& o) const { return *c_ == *o.c_ && factors_ == o.factors_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

 private:
  std::optional<FieldElement> c_;
  std::map<BasePoint, long> factors_;
};

inline std::string to_string(const RationalFunction& f) {
  std::string s = "(" + to_string(f.constant_term()) + ")";
  for (const auto& [p, e] : f.factors()) s += "*(t-(" + to_string(p) + "))^" + std::to_string(e);
  return s;
}

/// div(f) on the full line, restricted to the base. Degree 0 before restriction.
inline QDivisor divisor_of_function(const RationalFunction& f, const BaseVariety& base) {
  if (base.is_point()) throw Error(ErrorKind::UnsupportedBase, "divisors of functions need a curve base");
  QDivisor d;
  for (const auto& [p, e] : f.factors()) d.add(p, e);
  d.add(BasePoint::infinity(), -f.total_exponent());
  return d.restrict_to(base);
}

struct Positivity {
  bool big = false;
  bool semiample = false;
};

inline Positivity classify_positivity(const QDivisor& d, const BaseVariety& base) {
  if (base.is_point()) return {d.is_zero(), d.is_zero()};
  if (!base.is_complete()) return {true, true};
  Rational deg = d.restrict_to(base).degree();
  return {deg > 0, deg >= 0};
}

/// h⁰(P¹, O(⌊d⌋)).
inline long section_dim(const QDivisor& d, const BaseVariety& base) {
  if (!base.is_complete()) throw Error(ErrorKind::UnsupportedBase, "section dimension needs the complete line");
  long deg = to_long(d.floor().degree());
  return std::max(0L, deg + 1);
}

/// div(f) + d ≥ 0 on the base.
inline bool section_membership(const RationalFunction& f, const QDivisor& d, const BaseVariety& base) {
  if (base.is_point()) return f.is_constant() && d.restrict_to(base).is_effective();
  return (divisor_of_function(f, base) + d.restrict_to(base)).is_effective();
}

/// 𝔣 = Σ vᵢ ⊗ fᵢ in N ⊗ k(Y)*.
class Plurifunction {
 public:
  struct Term {
    LatticeVector v;
    RationalFunction f;
  };

  Plurifunction() = default;
  explicit Plurifunction(std::size_t rank, FieldRef field) : rank_(rank), field_(std::move(field)) {}
  static Plurifunction one(std::size_t rank, FieldRef field) { return Plurifunction(rank, std::move(field)); }

  std::size_t rank() const { return rank_; }
  const FieldRef& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  Plurifunction& add(const LatticeVector& v, const RationalFunction& f) {
    if (v.size() != rank_) throw Error(ErrorKind::RankMismatch, "plurifunction vector rank mismatch");
    if (!v.is_integral()) throw Error(ErrorKind::NonIntegralPairing, "plurifunction vectors must be lattice points");
    if (!same_field(f.field(), field_)) throw Error(ErrorKind::FieldMismatch, "plurifunction field mismatch");
    terms_.push_back({v, f});
    return *this;
  }

  /// 𝔣(m) = ∏ fᵢ^⟨m,vᵢ⟩.
  RationalFunction eval(const DualVector& m) const {
    if (m.size() != rank_) throw Error(ErrorKind::RankMismatch, "dual vector rank mismatch");
    auto r = RationalFunction::one(field_);
    for (const auto& t : terms_) r = r * t.f.pow(to_long(pairing(m, t.v)));
    return r;
  }
  /// Coordinate functions gⱼ = ∏ fᵢ^{vᵢⱼ}; equal plurifunctions have equal components.
  std::vector<RationalFunction> components() const {
    std::vector<RationalFunction> g;
    for (std::size_t j = 0; j < rank_; ++j) g.push_back(eval(DualVector::unit(rank_, j)));
    return g;
  }
  /// Σ ord_p(fᵢ)·vᵢ, the translation of div(𝔣) at p.
  LatticeVector order_at(const BasePoint& p) const {
    auto s = LatticeVector::zero(rank_);
    for (const auto& t : terms_) s = s + t.v * Rational(t.f.order_at(p));
    return s;
  }
  std::set<BasePoint> support(const BaseVariety& base) const {
    std::set<BasePoint> s;
    if (base.is_point()) return s;
    for (const auto& t : terms_) {
      auto d = divisor_of_function(t.f, base);
      for (const auto& [p, c] : d.terms()) s.insert(p);
    }
    return s;
  }

  Plurifunction operator*(const Plurifunction& o) const {
    if (o.rank_ != rank_) throw Error(ErrorKind::RankMismatch, "plurifunction ranks differ");
    Plurifunction r = *this;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    return r;
  }
  Plurifunction inverse() const {
    Plurifunction r = *this;
    for (auto& t : r.terms_) t.v = -t.v;
    return r;
  }
  /// F_*(𝔣) = Σ F(vᵢ) ⊗ fᵢ.
  Plurifunction push(const IntMatrix& f) const {
    if (f.cols() != rank_) throw Error(ErrorKind::RankMismatch, "matrix does not act on plurifunction lattice");
    Plurifunction r(f.rows(), field_);
    for (const auto& t : terms_) r.terms_.push_back({f.apply(t.v), t.f});
    return r;
  }
  bool operator==(const Plurifunction& o) const { return rank_ == o.rank_ && components() == o.components(); }
  bool operator!=(const Plurifunction& o) const { return !(*this == o); }

 private:
  std::size_t rank_ = 0;
  FieldRef field_ = rationals();
  std::vector<Term> terms_;
};

/// div(𝔣) = Σ (vᵢ + ω) ⊗ div(fᵢ), gathered per point as ω translated by Σ ord_p(fᵢ)vᵢ.
/// Points where the translations cancel carry the neutral coefficient and are omitted.
inline std::vector<std::pair<BasePoint, Polyhedron>> plurifunction_principal_divisor(const Plurifunction& pf,
                                                                                      const Cone& tail,
                                                                                      const BaseVariety& base) {
  if (tail.ambient_rank() != pf.rank()) throw Error(ErrorKind::RankMismatch, "tail rank differs from plurifunction");
  std::vector<std::pair<BasePoint, Polyhedron>> out;
  for (const auto& p : pf.support(base)) {
    auto v = pf.order_at(p);
    if (!v.is_zero()) out.emplace_back(p, Polyhedron::make({v}, tail));
  }
  return out;
}

/// z ↦ M·σ(z): twist coordinates by σ, then apply the Möbius matrix M.
class SemilinearBaseMap {
 public:
  using Mat = std::array<FieldElement, 4>;  // α β γ δ

  SemilinearBaseMap(Mat m, FieldAutomorphism twist) : m_(std::move(m)), twist_(std::move(twist)) {
    for (const auto& x : m_)
      if (!same_field(x.field(), twist_.field())) throw Error(ErrorKind::FieldMismatch, "Möbius entries and twist differ");
    if ((m_[0] * m_[3] - m_[1] * m_[2]).is_zero())
      throw Error(ErrorKind::MalformedInput, "Möbius matrix is singular");
    normalize();
  }
  static SemilinearBaseMap identity(const FieldRef& f) {
    auto z = FieldElement::from_rational(f, 0), o = FieldElement::from_rational(f, 1);
    return SemilinearBaseMap({o, z, z, o}, FieldAutomorphism::identity(f));
  }
  static SemilinearBaseMap twist_only(const FieldAutomorphism& s) {
    auto z = FieldElement::from_rational(s.field(), 0), o = FieldElement::from_rational(s.field(), 1);
    return SemilinearBaseMap({o, z, z, o}, s);
  }

  const Mat& matrix() const { return m_; }
  const FieldAutomorphism& twist() const { return twist_; }
  const FieldRef& field() const { return twist_.field(); }

  BasePoint apply(const BasePoint& p) const {
    if (p.kind() == BasePoint::Kind::Sole) return p;
    if (p.is_infinity()) return mobius(m_, p);
    check(p.value());
    return mobius(m_, BasePoint::finite(twist_.apply(p.value())));
  }
  SemilinearBaseMap inverse() const {
    auto s = twist_.inverse();
    auto d = m_[0] * m_[3] - m_[1] * m_[2];
    auto di = d.inverse();
    Mat inv{m_[3] * di, -m_[1] * di, -m_[2] * di, m_[0] * di};
    for (auto& x : inv) x = s.apply(x);
    return SemilinearBaseMap(inv, s);
  }
  /// (this ∘ other)(z) = M σ(M₀ σ₀(z)) = M σ(M₀) · σσ₀(z).
  SemilinearBaseMap compose(const SemilinearBaseMap& other) const {
    Mat t;
    for (int i = 0; i < 4; ++i) t[i] = twist_.apply(other.m_[i]);
    return SemilinearBaseMap(mul(m_, t), twist_.compose(other.twist_));
  }

  /// ψ*(D): the coefficient at p is the coefficient of D at ψ(p).
  QDivisor pullback(const QDivisor& d) const {
    auto inv = inverse();
    QDivisor r;
    for (const auto& [p, c] : d.terms()) r.add(inv.apply(p), c);
    return r;
  }
  QDivisor pushforward(const QDivisor& d) const {
    QDivisor r;
    for (const auto& [p, c] : d.terms()) r.add(apply(p), c);
    return r;
  }
  BaseVariety pullback(const BaseVariety& y) const {
    if (y.is_point()) return y;
    auto inv = inverse();
    std::set<BasePoint> r;
    for (const auto& p : y.removed()) r.insert(inv.apply(p));
    return BaseVariety::open(y.field(), r);
  }
  /// ψ*(f) = σ⁻¹ ∘ f ∘ ψ, an L-rational function with zeros at ψ⁻¹ of the zeros of f.
  RationalFunction pullback(const RationalFunction& f) const {
    check(f.constant_term());
    auto s = twist_.inverse();
    Mat mp;
    for (int i = 0; i < 4; ++i) mp[i] = s.apply(m_[i]);
    const auto &a = mp[0], &b = mp[1], &g = mp[2], &d = mp[3];
    FieldElement c = s.apply(f.constant_term());
    std::map<BasePoint, long> fac;
    auto bump = [&](const BasePoint& p, long e) {
      long v = (fac.count(p) ? fac[p] : 0) + e;
      if (v == 0)
        fac.erase(p);
      else
        fac[p] = v;
    };
    // Each (t − a') becomes ((α − a'γ)x + (β − a'δ)) / (γx + δ).
    for (const auto& [p, e] : f.factors()) {
      auto ap = s.apply(p.value());
      auto lead = a - ap * g, cst = b - ap * d;
      if (lead.is_zero()) {
        c = c * cst.pow(e);
      } else {
        c = c * lead.pow(e);
        bump(BasePoint::finite(-cst / lead), e);
      }
    }
    long tot = f.total_exponent();
    if (tot != 0) {
      if (g.is_zero()) {
        c = c * d.pow(-tot);
      } else {
        c = c * g.pow(-tot);
        bump(BasePoint::finite(-d / g), -tot);
      }
    }
    return RationalFunction::make(c, fac);
  }
  Plurifunction pullback(const Plurifunction& pf) const {
    Plurifunction r(pf.rank(), pf.field());
    for (const auto& t : pf.terms()) r.add(t.v, pullback(t.f));
    return r;
  }

  bool operator==(const SemilinearBaseMap& o) const { return m_ == o.m_ && twist_ == o.twist_; }
  bool operator!=(const SemilinearBaseMap& o) const { return !(*this == o); }

 private:
  static Mat mul(const Mat& x, const Mat& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
  }
  static BasePoint mobius(const Mat& m, const BasePoint& p) {
    if (p.is_infinity()) {
      if (m[2].is_zero()) return BasePoint::infinity();
      return BasePoint::finite(m[0] / m[2]);
    }
    auto num = m[0] * p.value() + m[1], den = m[2] * p.value() + m[3];
    if (den.is_zero()) return BasePoint::infinity();
    return BasePoint::finite(num / den);
  }
  void check(const FieldElement& x) const {
    if (!same_field(x.field(), field())) throw Error(ErrorKind::FieldMismatch, "base map and point fields differ");
  }
  void normalize() {
    for (const auto& x : m_)
      if (!x.is_zero()) {
        auto inv = x.inverse();
        for (auto& y : m_) y = y * inv;
        return;
      }
  }
  Mat m_;
  FieldAutomorphism twist_;
};

}  // namespace divfan
