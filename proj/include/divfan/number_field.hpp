#pragma once

#include <memory>
#include <string>
#include <vector>

#include "divfan/linalg.hpp"
#include "divfan/rational.hpp"

namespace divfan {

/// Q[x]/(p) for a monic p given by its coefficients, constant term first.
struct NumberField {
  std::vector<Rational> modulus;
  std::string generator = "a";
  bool irreducibility_verified = false;

  int degree() const { return static_cast<int>(modulus.size()) - 1; }
  bool operator==(const NumberField& o) const { return modulus == o.modulus && generator == o.generator; }
};

using FieldRef = std::shared_ptr<const NumberField>;

namespace detail {

inline std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

inline Rational eval_poly(const std::vector<Rational>& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Rational root search on a polynomial with rational coefficients.
inline bool has_rational_root(const std::vector<Rational>& p) {
  if (p.front() == 0) return true;
  Integer l = lcm_of_denominators(p);
  Rational a0q = p.front() * l, anq = p.back() * l;
  Integer a0 = a0q.get_num(), an = anq.get_num();
  for (const auto& num : divisors(a0))
    for (const auto& den : divisors(an))
      for (int s : {1, -1}) {
        Rational r(Integer(s * num), den);
        r.canonicalize();
        if (eval_poly(p, r) == 0) return true;
      }
  return false;
}

}  // namespace detail

/// Validates the modulus; irreducibility is decided only up to degree 3.
inline FieldRef make_field(std::vector<Rational> modulus, std::string generator = "a") {
  if (modulus.size() < 2) throw Error(ErrorKind::MalformedInput, "modulus must have degree >= 1");
  if (modulus.back() != 1) throw Error(ErrorKind::MalformedInput, "modulus must be monic");
  auto f = std::make_shared<NumberField>();
  f->modulus = std::move(modulus);
  f->generator = std::move(generator);
  int d = f->degree();
  if (d == 1) {
    f->irreducibility_verified = true;
  } else if (d <= 3) {
    if (detail::has_rational_root(f->modulus))
      throw Error(ErrorKind::MalformedInput, "modulus is reducible over Q");
    f->irreducibility_verified = true;
  }
  return f;
}

inline FieldRef rationals() {
  static FieldRef q = make_field({Rational(0), Rational(1)}, "a");
  return q;
}

inline FieldRef gaussian_rationals() {
  static FieldRef qi = make_field({Rational(1), Rational(0), Rational(1)}, "i");
  return qi;
}

inline bool same_field(const FieldRef& a, const FieldRef& b) { return a == b || (a && b && *a == *b); }

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldRef field, std::vector<Rational> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != field_->degree())
      throw Error(ErrorKind::MalformedInput, "coefficient count does not match field degree");
  }
  static FieldElement from_rational(FieldRef field, const Rational& q) {
    std::vector<Rational> c(field->degree(), Rational(0));
    c[0] = q;
    return FieldElement(field, c);
  }
  static FieldElement generator(FieldRef field) {
    std::vector<Rational> c(field->degree(), Rational(0));
    if (field->degree() == 1) {
      c[0] = -field->modulus[0];
    } else {
      c[1] = 1;
    }
    return FieldElement(field, c);
  }

  const FieldRef& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  FieldElement operator+(const FieldElement& o) const {
    check(o);
    auto c = c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
    return FieldElement(field_, c);
  }
  FieldElement operator-() const {
    auto c = c_;
    for (auto& x : c) x = -x;
    return FieldElement(field_, c);
  }
  FieldElement operator-(const FieldElement& o) const { return *this + (-o); }
  FieldElement operator*(const FieldElement& o) const {
    check(o);
    int d = field_->degree();
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (int i = 0; i < d; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < d; ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    return FieldElement(field_, reduce(prod));
  }
  FieldElement inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero field element");
    int d = field_->degree();
    // Columns of the multiplication-by-this matrix are this * x^j.
    linalg::Matrix m(d, linalg::Row(d, Rational(0)));
    FieldElement basis = from_rational(field_, 1);
    FieldElement x = generator(field_);
    for (int j = 0; j < d; ++j) {
      FieldElement col = *this * basis;
      for (int i = 0; i < d; ++i) m[i][j] = col.c_[i];
      basis = basis * x;
    }
    linalg::Row e(d, Rational(0));
    e[0] = 1;
    auto sol = linalg::solve(m, e, d);
    if (!sol) throw Error(ErrorKind::DivisionByZero, "element is a zero divisor; modulus not irreducible");
    return FieldElement(field_, *sol);
  }
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  FieldElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r = from_rational(field_, 1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  bool operator==(const FieldElement& o) const { return same_field(field_, o.field_) && c_ == o.c_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  /// Lexicographic on coefficients; used only for canonical ordering.
  bool operator<(const FieldElement& o) const { return c_ < o.c_; }

 private:
  void check(const FieldElement& o) const {
    if (!same_field(field_, o.field_)) throw Error(ErrorKind::FieldMismatch, "operands live in different fields");
  }
  std::vector<Rational> reduce(std::vector<Rational> p) const {
    const auto& mod = field_->modulus;
    int d = field_->degree();
    for (int k = static_cast<int>(p.size()) - 1; k >= d; --k) {
      Rational lead = p[k];
      if (lead == 0) continue;
      for (int i = 0; i <= d; ++i) p[k - d + i] -= lead * mod[i];
    }
    p.resize(d);
    return p;
  }

  FieldRef field_;
  std::vector<Rational> c_;
};

inline std::string to_string(const FieldElement& a) {
  std::string s;
  const auto& c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    std::string term = to_string(c[i]);
    if (i >= 1) term += "*" + a.field()->generator + (i > 1 ? "^" + std::to_string(i) : "");
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  return s.empty() ? "0" : s;
}

/// Automorphism of a number field, determined by the image of the generator.
class FieldAutomorphism {
 public:
  FieldAutomorphism() = default;
  explicit FieldAutomorphism(FieldElement image) : image_(std::move(image)) {
    if (!evaluates_to_root(image_))
      throw Error(ErrorKind::MalformedInput, "generator image is not a root of the modulus");
  }
  static FieldAutomorphism identity(FieldRef field) { return FieldAutomorphism(FieldElement::generator(field)); }

  const FieldElement& generator_image() const { return image_; }
  const FieldRef& field() const { return image_.field(); }

  FieldElement apply(const FieldElement& a) const {
    if (!same_field(a.field(), image_.field()))
      throw Error(ErrorKind::FieldMismatch, "automorphism applied to element of another field");
    if (field()->degree() == 1) return a;
    FieldElement acc = FieldElement::from_rational(field(), 0);
    FieldElement pw = FieldElement::from_rational(field(), 1);
    for (const auto& c : a.coeffs()) {
      acc = acc + FieldElement::from_rational(field(), c) * pw;
      pw = pw * image_;
    }
    return acc;
  }
  /// (this ∘ other)(x) = this(other(x)).
  FieldAutomorphism compose(const FieldAutomorphism& other) const { return FieldAutomorphism(apply(other.image_)); }
  bool is_identity() const { return image_ == FieldElement::generator(field()); }
  FieldAutomorphism inverse() const {
    FieldAutomorphism prev = identity(field()), cur = *this;
    for (int k = 0; k < 10000; ++k) {
      if (cur.is_identity()) return prev;
      prev = cur;
      cur = compose(cur);
    }
    throw Error(ErrorKind::SizeBudgetExceeded, "automorphism order not found");
  }
  bool operator==(const FieldAutomorphism& o) const { return image_ == o.image_; }
  bool operator!=(const FieldAutomorphism& o) const { return !(*this == o); }

 private:
  static bool evaluates_to_root(const FieldElement& g) {
    const auto& mod = g.field()->modulus;
    FieldElement acc = FieldElement::from_rational(g.field(), 0);
    for (auto it = mod.rbegin(); it != mod.rend(); ++it) acc = acc * g + FieldElement::from_rational(g.field(), *it);
    return acc.is_zero();
  }
  FieldElement image_;
};

inline FieldAutomorphism complex_conjugation() {
  auto f = gaussian_rationals();
  return FieldAutomorphism(-FieldElement::generator(f));
}

}  // namespace divfan
