#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "divfan/cone.hpp"

namespace divfan {

inline constexpr std::size_t kQuasifanRankBudget = 4;

/// Value of h_Δ(m) = min⟨m,Δ⟩; unbounded below when m is outside tail^∨.
struct SupportValue {
  bool minus_infinity = false;
  Rational value;

  bool operator==(const SupportValue& o) const {
    return minus_infinity == o.minus_infinity && (minus_infinity || value == o.value);
  }
};

/// Tailed polyhedron Π + ω in N_Q, or the empty polyhedron with a declared tail.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron make(const std::vector<LatticeVector>& vertices, const Cone& tail) {
    const std::size_t n = tail.ambient_rank();
    if (vertices.empty()) return empty_with_tail(tail);
    std::vector<linalg::Row> gens, lin;
    for (const auto& v : vertices) {
      if (v.size() != n) throw Error(ErrorKind::RankMismatch, "vertex length does not match tail rank");
      auto row = v.c;
      row.push_back(1);
      gens.push_back(row);
    }
    for (const auto& r : tail.rays()) {
      auto row = r.c;
      row.push_back(0);
      gens.push_back(row);
    }
    for (const auto& l : tail.lineality()) {
      auto row = l.c;
      row.push_back(0);
      lin.push_back(row);
    }
    auto h = dd::halfspaces(gens, lin, n + 1);
    return from_homogeneous(n, h.ineqs, h.eqs, tail);
  }
  static Polyhedron point(const LatticeVector& v) { return make({v}, Cone::zero(v.size())); }
  static Polyhedron from_cone(const Cone& c) { return make({LatticeVector::zero(c.ambient_rank())}, c); }
  static Polyhedron empty_with_tail(const Cone& tail) {
    Polyhedron p;
    p.n_ = tail.ambient_rank();
    p.empty_ = true;
    p.tail_ = tail;
    return p;
  }
  /// {x : a·x + b >= 0 for (a,b) in ineqs, a·x + b = 0 for (a,b) in eqs}.
  static Polyhedron from_inequalities(std::size_t n, const std::vector<linalg::Row>& ineqs,
                                      const std::vector<linalg::Row>& eqs, const Cone& declared_tail) {
    std::vector<linalg::Row> a = ineqs;
    linalg::Row t(n + 1, Rational(0));
    t[n] = 1;
    a.push_back(t);
    return from_homogeneous(n, a, eqs, declared_tail);
  }

  bool is_empty() const { return empty_; }
  std::size_t ambient_rank() const { return n_; }
  const std::vector<LatticeVector>& vertices() const { return vertices_; }
  const Cone& tail() const { return tail_; }
  /// Inequalities (a,b) meaning a·x + b >= 0, and equations a·x + b = 0.
  const std::vector<linalg::Row>& inequalities() const { return ineqs_; }
  const std::vector<linalg::Row>& equations() const { return eqs_; }
  bool is_bounded() const { return tail_.is_zero(); }
  std::size_t dim() const {
    if (empty_) return 0;
    return n_ - eqs_.size();
  }

  bool contains(const LatticeVector& v) const {
    if (v.size() != n_) throw Error(ErrorKind::RankMismatch, "point length mismatch");
    if (empty_) return false;
    for (const auto& e : eqs_)
      if (affine(e, v) != 0) return false;
    for (const auto& a : ineqs_)
      if (affine(a, v) < 0) return false;
    return true;
  }
  bool relint_contains(const LatticeVector& v) const {
    if (!contains(v)) return false;
    for (const auto& a : ineqs_) {
      bool trivial = true;
      for (std::size_t i = 0; i < n_; ++i) trivial = trivial && a[i] == 0;
      if (!trivial && affine(a, v) == 0) return false;
    }
    return true;
  }
  bool subset_of(const Polyhedron& o) const {
    if (o.n_ != n_) throw Error(ErrorKind::RankMismatch, "polyhedron ranks differ");
    if (empty_) return true;
    if (o.empty_) return false;
    for (const auto& v : vertices_)
      if (!o.contains(v)) return false;
    return o.tail_.contains(tail_);
  }

  SupportValue support_value(const DualVector& m) const {
    if (empty_) throw Error(ErrorKind::EmptyPolyhedron, "support value of the empty polyhedron");
    if (m.size() != n_) throw Error(ErrorKind::RankMismatch, "dual vector length mismatch");
    if (!tail_.dual_contains(m)) return {true, Rational(0)};
    Rational best = pairing(m, vertices_.front());
    for (const auto& v : vertices_) best = std::min<Rational>(best, pairing(m, v));
    return {false, best};
  }
  Polyhedron face_by(const DualVector& m) const {
    auto h = support_value(m);
    if (h.minus_infinity) throw Error(ErrorKind::FaceUnbounded, "functional unbounded below on polyhedron");
    std::vector<LatticeVector> vs;
    for (const auto& v : vertices_)
      if (pairing(m, v) == h.value) vs.push_back(v);
    return make(vs, tail_.face_by(m));
  }
  Polyhedron intersect(const Polyhedron& o) const {
    if (o.n_ != n_) throw Error(ErrorKind::RankMismatch, "polyhedron ranks differ");
    Cone t = tail_.intersect(o.tail_);
    if (empty_ || o.empty_) return empty_with_tail(t);
    auto a = ineqs_;
    a.insert(a.end(), o.ineqs_.begin(), o.ineqs_.end());
    auto e = eqs_;
    e.insert(e.end(), o.eqs_.begin(), o.eqs_.end());
    return from_inequalities(n_, a, e, t);
  }
  Polyhedron operator+(const Polyhedron& o) const { return minkowski_sum(o); }
  Polyhedron minkowski_sum(const Polyhedron& o) const {
    if (o.n_ != n_) throw Error(ErrorKind::RankMismatch, "polyhedron ranks differ");
    Cone t = tail_.sum(o.tail_);
    if (empty_ || o.empty_) return empty_with_tail(t);
    std::vector<LatticeVector> vs;
    for (const auto& a : vertices_)
      for (const auto& b : o.vertices_) vs.push_back(a + b);
    return make(vs, t);
  }
  /// c·Δ = {c·v} + tail for c > 0; c = 0 gives the tail, also for ∅.
  Polyhedron dilate(const Rational& c) const {
    if (c < 0) throw Error(ErrorKind::MalformedInput, "negative dilation factor");
    if (c == 0) return from_cone(tail_);
    if (empty_) return *this;
    std::vector<LatticeVector> vs;
    for (const auto& v : vertices_) vs.push_back(v * c);
    return make(vs, tail_);
  }
  Polyhedron translate(const LatticeVector& v) const {
    if (empty_) return *this;
    std::vector<LatticeVector> vs;
    for (const auto& w : vertices_) vs.push_back(w + v);
    return make(vs, tail_);
  }
  /// F(Δ) + target_tail.
  Polyhedron image(const IntMatrix& f, const Cone& target_tail) const {
    Cone t = tail_.image(f).sum(target_tail);
    if (empty_) return empty_with_tail(t);
    std::vector<LatticeVector> vs;
    for (const auto& v : vertices_) vs.push_back(f.apply(v));
    return make(vs, t);
  }

  bool operator==(const Polyhedron& o) const {
    return n_ == o.n_ && empty_ == o.empty_ && vertices_ == o.vertices_ && (empty_ || tail_ == o.tail_);
  }
  bool operator!=(const Polyhedron& o) const { return !(*this == o); }
  bool operator<(const Polyhedron& o) const {
    if (empty_ != o.empty_) return empty_ < o.empty_;
    if (vertices_ != o.vertices_) return vertices_ < o.vertices_;
    return tail_ < o.tail_;
  }

 private:
  Rational affine(const linalg::Row& a, const LatticeVector& v) const {
    Rational s = a[n_];
    for (std::size_t i = 0; i < n_; ++i) s += a[i] * v[i];
    return s;
  }
  static Polyhedron from_homogeneous(std::size_t n, const std::vector<linalg::Row>& ineqs,
                                     const std::vector<linalg::Row>& eqs, const Cone& declared_tail) {
    auto g = dd::generators(ineqs, eqs, n + 1);
    std::vector<LatticeVector> verts;
    std::vector<LatticeVector> trays, tlin;
    for (const auto& l : g.lineality) {
      if (l[n] != 0) throw Error(ErrorKind::MalformedInput, "homogenized cone has lineality off the far face");
      tlin.push_back(LatticeVector(linalg::Row(l.begin(), l.begin() + static_cast<long>(n))));
    }
    for (const auto& r : g.rays) {
      linalg::Row x(r.begin(), r.begin() + static_cast<long>(n));
      if (r[n] > 0) {
        for (auto& xi : x) xi /= r[n];
        verts.push_back(LatticeVector(x));
      } else if (r[n] == 0) {
        trays.push_back(LatticeVector(x));
      } else {
        throw Error(ErrorKind::MalformedInput, "homogenized cone leaves t >= 0");
      }
    }
    if (verts.empty()) return empty_with_tail(declared_tail);
    Polyhedron p;
    p.n_ = n;
    p.empty_ = false;
    p.tail_ = Cone::from_generators(n, trays, tlin);
    std::vector<linalg::Row> lin_rows;
    for (const auto& l : p.tail_.lineality()) lin_rows.push_back(l.c);
    for (auto& v : verts) v = LatticeVector(dd::detail::project_out(v.c, lin_rows));
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    p.vertices_ = verts;
    std::vector<linalg::Row> hg, hl;
    for (const auto& v : verts) {
      auto row = v.c;
      row.push_back(1);
      hg.push_back(row);
    }
    for (const auto& r : p.tail_.rays()) {
      auto row = r.c;
      row.push_back(0);
      hg.push_back(row);
    }
    for (const auto& l : p.tail_.lineality()) {
      auto row = l.c;
      row.push_back(0);
      hl.push_back(row);
    }
    auto h = dd::halfspaces(hg, hl, n + 1);
    p.ineqs_ = h.ineqs;
    p.eqs_ = h.eqs;
    return p;
  }

  std::size_t n_ = 0;
  bool empty_ = true;
  std::vector<LatticeVector> vertices_;
  Cone tail_;
  std::vector<linalg::Row> ineqs_;
  std::vector<linalg::Row> eqs_;
};

template <class Tag>
std::string to_string(const BasicCone<Tag>& c) {
  std::string s = "cone{";
  for (std::size_t i = 0; i < c.rays().size(); ++i) s += (i ? "," : "") + to_string(c.rays()[i]);
  for (const auto& l : c.lineality()) s += ",±" + to_string(l);
  return s + "}";
}

inline std::string to_string(const Polyhedron& p) {
  if (p.is_empty()) return "empty";
  std::string s = "conv{";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) s += (i ? "," : "") + to_string(p.vertices()[i]);
  return s + "}+" + to_string(p.tail());
}

inline Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) { return a.minkowski_sum(b); }
inline Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) { return a.intersect(b); }

/// One cell of the normal quasifan: h_Δ is ⟨·, linear_form⟩ on the cone.
struct QuasiFanCell {
  MCone cone;
  LatticeVector linear_form;
};

inline std::vector<QuasiFanCell> normal_quasifan(const Polyhedron& d) {
  if (d.is_empty()) throw Error(ErrorKind::EmptyPolyhedron, "quasifan of the empty polyhedron");
  const std::size_t n = d.ambient_rank();
  if (n > kQuasifanRankBudget) throw Error(ErrorKind::RankBudgetExceeded, "quasifan rank exceeds 4");
  MCone tail_dual = d.tail().dual();
  std::vector<QuasiFanCell> cells;
  for (const auto& v : d.vertices()) {
    std::vector<LatticeVector> hs = tail_dual.facets();
    for (const auto& w : d.vertices())
      if (w != v) hs.push_back(w - v);  // ⟨m, w - v⟩ >= 0
    MCone cell = MCone::from_halfspaces(n, hs, tail_dual.equations());
    if (cell.dim() == tail_dual.dim()) cells.push_back({cell, v});
  }
  return cells;
}

}  // namespace divfan
