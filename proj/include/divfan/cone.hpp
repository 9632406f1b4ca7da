#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "divfan/double_description.hpp"
#include "divfan/vector.hpp"

namespace divfan {

inline constexpr std::size_t kDualRankBudget = 6;
inline constexpr std::size_t kHilbertRankBudget = 3;

/// Rational polyhedral cone in V-representation (primitive extreme rays plus
/// an optional lineality basis) with its facet description computed once.
template <class Tag>
class BasicCone {
 public:
  using V = Vector<Tag>;
  using D = Vector<typename dual_tag<Tag>::type>;

  BasicCone() = default;

  static BasicCone from_generators(std::size_t n, const std::vector<V>& gens, const std::vector<V>& lineality = {}) {
    std::vector<linalg::Row> g, l;
    for (const auto& v : gens) {
      check(n, v);
      if (!v.is_zero()) g.push_back(v.c);
    }
    for (const auto& v : lineality) {
      check(n, v);
      if (!v.is_zero()) l.push_back(v.c);
    }
    auto h = dd::halfspaces(g, l, n);
    return from_halfspaces_rows(n, h.ineqs, h.eqs);
  }
  static BasicCone from_halfspaces(std::size_t n, const std::vector<D>& ineqs, const std::vector<D>& eqs = {}) {
    std::vector<linalg::Row> a, e;
    for (const auto& v : ineqs) a.push_back(v.c);
    for (const auto& v : eqs) e.push_back(v.c);
    return from_halfspaces_rows(n, a, e);
  }
  static BasicCone zero(std::size_t n) { return from_generators(n, {}); }
  static BasicCone full(std::size_t n) {
    std::vector<V> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(V::unit(n, i));
    return from_generators(n, {}, basis);
  }

  std::size_t ambient_rank() const { return n_; }
  const std::vector<V>& rays() const { return rays_; }
  const std::vector<V>& lineality() const { return lineality_; }
  const std::vector<D>& facets() const { return facets_; }
  const std::vector<D>& equations() const { return equations_; }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_zero() const { return rays_.empty() && lineality_.empty(); }
  std::size_t dim() const { return n_ - equations_.size(); }
  bool is_full_dimensional() const { return equations_.empty(); }

  bool contains(const V& v) const {
    check(n_, v);
    for (const auto& e : equations_)
      if (linalg::dot(e.c, v.c) != 0) return false;
    for (const auto& a : facets_)
      if (linalg::dot(a.c, v.c) < 0) return false;
    return true;
  }
  bool relint_contains(const V& v) const {
    check(n_, v);
    for (const auto& e : equations_)
      if (linalg::dot(e.c, v.c) != 0) return false;
    for (const auto& a : facets_)
      if (linalg::dot(a.c, v.c) <= 0) return false;
    return true;
  }
  bool contains(const BasicCone& o) const {
    for (const auto& r : o.rays_)
      if (!contains(r)) return false;
    for (const auto& l : o.lineality_)
      if (!contains(l) || !contains(-l)) return false;
    return true;
  }

  BasicCone<typename dual_tag<Tag>::type> dual() const {
    if (n_ > kDualRankBudget) throw Error(ErrorKind::RankBudgetExceeded, "dual cone rank exceeds 6");
    return BasicCone<typename dual_tag<Tag>::type>::from_generators(n_, facets_, equations_);
  }
  BasicCone intersect(const BasicCone& o) const {
    if (o.n_ != n_) throw Error(ErrorKind::RankMismatch, "cone ranks differ");
    auto a = facets_;
    a.insert(a.end(), o.facets_.begin(), o.facets_.end());
    auto e = equations_;
    e.insert(e.end(), o.equations_.begin(), o.equations_.end());
    return from_halfspaces(n_, a, e);
  }
  BasicCone sum(const BasicCone& o) const {
    if (o.n_ != n_) throw Error(ErrorKind::RankMismatch, "cone ranks differ");
    auto g = rays_;
    g.insert(g.end(), o.rays_.begin(), o.rays_.end());
    auto l = lineality_;
    l.insert(l.end(), o.lineality_.begin(), o.lineality_.end());
    return from_generators(n_, g, l);
  }
  /// Face cut out by m, which must lie in the dual cone.
  BasicCone face_by(const D& m) const {
    if (!dual_contains(m)) throw Error(ErrorKind::FaceUnbounded, "functional is not in the dual cone");
    auto e = equations_;
    e.push_back(m);
    return from_halfspaces(n_, facets_, e);
  }
  bool dual_contains(const D& m) const {
    if (m.size() != n_) throw Error(ErrorKind::RankMismatch, "dual vector length mismatch");
    for (const auto& r : rays_)
      if (linalg::dot(m.c, r.c) < 0) return false;
    for (const auto& l : lineality_)
      if (linalg::dot(m.c, l.c) != 0) return false;
    return true;
  }
  BasicCone image(const IntMatrix& f) const {
    std::vector<V> g, l;
    for (const auto& r : rays_) g.push_back(V(f.apply(LatticeVector(r.c)).c));
    for (const auto& x : lineality_) l.push_back(V(f.apply(LatticeVector(x.c)).c));
    return from_generators(f.rows(), g, l);
  }

  /// Smallest face containing v (v must lie in the cone).
  BasicCone minimal_face_containing(const V& v) const {
    auto e = equations_;
    std::vector<D> a;
    for (const auto& f : facets_) (linalg::dot(f.c, v.c) == 0 ? e : a).push_back(f);
    return from_halfspaces(n_, a, e);
  }

  bool operator==(const BasicCone& o) const {
    return n_ == o.n_ && rays_ == o.rays_ && lineality_ == o.lineality_;
  }
  bool operator!=(const BasicCone& o) const { return !(*this == o); }
  bool operator<(const BasicCone& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    if (rays_ != o.rays_) return rays_ < o.rays_;
    return lineality_ < o.lineality_;
  }

 private:
  static void check(std::size_t n, const V& v) {
    if (v.size() != n) throw Error(ErrorKind::RankMismatch, "vector length does not match cone rank");
  }
  static BasicCone from_halfspaces_rows(std::size_t n, const std::vector<linalg::Row>& a,
                                        const std::vector<linalg::Row>& e) {
    auto g = dd::generators(a, e, n);
    BasicCone c;
    c.n_ = n;
    for (auto& r : g.rays) c.rays_.push_back(V(r));
    for (auto& l : g.lineality) c.lineality_.push_back(V(l));
    auto h = dd::halfspaces(g.rays, g.lineality, n);
    for (auto& r : h.ineqs) c.facets_.push_back(D(r));
    for (auto& r : h.eqs) c.equations_.push_back(D(r));
    return c;
  }

  std::size_t n_ = 0;
  std::vector<V> rays_;
  std::vector<V> lineality_;
  std::vector<D> facets_;
  std::vector<D> equations_;
};

using Cone = BasicCone<NTag>;
using MCone = BasicCone<MTag>;

inline MCone dual_cone(const Cone& c) { return c.dual(); }

/// Some m in super^∨ with sub = super ∩ m^⊥, if sub is a face of super.
inline std::optional<DualVector> cone_face_test(const Cone& sub, const Cone& super) {
  if (sub.ambient_rank() != super.ambient_rank()) throw Error(ErrorKind::RankMismatch, "cone ranks differ");
  if (!super.contains(sub)) return std::nullopt;
  DualVector m = DualVector::zero(super.ambient_rank());
  for (const auto& f : super.facets()) {
    bool vanishes = true;
    for (const auto& r : sub.rays())
      if (pairing(f, r) != 0) vanishes = false;
    for (const auto& l : sub.lineality())
      if (pairing(f, l) != 0) vanishes = false;
    if (vanishes) m = m + f;
  }
  if (super.face_by(m) == sub) return m;
  return std::nullopt;
}

namespace detail {

inline void enumerate_box(const std::vector<long>& lo, const std::vector<long>& hi, std::size_t i,
                          std::vector<long>& cur, const std::function<void(const std::vector<long>&)>& fn) {
  if (i == lo.size()) {
    fn(cur);
    return;
  }
  for (long x = lo[i]; x <= hi[i]; ++x) {
    cur[i] = x;
    enumerate_box(lo, hi, i + 1, cur, fn);
  }
}

}  // namespace detail

/// Minimal generating set of the monoid c ∩ Z^n. Candidates are the lattice
/// points of the cone inside the bounding box of the zonotope spanned by the
/// extreme rays; an element is kept when no other candidate can be peeled
/// off while staying in the cone.
template <class Tag>
std::vector<Vector<Tag>> hilbert_basis(const BasicCone<Tag>& c) {
  using V = Vector<Tag>;
  const std::size_t n = c.ambient_rank();
  if (n > kHilbertRankBudget) throw Error(ErrorKind::RankBudgetExceeded, "Hilbert basis rank exceeds 3");
  if (!c.is_pointed()) throw Error(ErrorKind::NonPointed, "Hilbert basis of a non-pointed cone");
  if (c.is_zero()) return {};
  std::vector<long> lo(n, 0), hi(n, 0);
  for (const auto& r : c.rays())
    for (std::size_t i = 0; i < n; ++i) {
      long x = to_long(r[i]);
      (x < 0 ? lo[i] : hi[i]) += x;
    }
  std::vector<V> cand;
  std::vector<long> cur(n);
  detail::enumerate_box(lo, hi, 0, cur, [&](const std::vector<long>& p) {
    V v = V::zero(n);
    bool nz = false;
    for (std::size_t i = 0; i < n; ++i) {
      v.c[i] = p[i];
      nz = nz || p[i] != 0;
    }
    if (nz && c.contains(v)) cand.push_back(v);
  });
  std::vector<V> basis;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& h : cand) {
      if (h == x) continue;
      if (c.contains(x - h)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace divfan
