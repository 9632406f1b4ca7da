#pragma once

#include <algorithm>
#include <vector>

#include "divfan/linalg.hpp"

namespace divfan::dd {

using linalg::Row;

/// Generators of {y : A y >= 0, E y = 0}: a lineality basis and the extreme
/// rays modulo lineality (primitive integer vectors, reduced against the
/// lineality so that representatives are canonical).
struct Generators {
  std::vector<Row> lineality;
  std::vector<Row> rays;
};

namespace detail {

/// Orthogonal projection of v onto the complement of span(basis).
inline Row project_out(const Row& v, const std::vector<Row>& basis) {
  if (basis.empty()) return v;
  const std::size_t k = basis.size();
  linalg::Matrix gram(k, Row(k));
  Row rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = linalg::dot(basis[i], basis[j]);
    rhs[i] = linalg::dot(basis[i], v);
  }
  auto coef = linalg::solve(gram, rhs, k);
  Row w = v;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= (*coef)[i] * basis[i][j];
  return w;
}

/// Canonical basis of a subspace: RREF rows scaled to primitive integers.
inline std::vector<Row> canonical_basis(std::vector<Row> rows, std::size_t d) {
  if (rows.empty()) return rows;
  linalg::rref(rows, d);
  for (auto& r : rows) r = linalg::primitive(r);
  return rows;
}

struct RayState {
  Row v;
  std::vector<bool> tight;
};

inline bool contains_all(const std::vector<bool>& sup, const std::vector<bool>& sub) {
  for (std::size_t i = 0; i < sub.size(); ++i)
    if (sub[i] && !sup[i]) return false;
  return true;
}

}  // namespace detail

/// Double description (Motzkin) with lineality handling. Dimension d is the
/// ambient size; constraints are processed in input order.
inline Generators generators(const std::vector<Row>& ineqs, const std::vector<Row>& eqs, std::size_t d) {
  std::vector<Row> lin;
  for (std::size_t i = 0; i < d; ++i) {
    Row e(d, Rational(0));
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<detail::RayState> rays;
  std::vector<std::pair<Row, bool>> cons;  // (row, is_equation)
  for (const auto& a : eqs) cons.push_back({a, true});
  for (const auto& a : ineqs) cons.push_back({a, false});
  const std::size_t total = cons.size();

  for (std::size_t ci = 0; ci < total; ++ci) {
    const Row& a = cons[ci].first;
    const bool is_eq = cons[ci].second;
    if (a.size() != d) throw Error(ErrorKind::RankMismatch, "constraint length mismatch");
    if (linalg::is_zero(a)) {
      for (auto& r : rays) r.tight[ci] = true;
      continue;
    }
    std::size_t li = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (linalg::dot(a, lin[i]) != 0) {
        li = i;
        break;
      }
    if (li < lin.size()) {
      Row l = lin[li];
      Rational al = linalg::dot(a, l);
      if (al < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      lin.erase(lin.begin() + static_cast<long>(li));
      for (auto& other : lin) {
        Rational c = linalg::dot(a, other) / al;
        if (c != 0)
          for (std::size_t j = 0; j < d; ++j) other[j] -= c * l[j];
      }
      for (auto& r : rays) {
        Rational c = linalg::dot(a, r.v) / al;
        if (c != 0)
          for (std::size_t j = 0; j < d; ++j) r.v[j] -= c * l[j];
        r.v = linalg::primitive(r.v);
        r.tight[ci] = true;
      }
      if (!is_eq) {
        detail::RayState nr{linalg::primitive(l), std::vector<bool>(total, false)};
        for (std::size_t k = 0; k < ci; ++k) nr.tight[k] = true;
        rays.push_back(std::move(nr));
      }
      continue;
    }
    std::vector<std::size_t> pos, neg, zer;
    std::vector<Rational> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = linalg::dot(a, rays[i].v);
      if (val[i] > 0)
        pos.push_back(i);
      else if (val[i] < 0)
        neg.push_back(i);
      else
        zer.push_back(i);
    }
    std::vector<detail::RayState> next;
    for (auto i : zer) {
      auto r = rays[i];
      r.tight[ci] = true;
      next.push_back(std::move(r));
    }
    if (!is_eq)
      for (auto i : pos) next.push_back(rays[i]);
    const std::size_t need = d >= lin.size() + 2 ? d - lin.size() - 2 : 0;
    for (auto p : pos)
      for (auto n : neg) {
        std::vector<bool> common(total, false);
        std::size_t cnt = 0;
        for (std::size_t k = 0; k < ci; ++k)
          if (rays[p].tight[k] && rays[n].tight[k]) {
            common[k] = true;
            ++cnt;
          }
        if (cnt < need) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == n) continue;
          if (detail::contains_all(rays[o].tight, common)) adjacent = false;
        }
        if (!adjacent) continue;
        Row w(d);
        for (std::size_t j = 0; j < d; ++j) w[j] = val[p] * rays[n].v[j] - val[n] * rays[p].v[j];
        common[ci] = true;
        next.push_back({linalg::primitive(w), common});
      }
    rays = std::move(next);
  }

  Generators g;
  g.lineality = detail::canonical_basis(lin, d);
  for (auto& r : rays) {
    Row w = linalg::primitive(detail::project_out(r.v, g.lineality));
    if (linalg::is_zero(w)) continue;
    g.rays.push_back(w);
  }
  std::sort(g.rays.begin(), g.rays.end());
  g.rays.erase(std::unique(g.rays.begin(), g.rays.end()), g.rays.end());
  return g;
}

/// Facet description of cone(rays) + span(lineality): returns inequality
/// normals (a·y >= 0) and equation normals (a·y = 0).
struct HalfSpaces {
  std::vector<Row> ineqs;
  std::vector<Row> eqs;
};

inline HalfSpaces halfspaces(const std::vector<Row>& rays, const std::vector<Row>& lineality, std::size_t d) {
  Generators dual = generators(rays, lineality, d);
  return HalfSpaces{dual.rays, dual.lineality};
}

}  // namespace divfan::dd
