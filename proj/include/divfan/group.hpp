#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divfan/errors.hpp"

namespace divfan {

/// Finite group given by labels and a Cayley table of label indices.
struct FiniteGroup {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;  // table[a][b] = index of a*b
  int identity = 0;

  int order() const { return static_cast<int>(elements.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int index_of(const std::string& label) const {
    for (int i = 0; i < order(); ++i)
      if (elements[i] == label) return i;
    throw Error(ErrorKind::MalformedInput, "unknown group element '" + label + "'");
  }
  int inverse(int a) const {
    for (int b = 0; b < order(); ++b)
      if (table[a][b] == identity) return b;
    throw Error(ErrorKind::MalformedInput, "element without inverse");
  }
};

struct GroupViolation {
  std::string axiom;
  std::vector<int> witness;
};

struct GroupVerdict {
  bool valid = true;
  std::vector<GroupViolation> violations;
};

/// Exhaustive check of the group axioms for tables of order at most 48.
inline GroupVerdict verify_group_presentation(const FiniteGroup& g) {
  GroupVerdict v;
  const int n = g.order();
  if (n == 0 || n > 48) {
    v.valid = false;
    v.violations.push_back({"order", {n}});
    return v;
  }
  if (static_cast<int>(g.table.size()) != n) {
    v.valid = false;
    v.violations.push_back({"closure", {static_cast<int>(g.table.size())}});
    return v;
  }
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(g.table[a].size()) != n) {
      v.valid = false;
      v.violations.push_back({"closure", {a}});
      return v;
    }
    for (int b = 0; b < n; ++b) {
      int c = g.table[a][b];
      if (c < 0 || c >= n) {
        v.valid = false;
        v.violations.push_back({"closure", {a, b}});
      }
    }
  }
  if (!v.valid) return v;
  const int e = g.identity;
  for (int a = 0; a < n; ++a) {
    if (g.table[e][a] != a || g.table[a][e] != a) {
      v.valid = false;
      v.violations.push_back({"identity", {e, a}});
    }
    bool has_inverse = false;
    for (int b = 0; b < n && !has_inverse; ++b) has_inverse = g.table[a][b] == e && g.table[b][a] == e;
    if (!has_inverse) {
      v.valid = false;
      v.violations.push_back({"inverse", {a}});
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]]) {
          v.valid = false;
          v.violations.push_back({"associativity", {a, b, c}});
          if (v.violations.size() > 16) return v;
        }
  return v;
}

/// Closure of generators under a composition law, with the induced Cayley table.
/// Elements are compared with operator==; the identity comes first.
template <class T, class Compose>
std::optional<std::pair<std::vector<T>, FiniteGroup>> generate_group(const T& identity, const std::vector<T>& gens,
                                                                     Compose compose, int max_order = 48) {
  std::vector<T> elems{identity};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      T h = compose(elems[i], g);
      bool seen = false;
      for (const auto& x : elems)
        if (x == h) {
          seen = true;
          break;
        }
      if (!seen) {
        elems.push_back(h);
        if (static_cast<int>(elems.size()) > max_order) return std::nullopt;
      }
    }
  }
  FiniteGroup grp;
  const int n = static_cast<int>(elems.size());
  for (int i = 0; i < n; ++i) grp.elements.push_back("g" + std::to_string(i));
  grp.elements[0] = "e";
  grp.table.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      T h = compose(elems[a], elems[b]);
      for (int c = 0; c < n; ++c)
        if (elems[c] == h) {
          grp.table[a][b] = c;
          break;
        }
    }
  grp.identity = 0;
  return std::make_pair(std::move(elems), std::move(grp));
}

/// Cyclic group C_n with labels e, g, g2, ...
inline FiniteGroup cyclic_group(int n) {
  FiniteGroup g;
  for (int i = 0; i < n; ++i) g.elements.push_back(i == 0 ? "e" : (i == 1 ? "g" : "g" + std::to_string(i)));
  g.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
  return g;
}

}  // namespace divfan
