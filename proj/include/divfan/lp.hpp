#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divfan/linalg.hpp"
#include "divfan/rational.hpp"

namespace divfan {

inline constexpr std::size_t kLpVariableBudget = 200;
inline constexpr std::size_t kLpConstraintBudget = 2000;
inline constexpr std::size_t kFmVariableBudget = 12;
inline constexpr std::size_t kFmRowBudget = 200000;

/// Free variables; rows are a·x ≥ b or a·x = b; maximize c·x.
struct LinearProgram {
  enum class Rel { Ge, Eq };
  struct Row {
    linalg::Row a;
    Rel rel = Rel::Ge;
    Rational rhs;
  };

  std::vector<std::string> variables;
  std::vector<Row> rows;
  linalg::Row objective;

  std::size_t var(const std::string& name) {
    variables.push_back(name);
    for (auto& r : rows) r.a.push_back(0);
    objective.push_back(0);
    return variables.size() - 1;
  }
  std::size_t size() const { return variables.size(); }
  void ge(linalg::Row a, Rational rhs) { add(std::move(a), Rel::Ge, std::move(rhs)); }
  void eq(linalg::Row a, Rational rhs) { add(std::move(a), Rel::Eq, std::move(rhs)); }
  /// Satisfaction check for a full assignment.
  bool satisfied_by(const linalg::Row& x) const {
    for (const auto& r : rows) {
      Rational v = linalg::dot(r.a, x);
      if (r.rel == Rel::Eq ? v != r.rhs : v < r.rhs) return false;
    }
    return true;
  }

 private:
  void add(linalg::Row a, Rel rel, Rational rhs) {
    if (a.size() != variables.size()) throw Error(ErrorKind::MalformedInput, "constraint length differs from variable count");
    rows.push_back({std::move(a), rel, std::move(rhs)});
  }
};

struct LpResult {
  enum class Status { Optimal, Unbounded, Infeasible };
  Status status = Status::Infeasible;
  linalg::Row assignment;
  Rational objective_value;
  /// y with y ≥ 0 on ≥ rows, yᵀA = 0 and yᵀb > 0.
  std::optional<linalg::Row> farkas;
};

inline const char* status_name(LpResult::Status s) {
  switch (s) {
    case LpResult::Status::Optimal: return "optimal";
    case LpResult::Status::Unbounded: return "unbounded";
    case LpResult::Status::Infeasible: return "infeasible";
  }
  return "?";
}

inline bool check_farkas(const LinearProgram& p, const linalg::Row& y) {
  if (y.size() != p.rows.size()) return false;
  linalg::Row comb(p.size(), Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (p.rows[i].rel == LinearProgram::Rel::Ge && y[i] < 0) return false;
    for (std::size_t j = 0; j < p.size(); ++j) comb[j] += y[i] * p.rows[i].a[j];
    rhs += y[i] * p.rows[i].rhs;
  }
  return linalg::is_zero(comb) && rhs > 0;
}

namespace detail {

/// Dense tableau for min cᵀz, Az = b ≥ 0, z ≥ 0, with Bland's rule.
class Tableau {
 public:
  Tableau(linalg::Matrix a, linalg::Row b, std::size_t ncols)
      : a_(std::move(a)), b_(std::move(b)), n_(ncols), basis_(a_.size()) {}

  linalg::Matrix a_;
  linalg::Row b_;
  std::size_t n_;
  std::vector<std::size_t> basis_;

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / a_[r][c];
    for (auto& x : a_[r]) x *= inv;
    b_[r] *= inv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || a_[i][c] == 0) continue;
      Rational f = a_[i][c];
      for (std::size_t j = 0; j < n_; ++j)
        if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
      b_[i] -= f * b_[r];
    }
    basis_[r] = c;
  }

  linalg::Row reduced_costs(const linalg::Row& c) const {
    linalg::Row d = c;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (a_[i][j] != 0) d[j] -= cb * a_[i][j];
    }
    return d;
  }

  /// Returns false when unbounded. Columns with allowed[j] = false never enter.
  bool optimize(const linalg::Row& c, const std::vector<bool>& allowed) {
    for (;;) {
      auto d = reduced_costs(c);
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && d[j] < 0) {
          enter = j;
          break;
        }
      if (enter == n_) return true;
      std::size_t leave = a_.size();
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational ratio = b_[i] / a_[i][enter];
        if (leave == a_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == a_.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace detail

/// Exact two-phase simplex. Free variables are split as x = x⁺ − x⁻.
inline LpResult solve(const LinearProgram& p) {
  const std::size_t n = p.size(), m = p.rows.size();
  if (n > kLpVariableBudget || m > kLpConstraintBudget)
    throw Error(ErrorKind::SizeBudgetExceeded, "linear program exceeds the size budget");
  std::size_t nslack = 0;
  for (const auto& r : p.rows) nslack += r.rel == LinearProgram::Rel::Ge;
  // Columns: x⁺ (n), x⁻ (n), slacks, artificials (m).
  const std::size_t art0 = 2 * n + nslack, ncols = art0 + m;
  linalg::Matrix a(m, linalg::Row(ncols, Rational(0)));
  linalg::Row b(m);
  std::vector<int> sign(m, 1);
  std::size_t s = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = p.rows[i];
    sign[i] = r.rhs < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = sign[i] * r.a[j];
      a[i][n + j] = -sign[i] * r.a[j];
    }
    if (r.rel == LinearProgram::Rel::Ge) a[i][2 * n + s++] = -sign[i];
    a[i][art0 + i] = 1;
    b[i] = sign[i] * r.rhs;
  }
  detail::Tableau t(a, b, ncols);
  for (std::size_t i = 0; i < m; ++i) t.basis_[i] = art0 + i;

  linalg::Row c1(ncols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) c1[art0 + i] = 1;
  t.optimize(c1, std::vector<bool>(ncols, true));
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis_[i] >= art0) infeas += t.b_[i];

  LpResult res;
  if (infeas > 0) {
    // Phase-one duals: y*_i = 1 − (reduced cost of artificial i); undo row signs.
    auto d = t.reduced_costs(c1);
    linalg::Row y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = sign[i] * (1 - d[art0 + i]);
    if (!check_farkas(p, y)) throw Error(ErrorKind::MalformedInput, "internal: Farkas witness failed its check");
    res.status = LpResult::Status::Infeasible;
    res.farkas = y;
    return res;
  }
  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.a_.size();) {
    if (t.basis_[i] < art0) {
      ++i;
      continue;
    }
    std::size_t col = art0;
    for (std::size_t j = 0; j < art0; ++j)
      if (t.a_[i][j] != 0) {
        col = j;
        break;
      }
    if (col == art0) {
      t.a_.erase(t.a_.begin() + static_cast<long>(i));
      t.b_.erase(t.b_.begin() + static_cast<long>(i));
      t.basis_.erase(t.basis_.begin() + static_cast<long>(i));
      continue;
    }
    t.pivot(i, col);
    ++i;
  }
  linalg::Row c2(ncols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    c2[j] = -p.objective[j];
    c2[n + j] = p.objective[j];
  }
  std::vector<bool> allowed(ncols, true);
  for (std::size_t j = art0; j < ncols; ++j) allowed[j] = false;
  bool bounded = t.optimize(c2, allowed);
  linalg::Row z(ncols, Rational(0));
  for (std::size_t i = 0; i < t.a_.size(); ++i) z[t.basis_[i]] = t.b_[i];
  res.assignment.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) res.assignment[j] = z[j] - z[n + j];
  if (!p.satisfied_by(res.assignment)) throw Error(ErrorKind::MalformedInput, "internal: simplex point violates a row");
  res.objective_value = linalg::dot(p.objective, res.assignment);
  res.status = bounded ? LpResult::Status::Optimal : LpResult::Status::Unbounded;
  return res;
}

namespace detail {

inline linalg::Row normalize_row(linalg::Row r) {
  // Scale so the first nonzero coefficient has absolute value 1.
  for (std::size_t j = 0; j + 1 < r.size(); ++j)
    if (r[j] != 0) {
      Rational s = abs(r[j]);
      for (auto& x : r) x /= s;
      break;
    }
  return r;
}

}  // namespace detail

/// Feasibility of the rows of p by Fourier–Motzkin elimination (objective ignored).
/// Equations are substituted away first; the variable budget applies afterwards.
inline bool fm_eliminate(const LinearProgram& p) {
  std::size_t n = p.size();
  // Rows as (a | −b) meaning a·x − b ≥ 0.
  std::vector<linalg::Row> ge;
  linalg::Matrix eqs;
  for (const auto& r : p.rows) {
    linalg::Row row = r.a;
    row.push_back(-r.rhs);
    (r.rel == LinearProgram::Rel::Eq ? eqs : ge).push_back(row);
  }
  auto piv = linalg::rref(eqs, n + 1);
  for (std::size_t k = 0; k < piv.size(); ++k)
    if (piv[k] == n) return false;  // 0 = nonzero
  // Substitute each pivot variable: x_p = −(Σ_{j≠p} e_j x_j + e_n).
  for (auto& row : ge)
    for (std::size_t k = 0; k < piv.size(); ++k) {
      std::size_t pc = piv[k];
      if (row[pc] == 0) continue;
      Rational f = row[pc];
      for (std::size_t j = 0; j <= n; ++j) row[j] -= f * eqs[k][j];
    }
  std::vector<bool> alive(n, true);
  for (auto pc : piv) alive[pc] = false;
  std::size_t free_vars = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true));
  if (free_vars > kFmVariableBudget)
    throw Error(ErrorKind::SizeBudgetExceeded, "Fourier-Motzkin budget: " + std::to_string(free_vars) + " variables");

  // Each row carries the set of input rows it was combined from; Chernikov's
  // rule drops rows built from more than (eliminated + 1) inputs.
  struct FmRow {
    linalg::Row r;
    std::vector<bool> hist;
  };
  std::vector<FmRow> rows;
  for (std::size_t i = 0; i < ge.size(); ++i) {
    std::vector<bool> h(ge.size(), false);
    h[i] = true;
    rows.push_back({ge[i], h});
  }
  auto count = [](const std::vector<bool>& h) { return static_cast<std::size_t>(std::count(h.begin(), h.end(), true)); };
  auto compact = [&](std::vector<FmRow>& in, std::size_t eliminated) {
    // Only exact duplicates merge: dropping a looser parallel row could lose
    // the short-history row that Chernikov's rule relies on.
    std::map<linalg::Row, FmRow> best;
    for (auto& x : in) {
      x.r = detail::normalize_row(x.r);
      if (linalg::is_zero(linalg::Row(x.r.begin(), x.r.end() - 1))) {
        if (x.r.back() < 0) return false;
        continue;
      }
      if (eliminated > 0 && count(x.hist) > eliminated + 1) continue;
      auto it = best.find(x.r);
      if (it == best.end() || count(x.hist) < count(it->second.hist)) best.insert_or_assign(x.r, x);
    }
    in.clear();
    for (auto& [k, x] : best) in.push_back(std::move(x));
    return true;
  };
  if (!compact(rows, 0)) return false;
  std::size_t eliminated = 0;
  for (;;) {
    std::size_t pick = n;
    long cost = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      long pos = 0, neg = 0;
      for (const auto& x : rows) pos += x.r[j] > 0, neg += x.r[j] < 0;
      long c = pos * neg - pos - neg;
      if (pick == n || c < cost) pick = j, cost = c;
    }
    if (pick == n) break;
    alive[pick] = false;
    ++eliminated;
    std::vector<FmRow> pos, neg, next;
    for (auto& x : rows) (x.r[pick] > 0 ? pos : x.r[pick] < 0 ? neg : next).push_back(x);
    if (pos.size() * neg.size() + next.size() > kFmRowBudget)
      throw Error(ErrorKind::SizeBudgetExceeded, "Fourier-Motzkin row budget exceeded");
    for (const auto& rp : pos)
      for (const auto& rn : neg) {
        FmRow c{linalg::Row(n + 1), rp.hist};
        for (std::size_t i = 0; i < c.hist.size(); ++i) c.hist[i] = c.hist[i] || rn.hist[i];
        if (count(c.hist) > eliminated + 1) continue;
        Rational wp = -rn.r[pick], wn = rp.r[pick];
        for (std::size_t j = 0; j <= n; ++j) c.r[j] = wp * rp.r[j] + wn * rn.r[j];
        next.push_back(std::move(c));
      }
    rows.swap(next);
    if (!compact(rows, eliminated)) return false;
  }
  return true;
}

}  // namespace divfan
