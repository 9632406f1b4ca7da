#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divfan/divisorial_fan.hpp"
#include "divfan/group.hpp"
#include "divfan/parallel.hpp"

namespace divfan {

inline constexpr std::size_t kAutomorphismRankBudget = 3;
inline constexpr std::size_t kAutomorphismRayBudget = 24;
inline constexpr int kHomGroupBudget = 24;

// ---------------------------------------------------------------------------
// Toric fans

/// All faces of a pointed cone, the cone itself included.
inline std::vector<Cone> cone_faces(const Cone& c) {
  if (!c.is_pointed()) throw Error(ErrorKind::NonPointed, "face enumeration needs a pointed cone");
  const auto& rays = c.rays();
  if (rays.size() > 20) throw Error(ErrorKind::SizeBudgetExceeded, "cone has too many rays");
  std::set<Cone> out{Cone::zero(c.ambient_rank())};
  for (unsigned long mask = 1; mask < (1ul << rays.size()); ++mask) {
    auto v = LatticeVector::zero(c.ambient_rank());
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (mask & (1ul << i)) v = v + rays[i];
    out.insert(c.minimal_face_containing(v));
  }
  return {out.begin(), out.end()};
}

/// Face-closed set of pointed cones whose pairwise intersections are common faces.
class ToricFan {
 public:
  ToricFan() = default;
  ToricFan(std::size_t rank, const std::vector<Cone>& cones, std::string name = "") : rank_(rank), name_(std::move(name)) {
    std::set<Cone> all;
    for (const auto& c : cones) {
      if (c.ambient_rank() != rank) throw Error(ErrorKind::RankMismatch, "cone rank differs from the fan");
      for (const auto& f : cone_faces(c)) all.insert(f);
    }
    cones_.assign(all.begin(), all.end());
    for (std::size_t i = 0; i < cones_.size(); ++i)
      for (std::size_t j = i + 1; j < cones_.size(); ++j) {
        auto x = cones_[i].intersect(cones_[j]);
        if (!cone_face_test(x, cones_[i]) || !cone_face_test(x, cones_[j]))
          throw Error(ErrorKind::NotAFan, to_string(cones_[i]) + " and " + to_string(cones_[j]) + " overlap");
      }
  }

  std::size_t rank() const { return rank_; }
  const std::string& name() const { return name_; }
  const std::vector<Cone>& cones() const { return cones_; }
  bool contains(const Cone& c) const { return std::binary_search(cones_.begin(), cones_.end(), c); }
  std::vector<Cone> maximal() const {
    std::vector<Cone> out;
    for (const auto& c : cones_) {
      bool top = true;
      for (const auto& d : cones_)
        if (d != c && d.contains(c)) top = false;
      if (top) out.push_back(c);
    }
    return out;
  }
  /// Primitive generators of the one-dimensional cones.
  std::vector<LatticeVector> rays() const {
    std::vector<LatticeVector> out;
    for (const auto& c : cones_)
      if (c.rays().size() == 1) out.push_back(c.rays()[0]);
    return out;
  }

 private:
  std::size_t rank_ = 0;
  std::string name_;
  std::vector<Cone> cones_;
};

inline bool is_fan_automorphism(const ToricFan& sigma, const IntMatrix& f) {
  const std::size_t n = sigma.rank();
  if (f.rows() != n || f.cols() != n) return false;
  Rational d = f.det();
  if (d != 1 && d != -1) return false;
  for (const auto& c : sigma.cones())
    if (!sigma.contains(c.image(f))) return false;
  return true;
}

struct AutomorphismGroup {
  std::vector<IntMatrix> elements;  // identity first
  FiniteGroup group;
  std::vector<IntMatrix> generators;
};

/// Smallest-first greedy generating set.
inline std::vector<int> group_generators(const FiniteGroup& g) {
  std::vector<int> gens;
  std::set<int> span{g.identity};
  for (int x = 0; x < g.order(); ++x) {
    if (span.count(x)) continue;
    gens.push_back(x);
    std::vector<int> frontier(span.begin(), span.end());
    frontier.push_back(x);
    span.insert(x);
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (int s : gens) {
        int y = g.mul(frontier[i], s);
        if (span.insert(y).second) frontier.push_back(y);
      }
  }
  return gens;
}

/// Aut(Σ): bijections of the rays that extend to unimodular maps preserving the cones.
inline AutomorphismGroup fan_automorphism_group(const ToricFan& sigma) {
  const std::size_t n = sigma.rank();
  if (n > kAutomorphismRankBudget) throw Error(ErrorKind::RankBudgetExceeded, "automorphism rank exceeds 3");
  auto rays = sigma.rays();
  if (rays.size() > kAutomorphismRayBudget) throw Error(ErrorKind::SizeBudgetExceeded, "more than 24 rays");
  for (const auto& c : sigma.cones())
    if (!c.is_pointed()) throw Error(ErrorKind::NonPointed, "fan has a non-pointed cone");
  // A maximal independent set of rays fixes the matrix.
  std::vector<std::size_t> basis;
  std::vector<linalg::Row> rows;
  for (std::size_t i = 0; i < rays.size() && basis.size() < n; ++i) {
    rows.push_back(rays[i].c);
    if (linalg::rank(rows) == rows.size())
      basis.push_back(i);
    else
      rows.pop_back();
  }
  if (basis.size() < n) throw Error(ErrorKind::MalformedInput, "rays do not span the lattice");
  linalg::Matrix b(n, linalg::Row(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) b[i][j] = rays[basis[j]][i];
  auto b_inv = *linalg::inverse(b);

  std::set<IntMatrix> found;
  std::vector<std::size_t> pick(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      linalg::Matrix r(n, linalg::Row(n));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) r[i][j] = rays[pick[j]][i];
      auto m = linalg::mat_mul(r, b_inv);
      IntMatrix f;
      f.a.assign(n, std::vector<long>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (m[i][j].get_den() != 1) return;
          f.a[i][j] = m[i][j].get_num().get_si();
        }
      if (is_fan_automorphism(sigma, f)) found.insert(f);
      return;
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (std::find(pick.begin(), pick.begin() + static_cast<long>(k), r) != pick.begin() + static_cast<long>(k)) continue;
      pick[k] = r;
      rec(k + 1);
    }
  };
  rec(0);

  AutomorphismGroup out;
  out.elements.push_back(IntMatrix::identity(n));
  for (const auto& f : found)
    if (f != out.elements[0]) out.elements.push_back(f);
  const int order = static_cast<int>(out.elements.size());
  auto& g = out.group;
  for (int i = 0; i < order; ++i) g.elements.push_back(i == 0 ? "e" : "F" + std::to_string(i));
  g.table.assign(order, std::vector<int>(order, -1));
  for (int a = 0; a < order; ++a)
    for (int c = 0; c < order; ++c) {
      auto p = out.elements[a] * out.elements[c];
      for (int k = 0; k < order; ++k)
        if (out.elements[k] == p) g.table[a][c] = k;
    }
  for (int x : group_generators(g)) out.generators.push_back(out.elements[x]);
  return out;
}

inline bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const std::vector<int>& img) {
  if (static_cast<int>(img.size()) != from.order()) return false;
  for (int a = 0; a < from.order(); ++a)
    for (int b = 0; b < from.order(); ++b)
      if (img[from.mul(a, b)] != to.mul(img[a], img[b])) return false;
  return true;
}

/// Every homomorphism from → to, by exhausting generator images.
inline std::vector<std::vector<int>> enumerate_homomorphisms(const FiniteGroup& from, const FiniteGroup& to) {
  if (from.order() > kHomGroupBudget) throw Error(ErrorKind::SizeBudgetExceeded, "source group larger than 24");
  auto gens = group_generators(from);
  std::vector<std::vector<int>> out;
  std::vector<int> choice(gens.size(), 0);
  while (true) {
    std::vector<int> img(from.order(), -1);
    img[from.identity] = to.identity;
    std::vector<int> frontier{from.identity};
    bool ok = true;
    for (std::size_t i = 0; i < frontier.size() && ok; ++i)
      for (std::size_t s = 0; s < gens.size() && ok; ++s) {
        int x = from.mul(frontier[i], gens[s]);
        int y = to.mul(img[frontier[i]], choice[s]);
        if (img[x] == -1) {
          img[x] = y;
          frontier.push_back(x);
        } else if (img[x] != y) {
          ok = false;
        }
      }
    if (ok && is_homomorphism(from, to, img)) out.push_back(img);
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == to.order()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plurifunctions and transport

/// 𝔣|_𝔇: the terms whose divisor lies in Supp(𝔇) ∪ extra.
inline Plurifunction restrict_plurifunction(const Plurifunction& pf, const PPDivisor& d,
                                            const std::set<BasePoint>& extra = {}) {
  if (pf.rank() != d.rank()) throw Error(ErrorKind::RankMismatch, "plurifunction and pp-divisor lattices differ");
  Plurifunction r(pf.rank(), pf.field());
  if (d.base().is_point()) return r;
  auto supp = d.points();
  supp.insert(extra.begin(), extra.end());
  for (const auto& t : pf.terms()) {
    auto div = divisor_of_function(t.f, BaseVariety::line(pf.field()));
    if (div.terms().empty()) continue;
    bool inside = true;
    for (const auto& [p, c] : div.terms()) inside = inside && supp.count(p);
    if (inside) r.add(t.v, t.f);
  }
  return r;
}

inline std::optional<IntMatrix> unimodular_inverse(const IntMatrix& f) {
  const std::size_t n = f.rows();
  if (f.cols() != n) return std::nullopt;
  linalg::Matrix m(n, linalg::Row(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = f.a[i][j];
  auto inv = linalg::inverse(m);
  if (!inv) return std::nullopt;
  IntMatrix out;
  out.a.assign(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if ((*inv)[i][j].get_den() != 1) return std::nullopt;
      out.a[i][j] = (*inv)[i][j].get_num().get_si();
    }
  return out;
}

/// The triple g⁻¹ with g⁻¹ ∘ g = identity.
inline PPDMorphism inverse_morphism(const PPDMorphism& g) {
  if (g.point_collapse) throw Error(ErrorKind::ChainMismatch, "a point-collapse has no inverse");
  auto f_inv = unimodular_inverse(g.F);
  if (!f_inv) throw Error(ErrorKind::MalformedInput, "lattice map is not invertible over the integers");
  auto psi_inv = g.psi.inverse();
  return {psi_inv, *f_inv, psi_inv.pullback(g.plurifn.push(*f_inv)).inverse(), false};
}

/// g·𝔇: the coefficient at ψ(p) is F(Δ_p) + Σ ord_p(fᵢ)vᵢ, with tail F(ω).
inline PPDivisor transport(const PPDivisor& d, const PPDMorphism& g) {
  Cone tail = d.tail().image(g.F);
  if (d.base().is_point()) {
    std::vector<PPDivisor::Entry> none;
    return PPDivisor::make(d.base(), tail, none, d.name());
  }
  std::set<BasePoint> removed;
  for (const auto& q : d.base().removed()) removed.insert(g.psi.apply(q));
  auto base = BaseVariety::open(d.base().field(), removed);
  std::set<BasePoint> pts = d.points();
  for (const auto& p : g.plurifn.support(d.base())) pts.insert(p);
  std::vector<PPDivisor::Entry> entries;
  for (const auto& p : pts) {
    if (!d.base().contains(p)) continue;
    auto c = d.coefficient(p);
    entries.push_back({g.psi.apply(p), c ? std::optional<Polyhedron>(c->image(g.F, tail).translate(g.plurifn.order_at(p)))
                                         : std::nullopt});
  }
  return PPDivisor::make(base, tail, entries, d.name());
}

// ---------------------------------------------------------------------------
// Semilinear morphisms of fans and Galois actions

struct SemilinearFanMorphism {
  std::string gamma;
  PPDMorphism phi;
  std::map<std::string, std::string> assignment;  // member name → member name
};

/// Coefficient points of every member together with the removed base points.
inline std::set<BasePoint> fan_support(const DivisorialFan& s) {
  std::set<BasePoint> out;
  if (s.base().is_point()) return out;
  for (const auto& d : s.members())
    for (const auto& p : d.points()) out.insert(p);
  for (const auto& p : s.base().removed()) out.insert(p);
  return out;
}

/// (ψ, F, 𝔣|_X): X → Y verifies, and so does its inverse Y → X.
inline Verdict verify_member_isomorphism(const PPDivisor& x, const PPDivisor& y, const PPDMorphism& g,
                                         const std::set<BasePoint>& support) {
  PPDMorphism gx = g;
  gx.plurifn = restrict_plurifunction(g.plurifn, x, support);
  auto fwd = verify_morphism(x, y, gx);
  if (!fwd) return Verdict::fail("member " + x.name(), "to " + y.name() + ": " + fwd.witness);
  if (!unimodular_inverse(g.F)) return Verdict::fail("invertible", "F is not unimodular");
  auto back = verify_morphism(y, x, inverse_morphism(gx));
  if (!back) return Verdict::fail("invertible", x.name() + " <- " + y.name() + ": " + back.witness);
  return Verdict::pass();
}

/// A-priori member relation: the face poset on a point base, the certified edges otherwise.
inline GluingPoset member_poset(const DivisorialFan& s) {
  if (!s.base().is_point()) return gluing_poset(s);
  GluingPoset g;
  const auto& m = s.members();
  for (const auto& d : m) g.nodes.push_back(d.name());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (cone_face_test(m[i].tail(), m[j].tail())) g.leq.insert({i, j});
  return g;
}

inline Verdict verify_semilinear_fan_morphism(const DivisorialFan& s, const SemilinearFanMorphism& g) {
  const auto& m = s.members();
  auto support = fan_support(s);
  for (const auto& d : m) {
    auto it = g.assignment.find(d.name());
    if (it == g.assignment.end()) return Verdict::fail("assignment", d.name() + " has no target");
    auto y = s.find_name(it->second);
    if (!y) return Verdict::fail("assignment", it->second + " is not a member");
    auto v = verify_member_isomorphism(d, m[*y], g.phi, support);
    if (!v) return v;
  }
  auto poset = member_poset(s);
  for (const auto& [a, b] : poset.leq) {
    auto ta = *s.find_name(g.assignment.at(m[a].name()));
    auto tb = *s.find_name(g.assignment.at(m[b].name()));
    if (!poset.le(ta, tb))
      return Verdict::fail("faces", m[a].name() + " < " + m[b].name() + " but " + m[ta].name() + " is not below " +
                                        m[tb].name());
  }
  return Verdict::pass();
}

/// Fills unassigned members with the unique member that the triple maps them onto.
inline SemilinearFanMorphism complete_assignment(const DivisorialFan& s, SemilinearFanMorphism g) {
  auto support = fan_support(s);
  for (const auto& d : s.members()) {
    if (g.assignment.count(d.name())) continue;
    for (const auto& y : s.members())
      if (verify_member_isomorphism(d, y, g.phi, support)) {
        g.assignment[d.name()] = y.name();
        break;
      }
  }
  return g;
}

struct GaloisFanAction {
  FiniteGroup group;
  std::vector<FieldAutomorphism> galois;  // the Galois element behind each group element
  std::vector<SemilinearFanMorphism> elements;
};

inline Verdict verify_galois_action(const DivisorialFan& s, const GaloisFanAction& act) {
  const auto& grp = act.group;
  if (!verify_group_presentation(grp).valid) return Verdict::fail("group", "table is not a group");
  const int n = grp.order();
  if (static_cast<int>(act.elements.size()) != n || static_cast<int>(act.galois.size()) != n)
    return Verdict::fail("group", "one morphism and one Galois element per group element are required");
  for (int a = 0; a < n; ++a) {
    const auto& e = act.elements[a];
    if (e.gamma != grp.elements[a]) return Verdict::fail("section", "element " + grp.elements[a] + " is labelled " + e.gamma);
    if (e.phi.psi.twist() != act.galois[a]) return Verdict::fail("section", "twist of " + e.gamma + " is not its Galois element");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (act.galois[grp.mul(a, b)] != act.galois[a].compose(act.galois[b]))
        return Verdict::fail("section", "Galois labels are not multiplicative at (" + grp.elements[a] + "," + grp.elements[b] + ")");
  const auto& id = act.elements[grp.identity];
  const std::size_t rank = s.rank();
  if (!(id.phi.psi == SemilinearBaseMap::identity(id.phi.psi.field())) || id.phi.F != IntMatrix::identity(rank) ||
      id.phi.plurifn != Plurifunction::one(rank, id.phi.plurifn.field()))
    return Verdict::fail("identity", "identity element does not act trivially");
  for (const auto& [x, y] : id.assignment)
    if (x != y) return Verdict::fail("identity", "identity moves " + x);
  for (const auto& e : act.elements) {
    auto v = verify_semilinear_fan_morphism(s, e);
    if (!v) return Verdict::fail(v.clause, e.gamma + ": " + v.witness);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& ga = act.elements[a];
      const auto& gb = act.elements[b];
      const auto& gab = act.elements[grp.mul(a, b)];
      std::string pair = "(" + ga.gamma + "," + gb.gamma + ")";
      auto c = compose_morphisms(ga.phi, gb.phi);
      if (!(c.psi == gab.phi.psi) || c.F != gab.phi.F) return Verdict::fail("composition", pair);
      if (c.plurifn != gab.phi.plurifn) return Verdict::fail("cocycle", pair);
      for (const auto& d : s.members())
        if (ga.assignment.at(gb.assignment.at(d.name())) != gab.assignment.at(d.name()))
          return Verdict::fail("assignment", pair + " on " + d.name());
    }
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Orbits

/// 𝒮(𝔇,Γ) from the assigned translates of one member.
inline DivisorialFan orbit_subfan(const DivisorialFan& s, const GaloisFanAction& act, const std::string& member,
                                  long bound = default_face_bound()) {
  if (!s.find_name(member)) throw Error(ErrorKind::MalformedInput, "unknown member " + member);
  std::vector<PPDivisor> seed;
  for (const auto& e : act.elements) seed.push_back(s.members()[*s.find_name(e.assignment.at(member))]);
  return closure_generate(seed, bound);
}

/// Distinct translates g·𝔇 over a list of triples.
inline std::vector<PPDivisor> orbit_translates(const PPDivisor& d, const std::vector<PPDMorphism>& gs) {
  std::vector<PPDivisor> out;
  for (const auto& g : gs) {
    auto t = transport(d, g);
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

/// Necessary conditions for sub ⪯ super: tail face, smaller locus, coefficientwise faces.
inline bool face_candidate(const PPDivisor& sub, const PPDivisor& super) {
  if (!cone_face_test(sub.tail(), super.tail())) return false;
  std::set<BasePoint> pts = sub.points();
  for (const auto& p : super.points()) pts.insert(p);
  for (const auto& p : super.base().removed()) pts.insert(p);
  for (const auto& p : pts) {
    if (!sub.in_locus(p)) continue;
    auto c = super.coefficient(p);
    if (!c || !polyhedron_is_face(*sub.coefficient(p), *c)) return false;
  }
  return true;
}

/// Indices of translates that are not a certified face of another translate.
/// The closure's maximal members are exactly these, since every intersection
/// lies below some translate.
inline std::vector<std::size_t> maximal_translates(const std::vector<PPDivisor>& ts, long bound = default_face_bound()) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    bool below = false;
    for (std::size_t j = 0; j < ts.size() && !below; ++j)
      if (i != j && face_candidate(ts[i], ts[j]) && search_face(ts[i], ts[j], bound)) below = true;
    if (!below) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Descent

struct OrbitResult {
  std::string member;
  std::size_t orbit_size = 0;     // members of the orbit subfan
  std::size_t maximal_count = 0;  // its maximal members
  bool quasiprojective = false;
  std::optional<DivisorialSupportFunction> witness;
  std::optional<bool> elimination_feasible;
};

struct DescentReport {
  Verdict action;
  bool stable = false;
  std::vector<OrbitResult> orbit_results;
  bool conclusion = false;
};

namespace detail {

inline OrbitResult orbit_result(const std::string& name, const DivisorialFan& orbit) {
  OrbitResult r;
  r.member = name;
  r.orbit_size = orbit.members().size();
  r.maximal_count = orbit.base().is_point() ? ToricFan(orbit.rank(), tail_fan(orbit)).maximal().size()
                                            : orbit.maximal().size();
  auto qp = quasiprojectivity_check(orbit);
  r.quasiprojective = qp.witness.has_value();
  r.witness = qp.witness;
  r.elimination_feasible = qp.elimination_feasible;
  return r;
}

inline DivisorialFan toric_divisorial_fan(const std::vector<Cone>& cones, const FieldRef& field) {
  std::vector<PPDivisor> seed;
  for (std::size_t i = 0; i < cones.size(); ++i) seed.push_back(PPDivisor::toric(cones[i], "sigma" + std::to_string(i), field));
  return close_under_intersection(seed);
}

}  // namespace detail

/// Γ acts on Σ through hom; every orbit fan Σ(ω,Γ) must be quasi-projective.
inline DescentReport toric_descent_check(const ToricFan& sigma, const FiniteGroup& grp, const std::vector<IntMatrix>& hom,
                                         unsigned jobs = 1) {
  if (static_cast<int>(hom.size()) != grp.order()) throw Error(ErrorKind::NotAHomomorphism, "one matrix per group element is required");
  for (std::size_t i = 0; i < hom.size(); ++i)
    if (!is_fan_automorphism(sigma, hom[i]))
      throw Error(ErrorKind::NotAHomomorphism, grp.elements[i] + " is not sent to a fan automorphism");
  for (int a = 0; a < grp.order(); ++a)
    for (int b = 0; b < grp.order(); ++b)
      if (hom[grp.mul(a, b)] != hom[a] * hom[b])
        throw Error(ErrorKind::NotAHomomorphism, "law fails at (" + grp.elements[a] + "," + grp.elements[b] + ")");
  DescentReport rep;
  rep.action = Verdict::pass();
  rep.stable = true;
  const auto& cones = sigma.cones();
  rep.orbit_results = parallel_map(cones.size(), jobs, [&](std::size_t i) {
    std::set<Cone> orbit;
    for (const auto& f : hom) orbit.insert(cones[i].image(f));
    auto fan = detail::toric_divisorial_fan({orbit.begin(), orbit.end()}, rationals());
    return detail::orbit_result(to_string(cones[i]), fan);
  });
  rep.conclusion = std::all_of(rep.orbit_results.begin(), rep.orbit_results.end(),
                               [](const OrbitResult& r) { return r.quasiprojective; });
  return rep;
}

/// Every orbit subfan 𝒮(𝔇,Γ) must be quasi-projective.
inline DescentReport tvariety_descent_check(const DivisorialFan& s, const GaloisFanAction& act,
                                            long bound = default_face_bound(), unsigned jobs = 1) {
  DescentReport rep;
  rep.action = verify_galois_action(s, act);
  if (!rep.action) return rep;
  rep.stable = true;
  const auto& m = s.members();
  rep.orbit_results = parallel_map(m.size(), jobs, [&](std::size_t i) {
    return detail::orbit_result(m[i].name(), orbit_subfan(s, act, m[i].name(), bound));
  });
  rep.conclusion = std::all_of(rep.orbit_results.begin(), rep.orbit_results.end(),
                               [](const OrbitResult& r) { return r.quasiprojective; });
  return rep;
}

}  // namespace divfan
