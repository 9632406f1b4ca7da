#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "divfan/galois.hpp"
#include "json.hpp"

namespace divfan::io {

using json = nlohmann::json;

inline constexpr int kDocumentVersion = 1;

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

inline const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key '") + key + "'");
  return j.at(key);
}

inline long as_long(const json& j) {
  if (!j.is_number_integer()) malformed("expected an integer, got " + j.dump());
  return j.get<long>();
}

inline std::string as_string(const json& j) {
  if (!j.is_string()) malformed("expected a string, got " + j.dump());
  return j.get<std::string>();
}

// ---- scalars and vectors ----

inline json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(as_string(j));
}

template <class Tag>
json to_json(const Vector<Tag>& v) {
  json a = json::array();
  for (const auto& x : v.c) a.push_back(to_json(x));
  return a;
}

template <class V>
V vector_from(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) malformed("expected a vector of length " + std::to_string(n) + ", got " + j.dump());
  V v = V::zero(n);
  for (std::size_t i = 0; i < n; ++i) v.c[i] = rational_from(j[i]);
  return v;
}

inline json to_json(const IntMatrix& f) { return f.a; }

inline IntMatrix matrix_from(const json& j) {
  if (!j.is_array() || j.empty()) malformed("expected a nonempty integer matrix");
  IntMatrix f;
  for (const auto& row : j) {
    if (!row.is_array()) malformed("matrix rows must be arrays");
    std::vector<long> r;
    for (const auto& x : row) r.push_back(as_long(x));
    if (!f.a.empty() && r.size() != f.a[0].size()) malformed("ragged matrix");
    f.a.push_back(std::move(r));
  }
  return f;
}

// ---- fields ----

/// Named fields of a document plus the built-ins "Q" and "Qi".
class FieldTable {
 public:
  FieldTable() {
    named_["Q"] = rationals();
    named_["Qi"] = gaussian_rationals();
  }
  void add(const std::string& name, FieldRef f) {
    if (named_.count(name)) malformed("field '" + name + "' defined twice");
    named_[name] = std::move(f);
    user_.push_back(name);
  }
  FieldRef resolve(const json& j) const {
    if (j.is_string()) {
      auto it = named_.find(j.get<std::string>());
      if (it == named_.end()) malformed("unknown field '" + j.get<std::string>() + "'");
      return it->second;
    }
    return parse(j);
  }
  json ref(const FieldRef& f) const {
    for (const auto& [name, g] : named_)
      if (same_field(f, g)) return name;
    return describe(f);
  }
  const std::vector<std::string>& user_names() const { return user_; }
  const FieldRef& at(const std::string& n) const { return named_.at(n); }

  static FieldRef parse(const json& j) {
    std::vector<Rational> mod;
    for (const auto& x : need(j, "modulus")) mod.push_back(rational_from(x));
    std::string gen = j.contains("generator") ? as_string(j.at("generator")) : "a";
    auto f = make_field(std::move(mod), gen);
    if (same_field(f, rationals())) return rationals();
    if (same_field(f, gaussian_rationals())) return gaussian_rationals();
    return f;
  }
  static json describe(const FieldRef& f) {
    json m = json::array();
    for (const auto& c : f->modulus) m.push_back(to_json(c));
    return {{"modulus", m}, {"generator", f->generator}};
  }

 private:
  std::map<std::string, FieldRef> named_;
  std::vector<std::string> user_;
};

inline json to_json(const FieldElement& a) {
  json out = json::array();
  for (const auto& c : a.coeffs()) out.push_back(to_json(c));
  return out;
}

/// A list of rational strings, or a single rational for an element of ℚ ⊂ K.
inline FieldElement element_from(const json& j, const FieldRef& f) {
  if (!j.is_array()) return FieldElement::from_rational(f, rational_from(j));
  if (j.size() > static_cast<std::size_t>(f->degree())) malformed("field element has too many coefficients");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from(x));
  c.resize(f->degree(), Rational(0));
  return FieldElement(f, c);
}

// ---- base geometry ----

inline json to_json(const BasePoint& p) {
  switch (p.kind()) {
    case BasePoint::Kind::Infinity: return "inf";
    case BasePoint::Kind::Sole: return "pt";
    default: return {{"a", to_json(p.value())}};
  }
}

inline BasePoint point_from(const json& j, const FieldRef& f) {
  if (j.is_string()) {
    if (j == "inf") return BasePoint::infinity();
    if (j == "pt") return BasePoint::sole();
    malformed("unknown point " + j.dump());
  }
  return BasePoint::finite(element_from(need(j, "a"), f));
}

inline json to_json(const BaseVariety& y, const FieldTable& ft) {
  if (y.is_point()) return {{"kind", "point"}, {"field", ft.ref(y.field())}};
  json removed = json::array();
  for (const auto& p : y.removed()) removed.push_back(to_json(p));
  return {{"kind", "p1"}, {"field", ft.ref(y.field())}, {"removed", removed}};
}

inline BaseVariety base_from(const json& j, const FieldTable& ft) {
  auto kind = as_string(need(j, "kind"));
  FieldRef f = j.contains("field") ? ft.resolve(j.at("field")) : rationals();
  if (kind == "point") return BaseVariety::point(f);
  if (kind != "p1") malformed("unknown base kind '" + kind + "'");
  std::set<BasePoint> removed;
  if (j.contains("removed"))
    for (const auto& p : j.at("removed")) removed.insert(point_from(p, f));
  return BaseVariety::open(f, removed);
}

inline json to_json(const RationalFunction& f) {
  json fac = json::array();
  for (const auto& [p, e] : f.factors()) fac.push_back({{"root", to_json(p.value())}, {"exp", e}});
  return {{"c", to_json(f.constant_term())}, {"factors", fac}};
}

inline RationalFunction function_from(const json& j, const FieldRef& f) {
  auto c = j.contains("c") ? element_from(j.at("c"), f) : FieldElement::from_rational(f, 1);
  std::map<BasePoint, long> fac;
  if (j.contains("factors"))
    for (const auto& x : j.at("factors")) fac[BasePoint::finite(element_from(need(x, "root"), f))] += as_long(need(x, "exp"));
  return RationalFunction::make(c, fac);
}

inline json to_json(const Plurifunction& pf) {
  json out = json::array();
  for (const auto& t : pf.terms()) out.push_back({{"vector", to_json(t.v)}, {"function", to_json(t.f)}});
  return out;
}

inline Plurifunction plurifunction_from(const json& j, std::size_t rank, const FieldRef& f) {
  Plurifunction pf(rank, f);
  if (j.is_null()) return pf;
  if (!j.is_array()) malformed("a plurifunction is a list of {vector, function}");
  for (const auto& t : j)
    pf.add(vector_from<LatticeVector>(need(t, "vector"), rank), function_from(need(t, "function"), f));
  return pf;
}

// ---- polyhedral ----

inline json cone_to_json(const Cone& c) {
  json rays = json::array();
  for (const auto& r : c.rays()) rays.push_back(to_json(r));
  json out = {{"rays", rays}};
  if (!c.is_pointed()) {
    json lin = json::array();
    for (const auto& r : c.lineality()) lin.push_back(to_json(r));
    out["lineality"] = lin;
  }
  return out;
}

inline Cone cone_from(const json& j, std::size_t n) {
  std::vector<LatticeVector> rays, lin;
  if (j.contains("rays"))
    for (const auto& r : j.at("rays")) rays.push_back(vector_from<LatticeVector>(r, n));
  if (j.contains("lineality"))
    for (const auto& r : j.at("lineality")) lin.push_back(vector_from<LatticeVector>(r, n));
  return Cone::from_generators(n, rays, lin);
}

inline json to_json(const Polyhedron& p) {
  json vs = json::array();
  for (const auto& v : p.vertices()) vs.push_back(to_json(v));
  json out = cone_to_json(p.tail());
  out["vertices"] = vs;
  out["empty"] = p.is_empty();
  return out;
}

/// Rays default to `tail` when absent.
inline Polyhedron polyhedron_from(const json& j, std::size_t n, const std::optional<Cone>& tail = std::nullopt) {
  Cone t = j.contains("rays") || j.contains("lineality") || !tail ? cone_from(j, n) : *tail;
  if (j.value("empty", false)) return Polyhedron::empty_with_tail(t);
  std::vector<LatticeVector> vs;
  for (const auto& v : need(j, "vertices")) vs.push_back(vector_from<LatticeVector>(v, n));
  return Polyhedron::make(vs, t);
}

// ---- pp-divisors and fans ----

inline json to_json(const PPDivisor& d, const FieldTable& ft) {
  json coeffs = json::array();
  for (const auto& e : d.entries()) {
    if (e.poly)
      coeffs.push_back({{"point", to_json(e.point)}, {"poly", to_json(*e.poly)}});
    else
      coeffs.push_back({{"point", to_json(e.point)}, {"empty", true}});
  }
  return {{"name", d.name()}, {"base", to_json(d.base(), ft)}, {"rank", d.rank()}, {"tail", cone_to_json(d.tail())},
          {"coeffs", coeffs}};
}

inline json to_json(const FaceCertificate& cert) {
  json ws = json::array();
  for (const auto& w : cert) ws.push_back({{"m", to_json(w.m)}, {"f", to_json(w.f)}});
  return ws;
}

struct CertificateRecord {
  std::string sub, super;
  FaceCertificate witnesses;
};

/// A fan as stored: generating members by name plus optional face certificates.
struct FanRecord {
  BaseVariety base = BaseVariety::point();
  std::size_t rank = 0;
  std::vector<std::string> members;
  std::vector<CertificateRecord> certificates;
};

struct HomRecord {
  std::string group;
  std::string toric_fan;
  std::vector<IntMatrix> images;  // in group element order
};

struct ActionRecord {
  std::string group;
  std::string fan;
  GaloisFanAction action;  // elements in group order
};

/// A loaded document. Collections are keyed by name; dump() is canonical.
struct Document {
  FieldTable fields;
  std::map<std::string, BaseVariety> bases;
  std::map<std::string, PPDivisor> ppdivisors;
  std::map<std::string, FanRecord> fans;
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, ToricFan> toric_fans;
  std::map<std::string, HomRecord> homs;
  std::map<std::string, ActionRecord> actions;

  template <class M>
  static const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) malformed(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
  }
  const PPDivisor& ppdivisor(const std::string& n) const { return lookup(ppdivisors, n, "ppdivisor"); }
  const FanRecord& fan(const std::string& n) const { return lookup(fans, n, "fan"); }
  const FiniteGroup& group(const std::string& n) const { return lookup(groups, n, "group"); }
  const ToricFan& toric_fan(const std::string& n) const { return lookup(toric_fans, n, "toric fan"); }
  const HomRecord& hom(const std::string& n) const { return lookup(homs, n, "hom"); }
  const ActionRecord& action(const std::string& n) const { return lookup(actions, n, "action"); }

  std::vector<PPDivisor> fan_members(const FanRecord& f) const {
    std::vector<PPDivisor> out;
    for (const auto& m : f.members) out.push_back(ppdivisor(m));
    return out;
  }
};

inline BaseVariety base_ref_from(const json& j, const Document& doc) {
  if (j.is_string()) return Document::lookup(doc.bases, j.get<std::string>(), "base");
  return base_from(j, doc.fields);
}

inline PPDivisor ppdivisor_from(const json& j, const std::string& name, const Document& doc) {
  auto base = base_ref_from(need(j, "base"), doc);
  std::size_t n = static_cast<std::size_t>(as_long(need(j, "rank")));
  Cone tail = cone_from(need(j, "tail"), n);
  std::vector<PPDivisor::Entry> entries;
  if (j.contains("coeffs"))
    for (const auto& c : j.at("coeffs")) {
      auto p = point_from(need(c, "point"), base.field());
      if (c.value("empty", false))
        entries.push_back({p, std::nullopt});
      else
        entries.push_back({p, polyhedron_from(need(c, "poly"), n, tail)});
    }
  std::string label = j.contains("name") ? as_string(j.at("name")) : name;
  if (label != name) malformed("ppdivisor key '" + name + "' differs from its name '" + label + "'");
  auto d = PPDivisor::make(base, tail, entries, name);
  for (const auto& e : entries)
    if (!base.contains(e.point)) malformed("coefficient of " + name + " at a point outside the base");
  return d;
}

inline FaceCertificate certificate_from(const json& j, std::size_t n, const FieldRef& f) {
  FaceCertificate cert;
  for (const auto& w : j) cert.push_back({vector_from<DualVector>(need(w, "m"), n), function_from(need(w, "f"), f)});
  return cert;
}

inline FiniteGroup group_from(const json& j) {
  FiniteGroup g;
  for (const auto& e : need(j, "elements")) g.elements.push_back(as_string(e));
  for (const auto& row : need(j, "table")) {
    std::vector<int> r;
    for (const auto& x : row) {
      long v = as_long(x);
      if (v < 0 || v >= static_cast<long>(g.elements.size())) malformed("group table entry out of range");
      r.push_back(static_cast<int>(v));
    }
    if (r.size() != g.elements.size()) malformed("group table row has the wrong length");
    g.table.push_back(std::move(r));
  }
  if (g.table.size() != g.elements.size()) malformed("group table has the wrong number of rows");
  for (int e = 0; e < g.order(); ++e) {
    bool unit = true;
    for (int x = 0; x < g.order(); ++x) unit = unit && g.table[e][x] == x && g.table[x][e] == x;
    if (unit) {
      g.identity = e;
      break;
    }
  }
  return g;
}

inline json to_json(const FiniteGroup& g) { return {{"elements", g.elements}, {"table", g.table}}; }

inline json to_json(const SemilinearBaseMap& psi) {
  json m = json::array();
  for (const auto& x : psi.matrix()) m.push_back(to_json(x));
  return m;
}

/// Reads a whole document; every cross-reference must resolve.
inline Document load_document(const json& j) {
  if (!j.is_object()) malformed("a document is a JSON object");
  if (!j.contains("version") || as_long(j.at("version")) != kDocumentVersion)
    malformed("document version must be " + std::to_string(kDocumentVersion));
  static const std::set<std::string> known = {"version", "fields",     "bases", "ppdivisors", "fans",
                                              "groups",  "toric_fans", "homs",  "actions"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) malformed("unknown collection '" + k + "'");
  static const json empty = json::object();
  auto section = [&](const char* key) -> const json& {
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_object()) malformed(std::string("collection '") + key + "' must be an object");
    return j.at(key);
  };
  Document doc;
  for (const auto& [name, f] : section("fields").items()) doc.fields.add(name, FieldTable::parse(f));
  for (const auto& [name, b] : section("bases").items()) doc.bases.emplace(name, base_from(b, doc.fields));
  for (const auto& [name, d] : section("ppdivisors").items()) doc.ppdivisors.emplace(name, ppdivisor_from(d, name, doc));
  for (const auto& [name, f] : section("fans").items()) {
    FanRecord r;
    r.base = base_ref_from(need(f, "base"), doc);
    r.rank = static_cast<std::size_t>(as_long(need(f, "rank")));
    for (const auto& m : need(f, "members")) {
      const auto& d = doc.ppdivisor(as_string(m));
      if (d.base() != r.base) malformed("member " + d.name() + " of fan " + name + " has a different base");
      if (d.rank() != r.rank) malformed("member " + d.name() + " of fan " + name + " has a different rank");
      r.members.push_back(d.name());
    }
    if (f.contains("certificates"))
      for (const auto& c : f.at("certificates")) {
        CertificateRecord cr{as_string(need(c, "sub")), as_string(need(c, "super")), {}};
        doc.ppdivisor(cr.sub), doc.ppdivisor(cr.super);
        cr.witnesses = certificate_from(need(c, "witnesses"), r.rank, r.base.field());
        r.certificates.push_back(std::move(cr));
      }
    doc.fans.emplace(name, std::move(r));
  }
  for (const auto& [name, g] : section("groups").items()) doc.groups.emplace(name, group_from(g));
  for (const auto& [name, t] : section("toric_fans").items()) {
    std::size_t n = static_cast<std::size_t>(as_long(need(t, "rank")));
    std::vector<Cone> cones;
    for (const auto& c : need(t, "cones")) cones.push_back(cone_from(c, n));
    doc.toric_fans.emplace(name, ToricFan(n, cones, name));
  }
  for (const auto& [name, h] : section("homs").items()) {
    HomRecord r{as_string(need(h, "group")), as_string(need(h, "toric_fan")), {}};
    const auto& g = doc.group(r.group);
    const auto& t = doc.toric_fan(r.toric_fan);
    const auto& imgs = need(h, "images");
    for (const auto& label : g.elements) {
      if (!imgs.contains(label)) malformed("hom " + name + " has no image for '" + label + "'");
      auto f = matrix_from(imgs.at(label));
      if (f.rows() != t.rank() || f.cols() != t.rank()) malformed("hom " + name + " image has the wrong size");
      r.images.push_back(std::move(f));
    }
    doc.homs.emplace(name, std::move(r));
  }
  for (const auto& [name, a] : section("actions").items()) {
    ActionRecord r{as_string(need(a, "group")), as_string(need(a, "fan")), {}};
    const auto& g = doc.group(r.group);
    const auto& fan = doc.fan(r.fan);
    FieldRef f = fan.base.field();
    r.action.group = g;
    const auto& els = need(a, "elements");
    for (const auto& label : g.elements) {
      if (!els.contains(label)) malformed("action " + name + " has no entry for '" + label + "'");
      const auto& e = els.at(label);
      auto twist = e.contains("twist") ? FieldAutomorphism(element_from(e.at("twist"), f)) : FieldAutomorphism::identity(f);
      SemilinearBaseMap::Mat m{FieldElement::from_rational(f, 1), FieldElement::from_rational(f, 0),
                               FieldElement::from_rational(f, 0), FieldElement::from_rational(f, 1)};
      if (e.contains("mobius")) {
        const auto& mj = e.at("mobius");
        if (!mj.is_array() || mj.size() != 4) malformed("mobius is a list of four field elements");
        for (std::size_t k = 0; k < 4; ++k) m[k] = element_from(mj[k], f);
      }
      IntMatrix F = e.contains("F") ? matrix_from(e.at("F")) : IntMatrix::identity(fan.rank);
      if (F.rows() != fan.rank || F.cols() != fan.rank) malformed("action " + name + ": F has the wrong size");
      SemilinearFanMorphism sm{label,
                               {SemilinearBaseMap(m, twist), F,
                                plurifunction_from(e.value("plurifunction", json()), fan.rank, f), false},
                               {}};
      if (e.contains("assignment"))
        for (const auto& [src, dst] : e.at("assignment").items()) sm.assignment[src] = as_string(dst);
      r.action.galois.push_back(twist);
      r.action.elements.push_back(std::move(sm));
    }
    doc.actions.emplace(name, std::move(r));
  }
  return doc;
}

inline json dump_document(const Document& doc) {
  json out = {{"version", kDocumentVersion}};
  json fields = json::object();
  for (const auto& n : doc.fields.user_names()) fields[n] = FieldTable::describe(doc.fields.at(n));
  json bases = json::object();
  for (const auto& [n, b] : doc.bases) bases[n] = to_json(b, doc.fields);
  json pps = json::object();
  for (const auto& [n, d] : doc.ppdivisors) pps[n] = to_json(d, doc.fields);
  json fans = json::object();
  for (const auto& [n, f] : doc.fans) {
    json certs = json::array();
    for (const auto& c : f.certificates) certs.push_back({{"sub", c.sub}, {"super", c.super}, {"witnesses", to_json(c.witnesses)}});
    fans[n] = {{"base", to_json(f.base, doc.fields)}, {"rank", f.rank}, {"members", f.members}, {"certificates", certs}};
  }
  json groups = json::object();
  for (const auto& [n, g] : doc.groups) groups[n] = to_json(g);
  json tfs = json::object();
  for (const auto& [n, t] : doc.toric_fans) {
    json cones = json::array();
    for (const auto& c : t.maximal()) cones.push_back(cone_to_json(c));
    tfs[n] = {{"rank", t.rank()}, {"cones", cones}};
  }
  json homs = json::object();
  for (const auto& [n, h] : doc.homs) {
    const auto& g = doc.group(h.group);
    json imgs = json::object();
    for (int k = 0; k < g.order(); ++k) imgs[g.elements[k]] = to_json(h.images[k]);
    homs[n] = {{"group", h.group}, {"toric_fan", h.toric_fan}, {"images", imgs}};
  }
  json acts = json::object();
  for (const auto& [n, a] : doc.actions) {
    json els = json::object();
    for (const auto& e : a.action.elements)
      els[e.gamma] = {{"mobius", to_json(e.phi.psi)},
                      {"twist", to_json(e.phi.psi.twist().generator_image())},
                      {"F", to_json(e.phi.F)},
                      {"plurifunction", to_json(e.phi.plurifn)},
                      {"assignment", e.assignment}};
    acts[n] = {{"group", a.group}, {"fan", a.fan}, {"elements", els}};
  }
  out["fields"] = fields;
  out["bases"] = bases;
  out["ppdivisors"] = pps;
  out["fans"] = fans;
  out["groups"] = groups;
  out["toric_fans"] = tfs;
  out["homs"] = homs;
  out["actions"] = acts;
  return out;
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string canonical_text(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("JSON parse error: ") + e.what());
  }
}

inline Document load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_document(parse_json_text(ss.str()));
}

// ---- report payloads ----

inline json to_json(const QDivisor& d) {
  json out = json::array();
  for (const auto& [p, c] : d.terms()) out.push_back({{"point", to_json(p)}, {"coeff", to_json(c)}});
  return out;
}

inline json to_json(const DivisorialSupportFunction& h) {
  json cells = json::array();
  for (const auto& c : h.cells)
    cells.push_back({{"point", c.point ? to_json(*c.point) : json("generic")},
                     {"cell", to_json(c.cell)},
                     {"u", to_json(c.u)},
                     {"a", to_json(c.a)}});
  return {{"epsilon", to_json(h.epsilon)}, {"cells", cells}};
}

inline json to_json(const LinearProgram& p) {
  json rows = json::array();
  for (const auto& r : p.rows) {
    json a = json::array();
    for (const auto& x : r.a) a.push_back(to_json(x));
    rows.push_back({{"coeffs", a}, {"relation", r.rel == LinearProgram::Rel::Ge ? ">=" : "="}, {"rhs", to_json(r.rhs)}});
  }
  json obj = json::array();
  for (const auto& x : p.objective) obj.push_back(to_json(x));
  return {{"variables", p.variables}, {"constraints", rows}, {"objective", obj}};
}

inline json to_json(const QuasiprojectivityReport& r, bool with_program) {
  json out = {{"epsilon", to_json(r.epsilon)},
              {"support_function", r.witness ? to_json(*r.witness) : json()},
              {"elimination_feasible", r.elimination_feasible ? json(*r.elimination_feasible) : json()}};
  if (with_program) out["program"] = to_json(r.program);
  return out;
}

inline json to_json(const DescentReport& r) {
  json orbits = json::array();
  for (const auto& o : r.orbit_results)
    orbits.push_back({{"member", o.member},
                      {"orbit_size", o.orbit_size},
                      {"maximal_count", o.maximal_count},
                      {"quasiprojective", o.quasiprojective},
                      {"elimination_feasible", o.elimination_feasible ? json(*o.elimination_feasible) : json()}});
  return {{"action_valid", r.action.ok},
          {"action_clause", r.action.clause},
          {"stable", r.stable},
          {"orbits", orbits},
          {"conclusion", r.conclusion}};
}

}  // namespace divfan::io
