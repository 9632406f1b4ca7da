#pragma once

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "divfan/fixture_documents.hpp"
#include "divfan/json_io.hpp"
#include "divfan/selftest.hpp"

namespace divfan::cli {

inline constexpr const char* kToolVersion = "0.1.0";

using io::json;

/// Outcome of a verb before the envelope is added.
struct Outcome {
  bool verdict = true;
  std::string witness;
  json payload = json::object();
};

/// "1,-2" or "1 -2" → dual vector of the given rank.
inline DualVector parse_m(const std::string& text, std::size_t rank) {
  std::string s = text;
  for (auto& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<Rational> v;
  for (std::string tok; in >> tok;) v.push_back(parse_rational(tok));
  if (v.size() != rank)
    throw Error(ErrorKind::RankMismatch, "--m has " + std::to_string(v.size()) + " entries, rank is " + std::to_string(rank));
  return DualVector(v);
}

/// The built-in fixture documents merged into one namespace.
inline io::Document builtin_document() {
  json merged = {{"version", io::kDocumentVersion}};
  for (const auto& [name, doc] : fixtures::documents::all()) {
    auto j = io::dump_document(doc);
    for (const auto& [key, coll] : j.items()) {
      if (!coll.is_object()) continue;
      if (!merged.contains(key)) merged[key] = json::object();
      for (const auto& [n, v] : coll.items())
        if (!merged[key].contains(n)) merged[key][n] = v;
    }
  }
  return io::load_document(merged);
}

struct Options {
  std::string document;
  unsigned jobs = 1;
  std::optional<long> bound;
  bool no_timing = false;
  std::string fan, toric, hom, action, member, ppdivisor, m, f, sub, super;
  bool dump_lp = false;
  unsigned seed = 2026;
};

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  long bound() const { return o_.bound ? *o_.bound : default_face_bound(); }

  const io::Document& doc() {
    if (!doc_) doc_ = o_.document.empty() ? builtin_document() : io::load_file(o_.document);
    return *doc_;
  }
  const std::string& required(const std::string& v, const char* flag) const {
    if (v.empty()) throw Error(ErrorKind::MalformedInput, std::string("missing ") + flag);
    return v;
  }
  DivisorialFan fan(const std::string& name) { return closure_generate(doc().fan_members(doc().fan(name)), bound()); }

  /// Action with assignments completed over the closed fan.
  GaloisFanAction action(const DivisorialFan& s, const std::string& name) {
    const auto& rec = doc().action(name);
    if (rec.fan != o_.fan) throw Error(ErrorKind::MalformedInput, "action " + name + " belongs to fan " + rec.fan);
    auto act = rec.action;
    for (auto& e : act.elements) e = complete_assignment(s, e);
    return act;
  }

  Outcome validate() {
    Outcome out;
    std::vector<std::string> fans;
    if (!o_.fan.empty())
      fans.push_back(o_.fan);
    else
      for (const auto& [n, f] : doc().fans) fans.push_back(n);
    json reports = json::array();
    for (const auto& name : fans) {
      const auto& rec = doc().fan(name);
      json r = {{"fan", name}};
      json certs = json::array();
      bool ok = true;
      for (const auto& c : rec.certificates) {
        auto v = verify_face(doc().ppdivisor(c.sub), doc().ppdivisor(c.super), c.witnesses);
        certs.push_back({{"sub", c.sub}, {"super", c.super}, {"valid", v.ok}, {"witness", v.witness}});
        if (!v.ok && ok) {
          ok = false;
          out.witness = name + ": certificate " + c.sub + " in " + c.super + " fails " + v.clause + ": " + v.witness;
        }
      }
      r["certificates"] = certs;
      json proper = json::array();
      for (const auto& d : doc().fan_members(rec)) {
        auto p = check_proper(d);
        proper.push_back({{"member", d.name()}, {"proper", p.verdict.ok}});
        if (!p.verdict.ok && ok) {
          ok = false;
          out.witness = name + ": " + d.name() + " is not proper: " + p.verdict.witness;
        }
      }
      r["proper"] = proper;
      try {
        auto s = closure_generate(doc().fan_members(rec), bound());
        auto v = validate_fan(s);
        json gen = json::array();
        for (const auto& d : s.members())
          if (std::find(rec.members.begin(), rec.members.end(), d.name()) == rec.members.end())
            gen.push_back(to_json(d, doc().fields));
        json edges = json::array();
        for (const auto& e : s.edges())
          edges.push_back({{"sub", s.members()[e.sub].name()},
                           {"super", s.members()[e.super].name()},
                           {"witnesses", io::to_json(e.certificate)}});
        r["generated_members"] = gen;
        r["edges"] = edges;
        r["fan_valid"] = v.ok;
        if (!v.ok && ok) {
          ok = false;
          out.witness = name + ": " + v.clause + ": " + v.witness;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::FaceCertificateNotFound && e.kind() != ErrorKind::NotAFan) throw;
        r["fan_valid"] = false;
        if (ok) out.witness = name + ": " + e.what();
        ok = false;
      }
      out.verdict = out.verdict && ok;
      reports.push_back(r);
    }
    out.payload["fans"] = reports;
    return out;
  }

  Outcome eval() {
    const auto& d = doc().ppdivisor(required(o_.ppdivisor, "--ppdivisor"));
    auto m = parse_m(required(o_.m, "--m"), d.rank());
    Outcome out;
    out.payload["divisor"] = io::to_json(evaluate(d, m));
    return out;
  }

  Outcome face() {
    const auto& sub = doc().ppdivisor(required(o_.sub, "--sub"));
    const auto& super = doc().ppdivisor(required(o_.super, "--super"));
    Outcome out;
    auto cert = search_face(sub, super, bound());
    out.verdict = cert.has_value();
    out.payload["bound"] = bound();
    if (cert) {
      auto v = verify_face(sub, super, *cert);
      if (!v.ok) throw Error(ErrorKind::FaceCertificateNotFound, "search returned an unverifiable certificate");
      out.payload["certificate"] = io::to_json(*cert);
    } else {
      out.payload["certificate"] = nullptr;
      out.witness = "no certificate with |m| <= " + std::to_string(bound());
    }
    return out;
  }

  Outcome localize() {
    const auto& d = doc().ppdivisor(required(o_.ppdivisor, "--ppdivisor"));
    auto m = parse_m(required(o_.m, "--m"), d.rank());
    auto f = io::function_from(io::parse_json_text(required(o_.f, "--f")), d.base().field());
    auto loc = localize_with_zero_set(d, m, f);
    Outcome out;
    loc.divisor.set_name(d.name() + "_loc");
    out.payload["ppdivisor"] = to_json(loc.divisor, doc().fields);
    json z = json::array();
    for (const auto& p : loc.zero_set) z.push_back(io::to_json(p));
    out.payload["zero_set"] = z;
    return out;
  }

  Outcome separated() {
    auto r = separatedness_check(fan(required(o_.fan, "--fan")));
    Outcome out{r.verdict.ok, r.verdict.witness, json::object()};
    out.payload["pairs_checked"] = r.pairs_checked;
    out.payload["valuations"] = r.valuations;
    json mu = json::array();
    for (const auto& [p, w] : r.failing_mu) mu.push_back({{"point", io::to_json(p)}, {"weight", io::to_json(w)}});
    out.payload["failing_mu"] = mu;
    return out;
  }

  Outcome qp() {
    DivisorialFan s;
    if (!o_.toric.empty()) {
      s = detail::toric_divisorial_fan(doc().toric_fan(o_.toric).cones(), rationals());
    } else {
      s = fan(required(o_.fan, "--fan or --toric"));
    }
    auto r = quasiprojectivity_check(s);
    Outcome out{r.witness.has_value(), r.witness ? "" : "no strictly concave support function", io::to_json(r, o_.dump_lp)};
    return out;
  }

  Outcome aut() {
    auto a = fan_automorphism_group(doc().toric_fan(required(o_.toric, "--toric")));
    Outcome out;
    json els = json::array(), gens = json::array();
    for (const auto& e : a.elements) els.push_back(io::to_json(e));
    for (const auto& g : a.generators) gens.push_back(io::to_json(g));
    out.payload["group_order"] = a.elements.size();
    out.payload["generators"] = gens;
    out.payload["elements"] = els;
    return out;
  }

  Outcome action_verify() {
    auto s = fan(required(o_.fan, "--fan"));
    auto act = action(s, required(o_.action, "--action"));
    auto v = verify_galois_action(s, act);
    Outcome out{v.ok, v.ok ? "" : v.clause + ": " + v.witness, json::object()};
    out.payload["clause"] = v.clause;
    json asg = json::object();
    for (const auto& e : act.elements) asg[e.gamma] = e.assignment;
    out.payload["assignment"] = asg;
    return out;
  }

  Outcome orbit() {
    auto s = fan(required(o_.fan, "--fan"));
    auto act = action(s, required(o_.action, "--action"));
    auto orbit = orbit_subfan(s, act, required(o_.member, "--member"), bound());
    Outcome out;
    json members = json::array(), maximal = json::array();
    for (const auto& d : orbit.members()) members.push_back(d.name());
    for (auto i : orbit.maximal()) maximal.push_back(orbit.members()[i].name());
    out.payload["members"] = members;
    out.payload["maximal"] = maximal;
    return out;
  }

  Outcome descent() {
    DescentReport r;
    if (!o_.toric.empty() || !o_.hom.empty()) {
      const auto& h = doc().hom(required(o_.hom, "--hom"));
      const auto& t = doc().toric_fan(o_.toric.empty() ? h.toric_fan : o_.toric);
      r = toric_descent_check(t, doc().group(h.group), h.images, o_.jobs);
    } else {
      auto s = fan(required(o_.fan, "--fan or --toric"));
      r = tvariety_descent_check(s, action(s, required(o_.action, "--action")), bound(), o_.jobs);
    }
    Outcome out{r.conclusion, "", io::to_json(r)};
    if (!r.action.ok)
      out.witness = "action: " + r.action.clause + ": " + r.action.witness;
    else
      for (const auto& o : r.orbit_results)
        if (!o.quasiprojective) {
          out.witness = "orbit fan of " + o.member + " is not quasi-projective";
          break;
        }
    return out;
  }

  Outcome selftest() {
    Outcome out;
    json suites = json::array();
    for (const auto& r : run_property_suites(o_.seed, o_.jobs)) {
      suites.push_back({{"suite", r.name}, {"cases", r.cases}, {"failures", r.failures}});
      if (r.failures && out.verdict) out.witness = r.name + ": " + r.first_failure;
      out.verdict = out.verdict && r.failures == 0;
    }
    out.payload["suites"] = suites;
    return out;
  }

 private:
  Options o_;
  std::optional<io::Document> doc_;
};

/// Runs one verb; the report goes to `out`, diagnostics to `err`. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for pp-divisors, divisorial fans and Galois descent"};
  app.require_subcommand(1);
  Options o;
  std::optional<long> bound;
  app.add_option("--jobs", o.jobs, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u));
  app.add_option("--bound", bound, "face-search bound (overrides DIVFAN_BOUND)")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", o.no_timing, "report timing_ms as 0");

  std::string verb;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("document", o.document, "JSON document (default: the built-in fixtures)");
    sc->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    sc->add_option("--bound", bound, "face-search bound")->check(CLI::PositiveNumber);
    sc->add_flag("--no-timing", o.no_timing, "report timing_ms as 0");
    sc->callback([&verb, name] { verb = name; });
    return sc;
  };
  auto* validate = add("validate", "fan well-formedness, closure and certificates");
  validate->add_option("--fan", o.fan);
  auto* eval = add("eval", "evaluate a pp-divisor at m");
  eval->add_option("--ppdivisor", o.ppdivisor)->required();
  eval->add_option("--m", o.m)->required();
  auto* face = add("face", "search a face certificate");
  face->add_option("--sub", o.sub)->required();
  face->add_option("--super", o.super)->required();
  auto* loc = add("localize", "localize a pp-divisor at a section f of D(m)");
  loc->add_option("--ppdivisor", o.ppdivisor)->required();
  loc->add_option("--m", o.m)->required();
  loc->add_option("--f", o.f, "function as JSON {\"c\":..., \"factors\":[...]}")->required();
  add("separated", "separatedness of a fan")->add_option("--fan", o.fan)->required();
  auto* qp = add("qp", "quasi-projectivity of a fan");
  auto* qf = qp->add_option("--fan", o.fan);
  qp->add_option("--toric", o.toric)->excludes(qf);
  qp->add_flag("--dump-lp", o.dump_lp, "include the linear program in the report");
  add("aut", "automorphism group of a toric fan")->add_option("--toric", o.toric)->required();
  auto* av = add("action-verify", "verify a Galois semilinear action on a fan");
  av->add_option("--fan", o.fan)->required();
  av->add_option("--action", o.action)->required();
  auto* orb = add("orbit", "orbit subfan of a member");
  orb->add_option("--fan", o.fan)->required();
  orb->add_option("--action", o.action)->required();
  orb->add_option("--member", o.member)->required();
  auto* desc = add("descent", "descent criterion");
  desc->add_option("--fan", o.fan);
  desc->add_option("--action", o.action);
  desc->add_option("--toric", o.toric);
  desc->add_option("--hom", o.hom);
  auto* st = add("selftest", "run the randomized property suites");
  st->add_option("--seed", o.seed);

  auto start = std::chrono::steady_clock::now();
  json report = {{"tool_version", kToolVersion}};
  auto finish = [&](int code) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing_ms"] = o.no_timing ? 0 : static_cast<long>(ms);
    out << io::canonical_text(report);
    return code;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    report["verdict"] = nullptr;
    report["witness"] = nullptr;
    report["error"] = {{"kind", "UsageError"}, {"message", e.what()}};
    return finish(2);
  }
  o.bound = bound;
  report["verb"] = verb;
  Runner r(o);
  const std::map<std::string, std::function<Outcome()>> verbs = {
      {"validate", [&] { return r.validate(); }},   {"eval", [&] { return r.eval(); }},
      {"face", [&] { return r.face(); }},           {"localize", [&] { return r.localize(); }},
      {"separated", [&] { return r.separated(); }}, {"qp", [&] { return r.qp(); }},
      {"aut", [&] { return r.aut(); }},             {"action-verify", [&] { return r.action_verify(); }},
      {"orbit", [&] { return r.orbit(); }},         {"descent", [&] { return r.descent(); }},
      {"selftest", [&] { return r.selftest(); }},
  };
  try {
    auto res = verbs.at(verb)();
    for (const auto& [k, v] : res.payload.items()) report[k] = v;
    report["verdict"] = res.verdict;
    report["witness"] = res.verdict ? json() : json(res.witness);
    return finish(res.verdict ? 0 : 1);
  } catch (const Error& e) {
    report = {{"tool_version", kToolVersion}, {"verb", verb}, {"verdict", nullptr}, {"witness", nullptr}};
    report["error"] = {{"kind", error_kind_name(e.kind())}, {"message", e.message()}};
    err << e.what() << "\n";
    return finish(2);
  }
}

}  // namespace divfan::cli
