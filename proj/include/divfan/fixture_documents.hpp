#pragma once

#include <map>
#include <string>

#include "divfan/fixtures.hpp"
#include "divfan/json_io.hpp"

namespace divfan::fixtures::documents {

using io::ActionRecord;
using io::Document;
using io::FanRecord;
using io::HomRecord;

inline void add_fan(Document& doc, const std::string& name, const std::vector<PPDivisor>& members,
                    const std::string& suffix = "") {
  FanRecord r{members.front().base(), members.front().rank(), {}, {}};
  for (auto d : members) {
    d.set_name(d.name() + suffix);
    r.members.push_back(d.name());
    doc.ppdivisors.emplace(d.name(), d);
  }
  doc.fans.emplace(name, std::move(r));
}

/// Keeps only the assignment entries between named members, renamed by `suffix`.
inline ActionRecord action_record(const GaloisFanAction& act, const std::string& group, const std::string& fan,
                                  const std::vector<std::string>& keep, const std::string& suffix = "") {
  ActionRecord r{group, fan, act};
  std::set<std::string> k(keep.begin(), keep.end());
  for (auto& e : r.action.elements) {
    std::map<std::string, std::string> a;
    for (const auto& [src, dst] : e.assignment)
      if (k.count(src) && k.count(dst)) a[src + suffix] = dst + suffix;
    e.assignment = a;
  }
  return r;
}

/// 𝔽_r for r = 1, 2, 3: toric fans, the four ℂ*-surface charts, C₂ and C₃.
inline Document hirzebruch() {
  Document doc;
  doc.groups.emplace("C2", c2());
  doc.groups.emplace("C3", cyclic_group(3));
  for (long r : {1L, 2L, 3L}) {
    std::string s = "_r" + std::to_string(r);
    doc.toric_fans.emplace("hirzebruch" + s, ToricFan(2, hirzebruch_toric_cones(r), "hirzebruch" + s));
    add_fan(doc, "hirzebruch" + s, hirzebruch_members(r), s);
    auto aut = fan_automorphism_group(doc.toric_fan("hirzebruch" + s));
    doc.homs.emplace("hirzebruch" + s + "_c2", HomRecord{"C2", "hirzebruch" + s, {aut.elements[0], aut.generators[0]}});
  }
  return doc;
}

/// P³ over P¹ with the C₂ action as written and the corrected one.
inline Document p3() {
  Document doc;
  doc.groups.emplace("C2", c2());
  add_fan(doc, "p3", p3_members());
  auto s = closure_generate(p3_members());
  std::vector<std::string> names{"D0", "D1", "D2", "D3"};
  doc.actions.emplace("p3_stated", action_record(p3_stated_action(s), "C2", "p3", names));
  doc.actions.emplace("p3_corrected", action_record(p3_corrected_action(s), "C2", "p3", names));
  return doc;
}

/// The three real forms of P¹ as toric Galois actions over ℚ(i).
inline Document p1_forms() {
  Document doc;
  doc.groups.emplace("C2", c2());
  auto s = p1_toric_fan();
  add_fan(doc, "p1", {s.members()[*s.find_name("P1_plus")], s.members()[*s.find_name("P1_minus")]});
  std::vector<std::string> names{"P1_plus", "P1_minus"};
  doc.actions.emplace("p1_real_line", action_record(p1_action(1, 1), "C2", "p1", names));
  doc.actions.emplace("p1_swap", action_record(p1_action(-1, 1), "C2", "p1", names));
  doc.actions.emplace("p1_conic", action_record(p1_action(-1, -1), "C2", "p1", names));
  doc.toric_fans.emplace("p1", ToricFan(1, {ray1(1), ray1(-1)}, "p1"));
  doc.homs.emplace("p1_trivial", HomRecord{"C2", "p1", {IntMatrix::identity(1), IntMatrix::identity(1)}});
  doc.homs.emplace("p1_swap", HomRecord{"C2", "p1", {IntMatrix::identity(1), IntMatrix::scalar(1, -1)}});
  return doc;
}

/// Fixtures where a check fails: the non-separated pair, the non-projective
/// toric fan with its C₃ symmetry, and the fragmented fan.
inline Document negative() {
  Document doc;
  doc.groups.emplace("C3", cyclic_group(3));
  add_fan(doc, "nonseparated", nonseparated_pair());
  doc.toric_fans.emplace("nonprojective", ToricFan(3, nonprojective_toric_cones(), "nonprojective"));
  auto p = cyclic_permutation3();
  doc.homs.emplace("nonprojective_c3", HomRecord{"C3", "nonprojective", {IntMatrix::identity(3), p, p * p}});
  auto frag = fragmented_fan();
  add_fan(doc, "fragmented", frag.members());
  doc.actions.emplace("fragmented_c3",
                      action_record(fragmented_action(frag), "C3", "fragmented", {"frag0", "frag1", "frag2"}));
  return doc;
}

inline std::map<std::string, Document> all() {
  return {{"hirzebruch", hirzebruch()}, {"p3", p3()}, {"p1_forms", p1_forms()}, {"negative", negative()}};
}

}  // namespace divfan::fixtures::documents
