#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "divfan/cli.hpp"
#include "divfan/fixture_documents.hpp"
#include "divfan/json_io.hpp"

using namespace divfan;
using io::json;

namespace {

std::string data_path(const std::string& name) { return std::string(DIVFAN_DATA_DIR) + "/" + name + ".json"; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  json report;
  std::string text;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "divfan");
  args.push_back("--no-timing");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, json::parse(out.str()), out.str()};
}

Error load_error(const std::string& text) {
  try {
    io::load_document(io::parse_json_text(text));
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorKind::MalformedInput, "no error");
}

}  // namespace

TEST(Json, RationalAndPointEncoding) {
  EXPECT_EQ(io::to_json(make_rational(-1, 2)), "-1/2");
  EXPECT_EQ(io::to_json(make_rational(4, 2)), "2");
  EXPECT_EQ(io::rational_from(json("-6/4")), make_rational(-3, 2));
  EXPECT_EQ(io::rational_from(json(7)), Rational(7));
  EXPECT_THROW(io::rational_from(json("1 /2")), Error);
  EXPECT_THROW(io::rational_from(json("1/0")), Error);
  auto qi = gaussian_rationals();
  auto i = FieldElement::generator(qi);
  EXPECT_EQ(io::to_json(BasePoint::finite(i)), json::parse(R"({"a":["0","1"]})"));
  EXPECT_EQ(io::point_from(json::parse(R"({"a":["0","1"]})"), qi), BasePoint::finite(i));
  EXPECT_EQ(io::point_from(json("inf"), qi), BasePoint::infinity());
  EXPECT_EQ(io::element_from(json("3/2"), qi), FieldElement::from_rational(qi, make_rational(3, 2)));
}

TEST(Json, DataFilesAreCanonicalAndCurrent) {
  for (const auto& [name, doc] : fixtures::documents::all()) {
    auto text = slurp(data_path(name));
    ASSERT_FALSE(text.empty()) << name;
    EXPECT_EQ(io::canonical_text(io::dump_document(doc)), text) << name << " is out of date; rerun export_fixtures";
    auto loaded = io::load_document(io::parse_json_text(text));
    EXPECT_EQ(io::canonical_text(io::dump_document(loaded)), text) << name;
  }
}

TEST(Json, RoundTripOfNonCanonicalInput) {
  // Shorthands: rational coefficients, omitted rays, base and field by name.
  const char* text = R"({
    "version": 1,
    "fields": {"Qs2": {"modulus": ["-2", "0", "1"], "generator": "s"}},
    "bases": {"line": {"kind": "p1", "field": "Qs2"}},
    "ppdivisors": {
      "D": {"base": "line", "rank": 1, "tail": {"rays": [[1]]},
            "coeffs": [{"point": {"a": [0, 1]}, "poly": {"vertices": [["1/2"]]}}, {"point": "inf", "empty": true}]}
    },
    "fans": {"S": {"base": "line", "rank": 1, "members": ["D"]}}
  })";
  auto doc = io::load_document(io::parse_json_text(text));
  const auto& d = doc.ppdivisor("D");
  auto s = FieldElement::generator(doc.fields.at("Qs2"));
  ASSERT_TRUE(d.coefficient(BasePoint::finite(s)).has_value());
  EXPECT_EQ(d.coefficient(BasePoint::finite(s))->tail(), fixtures::ray1(1));
  EXPECT_FALSE(d.in_locus(BasePoint::infinity()));
  auto once = io::canonical_text(io::dump_document(doc));
  auto twice = io::canonical_text(io::dump_document(io::load_document(io::parse_json_text(once))));
  EXPECT_EQ(once, twice);
  EXPECT_NE(once.find("\"Qs2\""), std::string::npos);
}

TEST(Json, LoadedFixturesMatchTheLibrary) {
  auto doc = io::load_document(io::parse_json_text(slurp(data_path("hirzebruch"))));
  auto ms = fixtures::hirzebruch_members(2);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto& d = doc.ppdivisor(ms[k].name() + "_r2");
    EXPECT_EQ(d.coefficients(), ms[k].coefficients());
    EXPECT_EQ(d.empties(), ms[k].empties());
    EXPECT_EQ(d.tail(), ms[k].tail());
  }
  auto p3 = io::load_document(io::parse_json_text(slurp(data_path("p3"))));
  const auto& act = p3.action("p3_corrected").action;
  ASSERT_EQ(act.elements.size(), 2u);
  EXPECT_EQ(act.elements[1].phi.F, IntMatrix::scalar(2, -1));
  EXPECT_EQ(act.elements[1].assignment.at("D0"), "D1");
  EXPECT_EQ(act.galois[1], complex_conjugation());
}

TEST(Json, MalformedDocuments) {
  EXPECT_EQ(load_error(R"({"version": 2})").kind(), ErrorKind::MalformedInput);
  EXPECT_EQ(load_error(R"({"version": 1, "widgets": {}})").kind(), ErrorKind::MalformedInput);
  EXPECT_EQ(load_error(R"({"version": 1, "fans": {"S": {"base": {"kind": "p1"}, "rank": 1, "members": ["nope"]}}})").kind(),
            ErrorKind::MalformedInput);
  EXPECT_EQ(load_error(R"({"version": 1, "ppdivisors": {"D": {"base": {"kind": "p1"}, "rank": 1,
      "tail": {"rays": []}, "coeffs": [{"point": "inf", "poly": {"vertices": [["1/0"]]}}]}}})")
                .kind(),
            ErrorKind::DivisionByZero);
  EXPECT_EQ(load_error(R"({"version": 1, "groups": {"G": {"elements": ["e", "g"], "table": [[0, 1], [1]]}}})").kind(),
            ErrorKind::MalformedInput);
  EXPECT_EQ(load_error(R"({"version": 1, "fields": {"K": {"modulus": ["-1", "0", "1"]}}})").kind(),
            ErrorKind::MalformedInput);
  EXPECT_EQ(load_error("{not json").kind(), ErrorKind::MalformedInput);
  // Two coefficients at one point.
  EXPECT_EQ(load_error(R"({"version": 1, "ppdivisors": {"D": {"base": {"kind": "p1"}, "rank": 1, "tail": {"rays": []},
      "coeffs": [{"point": "inf", "empty": true}, {"point": "inf", "empty": true}]}}})")
                .kind(),
            ErrorKind::MalformedInput);
}

TEST(Cli, WorkedExamples) {
  auto aut = invoke({"aut", "--toric", "hirzebruch_r1"});
  EXPECT_EQ(aut.code, 0);
  EXPECT_EQ(aut.report["group_order"], 2);
  EXPECT_EQ(aut.report["generators"], json::parse("[[[-1,0],[1,1]]]"));
  auto ev = invoke({"eval", "--ppdivisor", "D_omega2_r1", "--m", "1"});
  EXPECT_EQ(ev.code, 0);
  EXPECT_EQ(ev.report["divisor"], json::parse(R"([{"point":"inf","coeff":"-1/2"}])"));
  auto missing = invoke({"validate", "missing.json"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_TRUE(missing.report["verdict"].is_null());
  for (const char* key : {"tool_version", "verdict", "witness", "timing_ms"}) {
    EXPECT_TRUE(aut.report.contains(key)) << key;
    EXPECT_TRUE(missing.report.contains(key)) << key;
  }
}

TEST(Cli, ExitCodesPartitionOutcomes) {
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  std::vector<Case> cases = {
      {{"separated", data_path("negative"), "--fan", "nonseparated"}, 1},
      {{"separated", data_path("hirzebruch"), "--fan", "hirzebruch_r1"}, 0},
      {{"qp", data_path("negative"), "--toric", "nonprojective"}, 1},
      {{"qp", data_path("hirzebruch"), "--fan", "hirzebruch_r1"}, 0},
      {{"action-verify", data_path("p3"), "--fan", "p3", "--action", "p3_stated"}, 1},
      {{"descent", data_path("p3"), "--fan", "p3", "--action", "p3_corrected"}, 0},
      {{"descent", data_path("p1_forms"), "--toric", "p1", "--hom", "p1_swap"}, 0},
      {{"descent", data_path("negative"), "--hom", "nonprojective_c3"}, 1},
      {{"face", data_path("hirzebruch"), "--sub", "D_omega2_r1", "--super", "D_omega1_r1"}, 1},
      {{"eval", data_path("hirzebruch"), "--ppdivisor", "D_omega2_r1", "--m", "1,2"}, 2},
      {{"aut", data_path("hirzebruch"), "--toric", "nope"}, 2},
      {{"localize", data_path("hirzebruch"), "--ppdivisor", "D_omega1_r1", "--m", "1", "--f",
        R"({"factors":[{"root":"0","exp":1}]})"},
       2},
      {{"frobnicate"}, 2},
  };
  for (const auto& c : cases) {
    auto r = invoke(c.args);
    EXPECT_EQ(r.code, c.code) << c.args[0] << " " << r.text;
    if (r.code == 2) {
      EXPECT_TRUE(r.report["verdict"].is_null());
      EXPECT_TRUE(r.report.contains("error"));
    } else {
      EXPECT_EQ(r.report["verdict"], r.code == 0);
      if (r.code == 1) EXPECT_TRUE(r.report["witness"].is_string()) << r.text;
    }
  }
}

TEST(Cli, ValidateChecksSuppliedCertificates) {
  auto doc = io::dump_document(fixtures::documents::hirzebruch());
  // D_omega1 ∩ D_omega2 is cut out of D_omega1 by m = 1 and f = 1.
  auto good = io::parse_json_text(R"({"sub":"D_omega1_r1","super":"D_omega1_r1",
      "witnesses":[{"m":["0"],"f":{"c":["1"],"factors":[]}}]})");
  auto bad = io::parse_json_text(R"({"sub":"D_omega4_r1","super":"D_omega1_r1",
      "witnesses":[{"m":["1"],"f":{"c":["1"],"factors":[]}}]})");
  std::string path = ::testing::TempDir() + "/validate_doc.json";
  for (bool tampered : {false, true}) {
    auto d = doc;
    d["fans"]["hirzebruch_r1"]["certificates"] = json::array({tampered ? bad : good});
    std::ofstream(path) << d.dump();
    auto r = invoke({"validate", path, "--fan", "hirzebruch_r1"});
    EXPECT_EQ(r.code, tampered ? 1 : 0) << r.text;
    EXPECT_EQ(r.report["fans"][0]["certificates"][0]["valid"], !tampered);
  }
}

TEST(Cli, ReportsAreDeterministicAndIndependentOfJobs) {
  auto a = invoke({"descent", data_path("negative"), "--hom", "nonprojective_c3", "--jobs", "1"});
  auto b = invoke({"descent", data_path("negative"), "--hom", "nonprojective_c3", "--jobs", "4"});
  auto c = invoke({"descent", data_path("negative"), "--hom", "nonprojective_c3", "--jobs", "4"});
  EXPECT_EQ(a.text, b.text);
  EXPECT_EQ(b.text, c.text);
  auto d1 = invoke({"descent", data_path("p3"), "--fan", "p3", "--action", "p3_corrected", "--jobs", "3"});
  auto d2 = invoke({"descent", data_path("p3"), "--fan", "p3", "--action", "p3_corrected"});
  EXPECT_EQ(d1.text, d2.text);
}

TEST(Cli, BoundFlagAndEnvironment) {
  // 𝔽₃ needs a face-search bound of 5.
  auto low = invoke({"validate", data_path("hirzebruch"), "--fan", "hirzebruch_r3"});
  EXPECT_EQ(low.code, 1) << low.text;
  auto high = invoke({"validate", data_path("hirzebruch"), "--fan", "hirzebruch_r3", "--bound", "5"});
  EXPECT_EQ(high.code, 0) << high.text;
  ::setenv("DIVFAN_BOUND", "5", 1);
  auto env = invoke({"validate", data_path("hirzebruch"), "--fan", "hirzebruch_r3"});
  ::unsetenv("DIVFAN_BOUND");
  EXPECT_EQ(env.code, 0) << env.text;
}
