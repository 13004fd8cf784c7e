#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "hul1/serialize.hpp"
#include "oracles.hpp"
#include "schema_check.hpp"

using namespace hul1;

namespace {

std::string schema(const char* name) {
  return std::string(HUL1_SCHEMA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("polynomial JSON") {
  Poly p = poly_from_json(R"({"coeffs": [[2,0],[1,0]]})");
  CHECK(p.degree() == 1);
  CHECK(p.coeffs()[0] == Complex(2.0, 0.0));

  // round trip through text preserves every coefficient bit
  oracle::Rng rng(oracle::suite_seed(0x5E1));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> c;
    int deg = rng.uniform_int(1, 6);
    for (int k = 0; k < deg; ++k) c.push_back(rng.amplitude());
    c.push_back(Complex(1.0, 0.0));
    Poly q(c);
    Poly back = poly_from_json(poly_to_json(q));
    REQUIRE(back.degree() == q.degree());
    for (int k = 0; k <= q.degree(); ++k)
      CHECK(back.coeffs()[k] == q.coeffs()[k]);
  }

  CHECK_THROWS_AS(poly_from_json("{"), Error);
  CHECK_THROWS_AS(poly_from_json(R"({"coeffs": []})"), Error);
  // trailing zero leading coefficient rejected
  CHECK_THROWS_AS(poly_from_json(R"({"coeffs": [[1,0],[0,0]]})"), Error);
  try {
    poly_from_json("not json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
}

TEST_CASE("function JSON, named support forms and extensions") {
  ExpPolyFunction f = expfun_from_json(
      R"({"terms":[{"c":[1,0],"m":0,"z":[-1,0],"support":"pos"},
                   {"c":[0.5,0],"m":1,"z":[2,0],"support":"neg"},
                   {"c":[0,1],"m":0,"z":[0,1],"support":{"interval":[-1,1]}}]})");
  REQUIRE(f.terms().size() == 3);
  bool has_neg = false;
  for (const ExpPolyTerm& t : f.terms())
    if (t.support == Support::neg_halfline()) has_neg = true;
  CHECK(has_neg);

  // bit-exact round trip
  oracle::Rng rng(oracle::suite_seed(0x3E2));
  for (int trial = 0; trial < 20; ++trial) {
    ExpPolyFunction g = oracle::random_integrable(rng);
    ExpPolyFunction back = expfun_from_json(expfun_to_json(g));
    REQUIRE(back.terms().size() == g.terms().size());
    for (size_t k = 0; k < g.terms().size(); ++k) {
      CHECK(back.terms()[k].c == g.terms()[k].c);
      CHECK(back.terms()[k].z == g.terms()[k].z);
      CHECK(back.terms()[k].m == g.terms()[k].m);
      CHECK(back.terms()[k].support == g.terms()[k].support);
    }
  }

  // general half-line supports from kernel translation survive the trip
  ExpPolyFunction shifted =
      ExpPolyFunction::single(1.0, 1, -1.0, Support::from(0.5));
  ExpPolyFunction back = expfun_from_json(expfun_to_json(shifted));
  CHECK(back.terms()[0].support == Support::from(0.5));

  CHECK_THROWS_AS(expfun_from_json(R"({"terms":[{"c":[1,0]}]})"), Error);
  CHECK_THROWS_AS(
      expfun_from_json(
          R"({"terms":[{"c":[1,0],"z":[0,0],"support":"sideways"}]})"),
      Error);
}

TEST_CASE("samples CSV with grid sidecar") {
  Grid g(10.0, 64);
  oracle::Rng rng(oracle::suite_seed(0xC5F));
  SampledFunction s = sample(oracle::random_integrable(rng), g);

  std::string csv = samples_to_csv(s);
  CHECK(csv.rfind("t,re,im", 0) == 0);
  Grid g2 = grid_from_json(grid_to_json(g));
  CHECK(g2 == g);
  SampledFunction back = samples_from_csv(csv, g2);
  for (int k = 0; k < g.N; ++k)  // %.17g keeps doubles lossless
    CHECK(back.values[k] == s.values[k]);

  CHECK_THROWS_AS(samples_from_csv("a,b,c\n1,2,3\n", g), Error);
  CHECK_THROWS_AS(samples_from_csv("t,re,im\n0,1,0\n", g), Error);
  CHECK_THROWS_AS(grid_from_json(R"({"T": 10})"), Error);
  CHECK_THROWS_AS(grid_from_json(R"({"T": 10, "N": 12})"), Error);
}

TEST_CASE("green JSON validates against the shipped schema") {
  GreensFunction g = green_function(Poly({2.0, 3.0, 1.0}));
  std::string doc = green_to_json(g);
  CHECK(schema_check::check_against(schema("stability_output.schema.json"),
                                    doc) == "");
  auto j = nlohmann::json::parse(doc);
  CHECK(j["hyperbolic"].get<bool>());
  CHECK(j["M"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(j["roots"].size() == 2);
}

TEST_CASE("stability report JSON validates against the shipped schema") {
  Problem prob(Poly({1.0, 1.0}),
               ExpPolyFunction::single(1.0, 0, -2.0, Support::pos_halfline()));
  StabilityReport rep =
      verify(prob, std::get<ExpPolyFunction>(solve(prob)));
  std::string doc = stability_report_to_json(rep);
  CHECK(schema_check::check_against(schema("stability_report.schema.json"),
                                    doc) == "");
}

TEST_CASE("probe JSON and CSV") {
  ProbeReport paper = probe_paper_example(0.1);
  CHECK(schema_check::check_against(schema("probe_report.schema.json"),
                                    probe_report_to_json(paper)) == "");
  // paper family omits T (it has none); slow family carries it
  auto jp = nlohmann::json::parse(probe_report_to_json(paper));
  CHECK(!jp.contains("T"));
  CHECK(jp.contains("paper_bound"));

  ProbeReport slow = probe_slow_modulation(0.1, 8.0);
  auto js = nlohmann::json::parse(probe_report_to_json(slow));
  CHECK(js["T"].get<double>() == 8.0);
  CHECK(schema_check::check_against(schema("probe_report.schema.json"),
                                    probe_report_to_json(slow)) == "");

  std::string csv = probe_reports_to_csv({slow, probe_slow_modulation(0.1, 16.0)});
  CHECK(csv.rfind("parameter,residual,distance,ratio", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
