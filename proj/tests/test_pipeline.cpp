#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "vancyc/pipeline.hpp"

using namespace vancyc;

namespace {

Json isolated(const std::string& f, std::vector<std::string> vars = {"x", "y"}) {
  Json j;
  j["mode"] = "isolated";
  j["variables"] = vars;
  j["f"] = f;
  return j;
}

}  // namespace

TEST_CASE("problem parsing rejects malformed documents") {
  CHECK_THROWS_WITH_AS(parse_problem(Json::array()), doctest::Contains("must be an object"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_problem(Json::object()), doctest::Contains("missing field"), Error);

  Json j = isolated("x^2", {"x", "x"});
  CHECK_THROWS_WITH_AS(parse_problem(j), doctest::Contains("duplicate variable"), Error);

  j = isolated("x^2", {"x"});
  j["mode"] = "numeric";
  CHECK_THROWS_WITH_AS(parse_problem(j), doctest::Contains("mode must be"), Error);

  j = isolated("x^2", {"x"});
  j["precision"] = 0;
  CHECK_THROWS_WITH_AS(parse_problem(j), doctest::Contains("positive integer"), Error);

  j = isolated("x^2", {"x"});
  j["extension"] = "two";
  CHECK_THROWS_WITH_AS(parse_problem(j), doctest::Contains("'off' or 'one'"), Error);

  Json nc;
  nc["mode"] = "nc-monomial";
  nc["variables"] = {"x"};
  nc["J"] = {"z"};
  nc["Jprime"] = {"x"};
  nc["exponents"] = {{"x", 2}};
  CHECK_THROWS_WITH_AS(parse_problem(nc), doctest::Contains("unknown variable"), Error);
}

TEST_CASE("problem echo round trip") {
  Json j = isolated("x^2 + y^3");
  j["precision"] = 8;
  j["extension"] = "off";
  CHECK(problem_to_json(parse_problem(j)) == j);

  Json nc;
  nc["mode"] = "nc-monomial";
  nc["variables"] = {"x", "y"};
  nc["J"] = {"x"};
  nc["Jprime"] = {"x", "y"};
  nc["exponents"] = {{"x", 2}};
  nc["residues"] = {{"y", "1/2"}};
  nc["window"] = {"0", "2"};
  CHECK(problem_to_json(parse_problem(nc)) == nc);
}

TEST_CASE("report round trip is the identity on the serialization") {
  for (const char* f : {"x^2 + y^3", "x^3 + x*y^2", "x + x^2*y"}) {
    Report rep = run(isolated(f));
    Json j = report_to_json(rep);
    CHECK(report_to_json(report_from_json(j)) == j);
  }
  Json nc;
  nc["mode"] = "nc-monomial";
  nc["variables"] = {"x", "y"};
  nc["J"] = {"x", "y"};
  nc["Jprime"] = {"x", "y"};
  nc["exponents"] = {{"x", 1}, {"y", 1}};
  nc["window"] = {"0", "1"};
  Json j = report_to_json(run(nc));
  CHECK(report_to_json(report_from_json(j)) == j);
}

TEST_CASE("reports are byte-identical across runs") {
  Json j = isolated("x^3 + y^2 + x*y^2");
  std::string first = report_to_json(run(j)).dump();
  for (int i = 0; i < 3; ++i) CHECK(report_to_json(run(j)).dump() == first);
}

TEST_CASE("factor dimensions sum to the Milnor number") {
  for (const char* f : {"x^2 + y^3", "x^4 + y^2", "x^3 + x*y^2"}) {
    Report rep = run(isolated(f));
    long total = 0;
    for (const auto& fac : rep.factors) total += fac.dimension;
    CHECK(total == rep.mu);
    CHECK(rep.stable);
  }
  Report tw = run(isolated("x^3 - 3*x", {"x"}));
  CHECK(tw.factors.size() == 2);
  CHECK(tw.factors[0].dimension + tw.factors[1].dimension == tw.mu);
}

TEST_CASE("unit Jacobian ideal yields the empty report") {
  Report rep = run(isolated("x + x^2*y"));
  CHECK(rep.mu == 0);
  CHECK(rep.factors.empty());
  CHECK(rep.stable);
}

TEST_CASE("forced precision 1 fails with a precision error") {
  Json j = isolated("x^2 + y^3");
  j["precision"] = 1;
  try {
    run(j);
    FAIL("expected a precision error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionExhausted);
    CHECK(e.exit_code() == 3);
  }
}

TEST_CASE("extension policy gates algebraic critical values") {
  Json j = isolated("x^3 - x", {"x"});
  j["extension"] = "off";
  try {
    run(j);
    FAIL("expected an irreducible-factor error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IrreducibleFactor);
    CHECK(e.exit_code() == 2);
  }

  j["extension"] = "one";
  Report rep = run(j);
  REQUIRE(rep.factors.size() == 1);
  CHECK_FALSE(rep.factors[0].rational);
  CHECK(rep.factors[0].orbit == 2);
  CHECK(rep.factors[0].dimension == 2);
  REQUIRE(rep.factors[0].monodromy.size() == 1);
  CHECK(rep.factors[0].monodromy[0].exponent == Rational(1) / Rational(2));
}

TEST_CASE("non-isolated singularities are diagnosed") {
  try {
    run(isolated("x^2"));  // critical locus is the y-axis
    FAIL("expected a not-isolated error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIsolated);
    CHECK(e.exit_code() == 2);
  }
}

TEST_CASE("negative control: a perturbed report no longer matches") {
  Json j = report_to_json(run(isolated("x^2 + y^3")));
  Json perturbed = j;
  perturbed["factors"][0]["monodromy"][0]["exponent"] = "1/2";
  perturbed["factors"][0]["monodromy"][0]["rotation"] = "1/2";
  CHECK(j != perturbed);
  Report back = report_from_json(perturbed);
  CHECK(back.factors[0].monodromy[0].exponent == Rational(1) / Rational(2));
  CHECK(report_to_json(back) == perturbed);
}

TEST_CASE("nc-monomial run resolves names and reports the spectrum") {
  Json nc;
  nc["mode"] = "nc-monomial";
  nc["variables"] = {"u", "v"};
  nc["J"] = {"u"};
  nc["Jprime"] = {"u", "v"};
  nc["exponents"] = {{"u", 3}};
  nc["residues"] = {{"v", 0}};
  nc["window"] = {"0", "1"};
  Report rep = run(nc);
  CHECK(rep.i0 == "u");
  REQUIRE(rep.spectrum.by_degree.size() == 2);
  std::vector<std::pair<Rational, int>> want = {
      {Rational(0), 1}, {Rational(1) / Rational(3), 1}, {Rational(2) / Rational(3), 1}};
  CHECK(rep.spectrum.by_degree[0] == want);
  CHECK(rep.spectrum.by_degree[1] == want);
}
