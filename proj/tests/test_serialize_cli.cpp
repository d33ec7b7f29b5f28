#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "carnot/fixtures.hpp"
#include "carnot/serialize.hpp"

using namespace carnot;

#ifndef CARNOT_FIXTURE_FILE
#define CARNOT_FIXTURE_FILE "fixtures/cartan_dc.json"
#endif

TEST_CASE("algebra JSON round-trip") {
  auto alg = StratifiedLieAlgebra::preset("cartan");
  OrderedJson j = algebraToJson(alg);
  auto back = algebraFromJson(j);
  CHECK(back.dim() == alg.dim());
  CHECK(back.layers() == alg.layers());
  CHECK(algebraToJson(back) == j);
  // deterministic: dumping twice is byte-identical
  CHECK(j.dump(2) == algebraToJson(alg).dump(2));
}

TEST_CASE("rationals serialize as num/den strings") {
  auto alg = StratifiedLieAlgebra("t", {1, 1, 2},
                                  {{0, 1, 2, makeRational(3, 2)}});
  OrderedJson j = algebraToJson(alg);
  CHECK(j.at("brackets").at(0).at("c").get<std::string>() == "3/2");
  CHECK(rationalFromString("-7/3") == makeRational(-7, 3));
  CHECK_THROWS_AS(rationalFromString("seven"), ValidationError);
}

TEST_CASE("operator serialization and LaTeX") {
  auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("cartan"));
  EnvelopingOperator p =
      EnvelopingOperator::fromWord(ctx, {0, 1, 1}, Scalar(Rational(-1), 2)) +
      EnvelopingOperator::fromWord(ctx, {4}, Scalar(Rational(-1), 2));
  OrderedJson j = operatorToJson(p);
  REQUIRE(j.size() == 2);
  CHECK(j.at(0).at("sqrt").get<long>() == 2);
  std::string latex = operatorToLatex(p);
  CHECK(latex.find("\\sqrt{2}") != std::string::npos);
  CHECK(latex.find("X_{1}X_{2}^{2}") != std::string::npos);

  RuminComplex cx(ctx);
  std::string m0 = operatorMatrixToLatex(cx.dcOrthonormal(0));
  CHECK(m0.find("X_{1}") != std::string::npos);
  CHECK(m0.find("X_{2}") != std::string::npos);
  CHECK(m0.find("pmatrix") != std::string::npos);
}

TEST_CASE("fixture file on disk matches the embedded transcription") {
  auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("cartan"));
  DcFixture fromFile = loadDcFixture(ctx, CARNOT_FIXTURE_FILE);
  DcFixture embedded = loadDcFixtureFromText(ctx, embeddedCartanFixture());
  REQUIRE(fromFile.dc.size() == embedded.dc.size());
  for (size_t h = 0; h < fromFile.dc.size(); ++h) CHECK(fromFile.dc[h] == embedded.dc[h]);
}

TEST_CASE("atomic write") {
  std::string path = "/tmp/carnot_test_atomic.json";
  atomicWriteFile(path, "{\"a\": 1}");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "{\"a\": 1}");
  std::remove(path.c_str());
}

TEST_CASE("algebra hash is stable and convention-sensitive") {
  auto alg = StratifiedLieAlgebra::preset("cartan");
  std::string h1 = algebraHash(alg, CoordConvention::OrderedExpDescending);
  std::string h2 = algebraHash(alg, CoordConvention::OrderedExpDescending);
  std::string h3 = algebraHash(alg, CoordConvention::BchFirstKind);
  CHECK(h1 == h2);
  CHECK(h1 != h3);
  CHECK(algebraHash(StratifiedLieAlgebra::preset("engel"), CoordConvention::BchFirstKind) != h3);
}

TEST_CASE("exponent table JSON") {
  auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("cartan"));
  RuminComplex cx(ctx);
  auto t = ExponentTable::fromComplex(cx);
  OrderedJson j = exponentTableToJson(t);
  CHECK(j.at("Q").get<long>() == 10);
  CHECK(j.at("s") == OrderedJson::array({1, 3, 2, 3, 1}));
  CHECK(j.at("l1PoincareExponents") ==
        OrderedJson::array({"10/9", "10/7", "5/4", "10/7", "10/9"}));
}

TEST_CASE("complex JSON dump is deterministic") {
  auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("heisenberg-1"));
  RuminComplex cx(ctx);
  OrderedJson a = operatorMatrixToJson(cx.dcOrthonormal(1));
  OrderedJson b = operatorMatrixToJson(cx.dcOrthonormal(1));
  CHECK(a.dump() == b.dump());
}
