#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "carnot/lie_algebra.hpp"

using namespace carnot;

namespace {

// Independent Hall-word count: Duval's algorithm for Lyndon words, whose
// count per length equals the Hall basis dimension (necklace numbers).
long lyndonCount(int m, int maxLen, int length) {
  long count = 0;
  std::vector<int> w{0};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == length) ++count;
    int k = static_cast<int>(w.size());
    while (static_cast<int>(w.size()) < maxLen) w.push_back(w[w.size() - k]);
    while (!w.empty() && w.back() == m - 1) w.pop_back();
    if (!w.empty()) w.back() += 1;
  }
  return count;
}

}  // namespace

TEST_CASE("free nilpotent (2,3) matches the printed bracket table") {
  auto alg = StratifiedLieAlgebra::freeNilpotent(2, 3);
  CHECK(alg.dim() == 5);
  CHECK(alg.homogeneousDimension() == 10);
  CHECK(alg.layerDim(1) == 2);
  CHECK(alg.layerDim(2) == 1);
  CHECK(alg.layerDim(3) == 2);

  // the only nontrivial commutation rules
  std::map<std::pair<int, int>, std::pair<int, Rational>> expected{
      {{0, 1}, {2, Rational(1)}}, {{0, 2}, {3, Rational(1)}}, {{1, 2}, {4, Rational(1)}}};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      auto br = alg.bracket(i, j);
      auto it = expected.find({i, j});
      if (it == expected.end()) {
        CHECK(br.empty());
      } else {
        REQUIRE(br.size() == 1);
        CHECK(br[0].first == it->second.first);
        CHECK(br[0].second == it->second.second);
      }
    }
}

TEST_CASE("free nilpotent edge cases") {
  auto line = StratifiedLieAlgebra::freeNilpotent(1, 1);
  CHECK(line.dim() == 1);
  CHECK(line.rawBrackets().empty());

  // (1, κ) collapses to the line: no commutators are possible
  auto line3 = StratifiedLieAlgebra::freeNilpotent(1, 3);
  CHECK(line3.dim() == 1);

  auto heis = StratifiedLieAlgebra::freeNilpotent(2, 2);
  CHECK(heis.dim() == 3);
  CHECK(heis.layerDim(1) == 2);
  CHECK(heis.layerDim(2) == 1);
  auto br = heis.bracket(0, 1);
  REQUIRE(br.size() == 1);
  CHECK(br[0].first == 2);
  CHECK(br[0].second == Rational(1));
}

TEST_CASE("free nilpotent dimensions agree with the Lyndon-word oracle") {
  for (int m = 2; m <= 3; ++m)
    for (int step = 1; step <= 4; ++step) {
      if (m == 3 && step == 4) continue;  // cap-sized; not needed
      auto alg = StratifiedLieAlgebra::freeNilpotent(m, step);
      for (int ell = 1; ell <= step; ++ell)
        CHECK(alg.layerDim(ell) == lyndonCount(m, step, ell));
    }
}

TEST_CASE("free nilpotent respects the basis cap") {
  CHECK_THROWS_AS(StratifiedLieAlgebra::freeNilpotent(3, 5, 64), ValidationError);
  CHECK_NOTHROW(StratifiedLieAlgebra::freeNilpotent(2, 5, 64));
}

TEST_CASE("bracket bilinearity and antisymmetry") {
  auto alg = StratifiedLieAlgebra::preset("cartan");
  StratifiedLieAlgebra::SparseVec a{{0, Rational(2)}, {1, Rational(-1)}};
  StratifiedLieAlgebra::SparseVec b{{1, Rational(1)}, {2, Rational(3)}};
  auto ab = alg.bracket(a, b);
  auto ba = alg.bracket(b, a);
  std::map<int, Rational> sum;
  for (auto& [k, c] : ab) sum[k] += c;
  for (auto& [k, c] : ba) sum[k] += c;
  for (auto& [k, c] : sum) CHECK(c == 0);
  // [2X1 - X2, X2 + 3X3] = 2X3 + 6X4 - (-3X5)·... = 2X3 + 6X4 - 3·[X2,X3]·(-1)
  std::map<int, Rational> got(ab.begin(), ab.end());
  CHECK(got[2] == Rational(2));
  CHECK(got[3] == Rational(6));
  CHECK(got[4] == Rational(-3));
}

TEST_CASE("validation names the violated invariant") {
  // jacobi: layers (1,1,1,2,3) with [X1,X2]=X4, [X2,X3]=X4, [X1,X4]=X5
  CHECK_THROWS_WITH_AS(
      StratifiedLieAlgebra("bad", {1, 1, 1, 2, 3},
                           {{0, 1, 3, Rational(1)}, {1, 2, 3, Rational(1)}, {0, 3, 4, Rational(1)}})
          .validate(),
      doctest::Contains("jacobi"), ValidationError);

  // grading: a bracket landing in the wrong layer
  try {
    StratifiedLieAlgebra("bad", {1, 1, 2, 2}, {{0, 1, 2, Rational(1)}, {0, 2, 3, Rational(1)}})
        .validate();
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.invariant == "grading");
  }

  // stratification: a second-layer element not generated by layer 1
  try {
    StratifiedLieAlgebra("bad", {1, 1, 2, 2}, {{0, 1, 2, Rational(1)}}).validate();
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.invariant == "stratification");
  }

  // unsorted layers
  try {
    StratifiedLieAlgebra("bad", {1, 2, 1}, {{0, 2, 1, Rational(1)}}).validate();
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.invariant == "layer-sorted");
  }
}

TEST_CASE("presets") {
  CHECK(StratifiedLieAlgebra::preset("cartan").dim() == 5);
  CHECK(StratifiedLieAlgebra::preset("heisenberg-1").dim() == 3);
  CHECK(StratifiedLieAlgebra::preset("engel").dim() == 4);
  CHECK(StratifiedLieAlgebra::preset("engel").homogeneousDimension() == 7);
  CHECK(StratifiedLieAlgebra::preset("abelian-4").dim() == 4);
  CHECK(StratifiedLieAlgebra::preset("abelian-4").step() == 1);
  CHECK_THROWS_AS(StratifiedLieAlgebra::preset("nope"), ValidationError);
  CHECK_THROWS_AS(StratifiedLieAlgebra::preset("abelian-0"), ValidationError);
}

TEST_CASE("horizontal bracket expressions witness the stratification") {
  auto alg = StratifiedLieAlgebra::preset("cartan");
  for (int k = 0; k < alg.dim(); ++k) {
    if (alg.layer(k) == 1) continue;
    const auto& expr = alg.horizontalBracketExpr(k);
    REQUIRE(!expr.empty());
    std::map<int, Rational> acc;
    for (const auto& t : expr) {
      CHECK(alg.layer(t.hi) == 1);
      CHECK(alg.layer(t.inner) == alg.layer(k) - 1);
      for (const auto& [w, c] : alg.bracket(t.hi, t.inner)) acc[w] += t.coeff * c;
    }
    for (auto& [w, c] : acc) CHECK(c == (w == k ? Rational(1) : Rational(0)));
  }
}
