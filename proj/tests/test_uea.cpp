#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carnot/calculus.hpp"
#include "carnot/group_model.hpp"
#include "carnot/uea.hpp"

using namespace carnot;

namespace {

std::shared_ptr<const UeaContext> cartanCtx() {
  static auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("cartan"));
  return ctx;
}

EnvelopingOperator op(std::initializer_list<int> word, long num = 1, long den = 1) {
  return EnvelopingOperator::fromWord(cartanCtx(), std::vector<int>(word),
                                      Scalar(makeRational(num, den)));
}

// Rewriting oracle independent of the engine: repeatedly replace a randomly
// chosen out-of-order adjacent pair X_b X_a -> X_a X_b + [X_b, X_a].
EnvelopingOperator naiveNormalForm(const std::vector<int>& word, std::mt19937_64& rng) {
  auto ctx = cartanCtx();
  const auto& alg = ctx->algebra();
  std::vector<std::pair<Rational, std::vector<int>>> queue{{Rational(1), word}};
  EnvelopingOperator out(ctx);
  while (!queue.empty()) {
    auto [c, w] = queue.back();
    queue.pop_back();
    std::vector<int> swaps;
    for (size_t t = 0; t + 1 < w.size(); ++t)
      if (w[t] > w[t + 1]) swaps.push_back(static_cast<int>(t));
    if (swaps.empty()) {
      PbwMono m(alg.dim(), 0);
      for (int letter : w) m[letter] += 1;
      out.addTerm(m, Scalar(c));
      continue;
    }
    int t = swaps[std::uniform_int_distribution<size_t>(0, swaps.size() - 1)(rng)];
    std::vector<int> swapped = w;
    std::swap(swapped[t], swapped[t + 1]);
    queue.push_back({c, swapped});
    for (const auto& [k, ck] : alg.bracket(w[t], w[t + 1])) {
      std::vector<int> shorter;
      shorter.insert(shorter.end(), w.begin(), w.begin() + t);
      shorter.push_back(k);
      shorter.insert(shorter.end(), w.begin() + t + 2, w.end());
      queue.push_back({c * ck, shorter});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("pbw normal form of the pinned words") {
  CHECK(op({1, 0}) == op({0, 1}) - op({2}));        // X2X1 = X1X2 - X3
  CHECK(op({0, 0}) == op({0, 0}));                  // X1X1 already ordered
  CHECK(op({2, 0}) == op({0, 2}) - op({3}));        // X3X1 = X1X3 - X4
  CHECK(op({2, 1}) == op({1, 2}) - op({4}));        // X3X2 = X2X3 - X5
  CHECK(commutator(op({0}), op({1})) == op({2}));   // [X1, X2] = X3
  CHECK(commutator(op({0}), op({2})) == op({3}));
  CHECK(commutator(op({1}), op({2})) == op({4}));
}

TEST_CASE("pbw confluence: random words normalize independently of strategy") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> len(0, 6), letter(0, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> word(len(rng));
    for (auto& l : word) l = letter(rng);
    EnvelopingOperator viaEngine = EnvelopingOperator::fromWord(cartanCtx(), word);
    EnvelopingOperator viaNaive1 = naiveNormalForm(word, rng);
    EnvelopingOperator viaNaive2 = naiveNormalForm(word, rng);
    CHECK(viaEngine == viaNaive1);
    CHECK(viaNaive1 == viaNaive2);
  }
}

TEST_CASE("composition basics") {
  auto one = EnvelopingOperator::one(cartanCtx());
  auto p = op({0, 1}) - op({2}, 3);
  CHECK(p * one == p);
  CHECK(one * p == p);
  // degree additivity with equality for homogeneous factors
  auto a = op({0, 2});   // degree 3
  auto b = op({1, 1});   // degree 2
  CHECK((a * b).homogeneousDegree() == 5);
  CHECK(a.maxOrder() == 2);
  CHECK((a * b).maxOrder() <= 4);
}

TEST_CASE("degree cap guards runaway compositions") {
  auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("cartan"), 4);
  auto x4 = EnvelopingOperator::generator(ctx, 3);  // degree 3
  CHECK_THROWS_AS(x4 * x4, DegreeCapError);
  ctx->setDegreeCap(6);
  CHECK_NOTHROW(x4 * x4);
}

TEST_CASE("formal adjoint") {
  // (X1)* = -X1
  CHECK(op({0}).adjoint() == -op({0}));
  // (X1X2)* = X2X1 = X1X2 - X3
  CHECK(op({0, 1}).adjoint() == op({0, 1}) - op({2}));
  // involution and anti-homomorphism on random operators
  cartanCtx()->setDegreeCap(40);  // products of two random degree-<=12 operators
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(0, 4), letter(0, 4), coef(-3, 3);
  auto randomOp = [&]() {
    EnvelopingOperator r(cartanCtx());
    for (int t = 0; t < 3; ++t) {
      std::vector<int> word(len(rng));
      for (auto& l : word) l = letter(rng);
      long c = coef(rng);
      if (c == 0) c = 1;
      r += EnvelopingOperator::fromWord(cartanCtx(), word, Scalar(Rational(c)));
    }
    return r;
  };
  for (int trial = 0; trial < 30; ++trial) {
    auto p = randomOp(), q = randomOp();
    CHECK(p.adjoint().adjoint() == p);
    CHECK((p * q).adjoint() == q.adjoint() * p.adjoint());
  }
}

TEST_CASE("horizontalization") {
  // X3 -> X1X2 - X2X1
  auto h3 = horizontalWords(EnvelopingOperator::generator(cartanCtx(), 2));
  CHECK(normalize(cartanCtx(), h3) == op({2}));
  for (const auto& [c, w] : h3.terms)
    for (int letter : w) CHECK(cartanCtx()->algebra().layer(letter) == 1);

  // X4 and X5 expand to horizontal words of the same homogeneous degree
  for (int gen : {3, 4}) {
    auto g = EnvelopingOperator::generator(cartanCtx(), gen);
    auto words = horizontalWords(g);
    CHECK(normalize(cartanCtx(), words) == g);
    for (const auto& [c, w] : words.terms) {
      CHECK(static_cast<int>(w.size()) == 3);  // d(X4) = d(X5) = 3
      for (int letter : w) CHECK(letter < 2);
    }
  }

  // mixed operator round-trips
  auto p = op({2, 4}, 2) - op({0, 1, 3}, 1, 2);
  CHECK(normalize(cartanCtx(), horizontalWords(p)) == p);
}

TEST_CASE("numeric faithfulness: PBW normal form agrees with the analytic model") {
  GroupModel g(cartanCtx(), CoordConvention::OrderedExpDescending);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> len(0, 4), letter(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> word(len(rng));
    for (auto& l : word) l = letter(rng);
    Polynomial f = randomPolynomial(5, 3, rng());
    Polynomial direct = g.applyWord(word, f);
    Polynomial viaPbw = g.applyOperator(EnvelopingOperator::fromWord(cartanCtx(), word), f);
    CHECK(direct == viaPbw);
  }
}
