#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carnot/group_model.hpp"
#include "carnot/serialize.hpp"

using namespace carnot;

namespace {

std::shared_ptr<const UeaContext> cartanCtx() {
  static auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("cartan"));
  return ctx;
}

std::vector<Rational> randomRationalPoint(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<Rational> x(n);
  for (auto& xi : x) xi = makeRational(num(rng), den(rng));
  return x;
}

}  // namespace

TEST_CASE("ordered-exponential fields reproduce the printed Cartan frame") {
  GroupModel g(cartanCtx(), CoordConvention::OrderedExpDescending);
  g.verifyConstruction();
  const int n = 5;
  auto x = [&](int i) { return Polynomial::variable(n, i); };
  auto c = [&](long num, long den) { return Polynomial::constant(n, makeRational(num, den)); };

  std::vector<std::vector<Polynomial>> expect(n, std::vector<Polynomial>(n, Polynomial(n)));
  expect[0][0] = c(1, 1);
  expect[1][1] = c(1, 1);
  expect[1][2] = x(0);
  expect[1][3] = c(1, 2) * x(0) * x(0);
  expect[1][4] = x(0) * x(1);
  expect[2][2] = c(1, 1);
  expect[2][3] = x(0);
  expect[2][4] = x(1);
  expect[3][3] = c(1, 1);
  expect[4][4] = c(1, 1);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) CHECK(g.fields()[i][j] == expect[i][j]);
}

TEST_CASE("BCH first kind gives the symmetric Heisenberg law") {
  auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("heisenberg-1"));
  GroupModel g(ctx, CoordConvention::BchFirstKind);
  g.verifyConstruction();
  // z3 = x3 + y3 + (x1 y2 - x2 y1)/2
  Polynomial expect =
      Polynomial::variable(6, 2) + Polynomial::variable(6, 5) +
      Polynomial::constant(6, makeRational(1, 2)) *
          (Polynomial::variable(6, 0) * Polynomial::variable(6, 4) -
           Polynomial::variable(6, 1) * Polynomial::variable(6, 3));
  CHECK(g.groupLaw()[2] == expect);
}

TEST_CASE("Heisenberg laws agree with a hand-coded 3x3 matrix oracle") {
  auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("heisenberg-1"));
  // X1 = E12, X2 = E23, X3 = E13 gives [X1,X2] = X3, a faithful strictly
  // upper-triangular representation independent of the engine.
  auto E = [](int i, int j) {
    RatMatrix m(3, 3);
    m.at(i, j) = 1;
    return m;
  };
  RatMatrix X1 = E(0, 1), X2 = E(1, 2), X3 = E(0, 2);
  auto repOf = [&](const std::vector<Rational>& x, CoordConvention conv) {
    if (conv == CoordConvention::BchFirstKind) {
      RatMatrix a = X1.scaled(x[0]) + X2.scaled(x[1]) + X3.scaled(x[2]);
      return nilpotentMatrixExp(a);
    }
    return nilpotentMatrixExp(X3.scaled(x[2])) * nilpotentMatrixExp(X2.scaled(x[1])) *
           nilpotentMatrixExp(X1.scaled(x[0]));
  };
  std::mt19937_64 rng(11);
  for (auto conv : {CoordConvention::BchFirstKind, CoordConvention::OrderedExpDescending}) {
    GroupModel g(ctx, conv);
    for (int t = 0; t < 25; ++t) {
      auto x = randomRationalPoint(3, rng), y = randomRationalPoint(3, rng);
      auto z = g.multiply(x, y);
      CHECK(repOf(x, conv) * repOf(y, conv) == repOf(z, conv));
    }
  }
}

TEST_CASE("Cartan group law matches matrix exponentials in the regular representation") {
  auto ctx = cartanCtx();
  RegularRepresentation rep = regularRepresentation(*ctx);
  CHECK(rep.basis.size() == 15);
  auto repOf = [&](const std::vector<Rational>& x, CoordConvention conv) {
    const int d = static_cast<int>(rep.basis.size());
    if (conv == CoordConvention::BchFirstKind) {
      RatMatrix a(d, d);
      for (int i = 0; i < 5; ++i) a = a + rep.matrices[i].scaled(x[i]);
      return nilpotentMatrixExp(a);
    }
    RatMatrix m = RatMatrix::identity(d);
    for (int i = 4; i >= 0; --i) m = m * nilpotentMatrixExp(rep.matrices[i].scaled(x[i]));
    return m;
  };
  std::mt19937_64 rng(23);
  for (auto conv : {CoordConvention::BchFirstKind, CoordConvention::OrderedExpDescending}) {
    GroupModel g(ctx, conv);
    for (int t = 0; t < 50; ++t) {
      auto x = randomRationalPoint(5, rng), y = randomRationalPoint(5, rng);
      auto z = g.multiply(x, y);
      CHECK(repOf(x, conv) * repOf(y, conv) == repOf(z, conv));
    }
  }
}

TEST_CASE("group axioms at random rational points") {
  GroupModel g(cartanCtx(), CoordConvention::OrderedExpDescending);
  std::mt19937_64 rng(5);
  std::vector<Rational> zero(5, Rational(0));
  for (int t = 0; t < 100; ++t) {
    auto x = randomRationalPoint(5, rng), y = randomRationalPoint(5, rng),
         z = randomRationalPoint(5, rng);
    CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
    CHECK(g.multiply(x, zero) == x);
    CHECK(g.multiply(zero, x) == x);
    CHECK(g.multiply(x, g.inverse(x)) == zero);
  }
}

TEST_CASE("left invariance of the derived fields on polynomial test functions") {
  GroupModel g(cartanCtx(), CoordConvention::OrderedExpDescending);
  const int n = 5;
  // X_i^{(y)} [f(m(x,y))] == (X_i f)(m(x,y)) as exact polynomials in (x, y)
  std::vector<Polynomial> lawSubs(g.groupLaw().begin(), g.groupLaw().end());
  std::mt19937_64 rng(17);
  for (int i = 0; i < n; ++i) {
    Polynomial f = randomPolynomial(n, 3, rng());
    // lhs: apply the y-version of X_i to f∘m
    Polynomial fm = f.compose(lawSubs);  // in 2n vars
    Polynomial lhs(2 * n);
    for (int j = 0; j < n; ++j) {
      Polynomial coef = g.fields()[i][j].embed(2 * n, n);  // coefficients in y
      lhs += coef * fm.derivative(n + j);
    }
    Polynomial rhs = g.applyField(i, f).compose(lawSubs);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("dilations") {
  GroupModel g(cartanCtx(), CoordConvention::OrderedExpDescending);
  std::vector<Rational> x(5, Rational(1));
  auto dx = g.dilate(Rational(2), x);
  CHECK(dx == std::vector<Rational>{Rational(2), Rational(2), Rational(4), Rational(8), Rational(8)});
  CHECK(g.dilate(Rational(1), x) == x);
  CHECK_THROWS_AS(g.dilate(Rational(0), x), ValidationError);
  CHECK_THROWS_AS(g.dilate(Rational(-2), x), ValidationError);
}

TEST_CASE("homogeneous norm is 1-homogeneous and definite") {
  GroupModel g(cartanCtx(), CoordConvention::OrderedExpDescending);
  std::vector<double> x{1, 0, 2, 0, -1};
  double r = g.homogeneousNorm(x);
  CHECK(r > 0);
  CHECK(g.homogeneousNorm(g.dilate(3.0, x)) == doctest::Approx(3.0 * r).epsilon(1e-12));
  CHECK(g.homogeneousNorm(g.dilate(0.25, x)) == doctest::Approx(0.25 * r).epsilon(1e-12));
  CHECK(g.homogeneousNorm(std::vector<double>(5, 0.0)) == 0.0);
}

TEST_CASE("unsupported convention is rejected") {
  CHECK_THROWS_AS(conventionFromName("polar"), ValidationError);
}

TEST_CASE("group model JSON carries the homogeneous dimension") {
  GroupModel g(cartanCtx(), CoordConvention::OrderedExpDescending);
  auto j = groupModelToJson(g);
  CHECK(j.at("Q").get<long>() == 10);
  CHECK(j.at("convention").get<std::string>() == "ordered-exp-descending");
}
