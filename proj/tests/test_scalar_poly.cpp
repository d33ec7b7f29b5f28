#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/calculus.hpp"
#include "carnot/polynomial.hpp"
#include "carnot/scalar.hpp"
#include "carnot/serialize.hpp"

using namespace carnot;

TEST_CASE("scalar radical normalization") {
  Scalar a(Rational(3), 8);  // 3√8 = 6√2
  CHECK(a.rational() == Rational(6));
  CHECK(a.radicand() == 2);

  Scalar b = Scalar::sqrtOf(Rational(1, 2));  // √(1/2) = (1/2)√2
  CHECK(b.rational() == Rational(1, 2));
  CHECK(b.radicand() == 2);

  CHECK(Scalar::sqrtOf(Rational(4)) == Scalar(2));
  CHECK(Scalar(Rational(0), 7) == Scalar(0));
}

TEST_CASE("scalar arithmetic closure and errors") {
  Scalar r2 = Scalar::sqrtOf(Rational(2));
  CHECK(r2 * r2 == Scalar(2));
  CHECK(r2 * Scalar::sqrtOf(Rational(8)) == Scalar(4));
  CHECK((Scalar(3) * r2) / r2 == Scalar(3));
  CHECK(Scalar(1) / r2 == Scalar(Rational(1, 2), 2));
  CHECK(r2 + r2 == Scalar(Rational(2), 2));
  CHECK((r2 - r2).isZero());
  CHECK_THROWS_AS(r2 + Scalar(1), ScalarError);
  CHECK_THROWS_AS(Scalar::sqrtOf(Rational(-2)), ScalarError);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), ScalarError);
  CHECK_THROWS_AS(Scalar(Rational(1), 2).asRational(), ScalarError);
  CHECK(Scalar(Rational(-3, 2), 2).toString() == "-3/2*sqrt(2)");
  CHECK(Scalar(Rational(1, 2), 2).toLatex() == "\\frac{1}{2}\\sqrt{2}");
}

TEST_CASE("polynomial arithmetic and calculus") {
  const int n = 3;
  Polynomial x = Polynomial::variable(n, 0), y = Polynomial::variable(n, 1);
  Polynomial p = x * x * y - y;
  CHECK(p.derivative(0) == (Polynomial::constant(n, 2) * x * y));
  CHECK(p.derivative(2).isZero());
  CHECK(p.eval({Rational(2), Rational(3), Rational(0)}) == Rational(9));
  CHECK(p.totalDegree() == 3);

  // compose: p(x -> x+y, y -> y) = (x+y)^2 y - y
  Polynomial q = p.compose({x + y, y, Polynomial(n)});
  Polynomial expect = (x + y) * (x + y) * y - y;
  CHECK(q == expect);

  std::vector<int> w{1, 2, 3};
  CHECK(*(x * x * y).weightedDegree(w) == 4);
  CHECK((x * x * y).isWeightedHomogeneous(w, 4));
  CHECK(!p.isWeightedHomogeneous(w, 4));
}

TEST_CASE("polynomial parser") {
  Polynomial p = parsePolynomial("x1^2*x2 - 3/2*x3 + (x1+x2)^2", 3);
  Polynomial x = Polynomial::variable(3, 0), y = Polynomial::variable(3, 1),
             z = Polynomial::variable(3, 2);
  Polynomial expect = x * x * y - Polynomial::constant(3, Rational(3, 2)) * z + (x + y) * (x + y);
  CHECK(p == expect);
  CHECK(parsePolynomial("2x1", 2) == Polynomial::constant(2, 2) * Polynomial::variable(2, 0));
  CHECK(parsePolynomial("-x1", 1) == -Polynomial::variable(1, 0));
  CHECK_THROWS_AS(parsePolynomial("x9", 3), ValidationError);
  CHECK_THROWS_AS(parsePolynomial("x1 +", 3), ValidationError);
  CHECK_THROWS_AS(parsePolynomial("(x1", 3), ValidationError);
}

TEST_CASE("random polynomials are canonical") {
  for (unsigned long seed = 0; seed < 20; ++seed) {
    Polynomial p = randomPolynomial(4, 4, seed);
    Polynomial diff = p - p;
    CHECK(diff.isZero());
    for (const auto& [m, c] : p.terms()) {
      Rational canon = c;
      canon.canonicalize();
      CHECK(c == canon);
    }
  }
}
