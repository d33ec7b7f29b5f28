#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "carnot/calculus.hpp"
#include "carnot/numeric.hpp"

using namespace carnot;

namespace {

struct Cartan {
  std::shared_ptr<const UeaContext> ctx;
  std::unique_ptr<RuminComplex> cx;
  std::unique_ptr<GroupModel> g;
  Cartan() {
    ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("cartan"));
    cx = std::make_unique<RuminComplex>(ctx);
    g = std::make_unique<GroupModel>(ctx, CoordConvention::OrderedExpDescending);
  }
};

Cartan& fix() {
  static Cartan c;
  return c;
}

QuadratureGrid gauss(int points) {
  QuadratureGrid grid;
  grid.box = Box::cube(5, Rational(-1), Rational(1));
  grid.pointsPerAxis = points;
  grid.rule = QuadratureRule::GaussLegendre;
  return grid;
}

}  // namespace

TEST_CASE("coordinate-field evaluation matches the frame") {
  auto& f = fix();
  // X2 applied to x3 at (2,0,0,0,0) equals x1 = 2
  Polynomial x3 = Polynomial::variable(5, 2);
  Polynomial r = f.g->applyField(1, x3);
  CHECK(r.eval({Rational(2), Rational(0), Rational(0), Rational(0), Rational(0)}) == Rational(2));
}

TEST_CASE("smooth functions evaluate exactly in rational mode") {
  Box box = Box::cube(5, Rational(-1), Rational(1));
  Polynomial p = Polynomial::variable(5, 0) * Polynomial::variable(5, 2);
  SmoothFn fn = SmoothFn::bump(box, p, 3);
  std::vector<Rational> inside{Rational(1, 2), Rational(0), Rational(1, 3), Rational(0),
                               Rational(0)};
  // value = x1 x3 Π (1 - x_i²)³
  Rational expect = Rational(1, 2) * Rational(1, 3);
  expect *= Rational(3, 4) * Rational(3, 4) * Rational(3, 4);          // (1-1/4)³
  expect *= Rational(8, 9) * Rational(8, 9) * Rational(8, 9);          // (1-1/9)³
  CHECK(fn.evalRational(inside) == expect);
  std::vector<Rational> outside{Rational(2), Rational(0), Rational(0), Rational(0), Rational(0)};
  CHECK(fn.evalRational(outside) == 0);
  // derivative inside the box equals the polynomial derivative
  SmoothFn dx = fn.derivative(0);
  Rational h(1, 1000);
  (void)h;
  // check against an independently expanded polynomial
  Polynomial full = p;
  for (int i = 0; i < 5; ++i) {
    Polynomial b = fn.bumpPolys()[i];
    full = full * b * b * b;
  }
  CHECK(dx.evalRational(inside) == full.derivative(0).eval(inside));
}

TEST_CASE("field application on smooth functions matches polynomial application") {
  auto& f = fix();
  Box box = Box::cube(5, Rational(-1), Rational(1));
  Polynomial p = randomPolynomial(5, 2, 5);
  SmoothFn fn = SmoothFn::bump(box, p, 4);
  // X2 fn as SmoothFn vs the expanded polynomial route
  SmoothFn viaFn = fn.applyField(*f.g, 1);
  Polynomial full = p;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 4; ++k) full = full * fn.bumpPolys()[i];
  Polynomial viaPoly = f.g->applyField(1, full);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(-9, 9);
  for (int t = 0; t < 10; ++t) {
    std::vector<Rational> x(5);
    for (auto& xi : x) xi = makeRational(num(rng), 10);
    CHECK(viaFn.evalRational(x) == viaPoly.eval(x));
  }
}

TEST_CASE("pairing basics") {
  auto& f = fix();
  QuadratureGrid grid = gauss(8);
  std::vector<Rational> gram1 = f.cx->basis().gram[1];
  SampleForm a = randomSampleForm(*f.cx, 1, grid.box, 4, 2, 21);
  SampleForm b = randomSampleForm(*f.cx, 1, grid.box, 4, 2, 22);
  double ab = pairing(a, b, gram1, grid);
  double ba = pairing(b, a, gram1, grid);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
  CHECK(pairing(a, a, gram1, grid) >= 0);

  // disjoint supports pair to zero exactly
  Box left = Box::cube(5, Rational(-1), Rational(0));
  Box right = Box::cube(5, Rational(1, 2), Rational(1));
  SampleForm al = randomSampleForm(*f.cx, 1, left, 4, 2, 23);
  SampleForm br = randomSampleForm(*f.cx, 1, right, 4, 2, 24);
  CHECK(pairing(al, br, gram1, grid) == 0.0);

  SampleForm wrong = randomSampleForm(*f.cx, 2, grid.box, 4, 2, 25);
  CHECK_THROWS_AS(pairing(a, wrong, gram1, grid), ValidationError);
}

TEST_CASE("adjointness by quadrature, with negative control") {
  auto& f = fix();
  for (int h = 1; h <= 5; ++h) {
    int bumpExp = f.cx->dc(h - 1).maxHomDegree() + 1;
    auto res = adjointnessCheck(*f.cx, *f.g, h, 4, gauss(16), bumpExp, 300 + h);
    INFO("degree ", h, " err ", res.maxRelError);
    CHECK(res.maxRelError < 1e-6);
  }
  // dropping the sign of δ_c produces an O(1) error
  auto bad = adjointnessCheck(*f.cx, *f.g, 1, 4, gauss(16), 2, 301, /*flipSign=*/true);
  CHECK(bad.maxRelError > 1e-2);
  // insufficient smoothness encoding is reported
  CHECK_THROWS_AS(adjointnessCheck(*f.cx, *f.g, 2, 1, gauss(8), 2, 1), ValidationError);
}

TEST_CASE("d_c ∘ d_c is numerically zero pointwise") {
  auto& f = fix();
  for (int h = 0; h + 1 < 5; ++h) {
    double res = dcSquaredPointwiseResidual(*f.cx, *f.g, h, 250, 400 + h);
    INFO("degree ", h);
    CHECK(res < 1e-9);
  }
}

TEST_CASE("symbolic and numeric composition agree exactly in rational mode") {
  auto& f = fix();
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> len(0, 3), letter(0, 4);
  std::uniform_int_distribution<long> num(-5, 5);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<int> w1(len(rng)), w2(len(rng));
    for (auto& l : w1) l = letter(rng);
    for (auto& l : w2) l = letter(rng);
    EnvelopingOperator p = EnvelopingOperator::fromWord(f.ctx, w1);
    EnvelopingOperator q = EnvelopingOperator::fromWord(f.ctx, w2);
    Polynomial u = randomPolynomial(5, 3, rng());
    Polynomial viaCompose = f.g->applyOperator(p * q, u);
    Polynomial sequential = f.g->applyOperator(p, f.g->applyOperator(q, u));
    CHECK(viaCompose == sequential);
    std::vector<Rational> x(5);
    for (auto& xi : x) xi = makeRational(num(rng), 3);
    CHECK(viaCompose.eval(x) == sequential.eval(x));
  }
}

TEST_CASE("quadrature rules converge at the expected rate") {
  auto& f = fix();
  const auto& gram = f.cx->basis().gram[0];
  SampleForm a = randomSampleForm(*f.cx, 0, Box::cube(5, Rational(-1), Rational(1)), 4, 2, 71);
  // Gauss at 20 points integrates these polynomial integrands exactly; treat
  // it as the reference value for the midpoint refinements.
  double ref = pairing(a, a, gram, gauss(20));
  double errPrev = -1;
  for (int n : {4, 8, 16}) {
    QuadratureGrid grid = gauss(n);
    grid.rule = QuadratureRule::Midpoint;
    double err = std::abs(pairing(a, a, gram, grid) - ref);
    if (errPrev >= 0 && err > 1e-14) CHECK(err < errPrev / 2.5);  // ~O(h²) drop
    errPrev = err;
  }
}

TEST_CASE("Monte Carlo pairing is reproducible and consistent") {
  auto& f = fix();
  const auto& gram = f.cx->basis().gram[0];
  SampleForm a = randomSampleForm(*f.cx, 0, Box::cube(5, Rational(-1), Rational(1)), 4, 1, 81);
  double exact = pairing(a, a, gram, gauss(16));
  QuadratureGrid mc = gauss(1);
  mc.mcSamples = 200000;
  mc.mcSeed = 99;
  auto est1 = pairingMonteCarlo(a, a, gram, mc);
  auto est2 = pairingMonteCarlo(a, a, gram, mc);
  CHECK(est1.value == est2.value);  // bitwise reproducible for a fixed seed
  CHECK(std::abs(est1.value - exact) < 6 * est1.standardError + 1e-6);
}
