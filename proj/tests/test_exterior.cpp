#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/exterior.hpp"
#include "carnot/operator_matrix.hpp"

using namespace carnot;

namespace {

std::shared_ptr<const StratifiedLieAlgebra> cartanAlg() {
  static auto alg =
      std::make_shared<StratifiedLieAlgebra>(StratifiedLieAlgebra::preset("cartan"));
  return alg;
}

Multivector theta(std::initializer_list<int> idx) {
  uint64_t mask = 0;
  for (int i : idx) mask |= uint64_t(1) << (i - 1);
  return Multivector::basisElement(static_cast<int>(idx.size()), mask);
}

}  // namespace

TEST_CASE("wedge product") {
  ExteriorAlgebra ext(cartanAlg());
  CHECK(wedge(ext, theta({1}), theta({2})) == theta({1, 2}));
  CHECK(wedge(ext, theta({2}), theta({1})) == -theta({1, 2}));
  CHECK(wedge(ext, theta({1}), theta({1})).isZero());

  // (θ1+θ2) ∧ θ1∧θ3 = -θ1∧θ2∧θ3
  Multivector a = theta({1}) + theta({2});
  CHECK(wedge(ext, a, theta({1, 3})) == -theta({1, 2, 3}));

  // expansion oracle over all index pairs: θ_i ∧ θ_j vs signs
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      Multivector w = wedge(ext, theta({i}), theta({j}));
      if (i == j)
        CHECK(w.isZero());
      else if (i < j)
        CHECK(w == theta({i, j}));
      else
        CHECK(w == -theta({j, i}));
    }

  CHECK_THROWS_AS(wedge(ext, theta({1, 2, 3}), theta({1, 2, 3})), ValidationError);
}

TEST_CASE("weight grading of the covector bases") {
  ExteriorAlgebra ext(cartanAlg());
  // θ weights are the layers (1,1,2,3,3)
  CHECK(ext.weightOf(1) == 1);
  CHECK(ext.weightOf(0b01001) == 4);  // θ1∧θ4
  CHECK(ext.weightOf(0b10100) == 5);  // θ3∧θ5
  // within a degree, weights are nondecreasing and blocks partition the basis
  for (int h = 0; h <= 5; ++h) {
    int covered = 0;
    int last = -1;
    for (const auto& b : ext.weightBlocks(h)) {
      CHECK(b.weight > last);
      last = b.weight;
      covered += b.size;
      for (int t = 0; t < b.size; ++t) CHECK(ext.basis(h)[b.start + t].weight == b.weight);
    }
    CHECK(covered == ext.dimOf(h));
  }
  // wedge adds weights
  Multivector w = wedge(ext, theta({3}), theta({4}));
  for (const auto& [mask, c] : w.comps()) CHECK(ext.weightOf(mask) == 5);
}

TEST_CASE("hodge star") {
  ExteriorAlgebra ext(cartanAlg());
  const uint64_t full = (1 << 5) - 1;
  // ⋆1 = vol, ⋆vol = 1
  CHECK(hodgeStar(ext, Multivector::basisElement(0, 0)) == Multivector::basisElement(5, full));
  CHECK(hodgeStar(ext, Multivector::basisElement(5, full)) == Multivector::basisElement(0, 0));
  // ⋆θ1 = +θ2∧θ3∧θ4∧θ5
  CHECK(hodgeStar(ext, theta({1})) == theta({2, 3, 4, 5}));

  // ⋆⋆ = (-1)^{h(N-h)} on every basis element
  for (int h = 0; h <= 5; ++h)
    for (const auto& b : ext.basis(h)) {
      Multivector v = Multivector::basisElement(h, b.mask);
      Multivector ss = hodgeStar(ext, hodgeStar(ext, v));
      int sign = (h * (5 - h)) % 2 == 0 ? 1 : -1;
      CHECK(ss == (sign > 0 ? v : -v));
    }

  // defining identity, brute force: φ∧⋆ψ = <φ,ψ>·vol on all basis pairs
  for (int h = 0; h <= 5; ++h)
    for (const auto& a : ext.basis(h))
      for (const auto& b : ext.basis(h)) {
        Multivector va = Multivector::basisElement(h, a.mask);
        Multivector vb = Multivector::basisElement(h, b.mask);
        Multivector lhs = wedge(ext, va, hodgeStar(ext, vb));
        Multivector rhs = Multivector::basisElement(5, full).scaled(va.dot(vb));
        CHECK(lhs == rhs);
      }

  // isometry on basis pairs
  for (const auto& a : ext.basis(2))
    for (const auto& b : ext.basis(2)) {
      Multivector va = Multivector::basisElement(2, a.mask);
      Multivector vb = Multivector::basisElement(2, b.mask);
      CHECK(hodgeStar(ext, va).dot(hodgeStar(ext, vb)) == va.dot(vb));
    }
}

TEST_CASE("d0 on the Cartan group") {
  ExteriorAlgebra ext(cartanAlg());
  CHECK(applyD0(ext, theta({3})) == -theta({1, 2}));
  CHECK(applyD0(ext, theta({4})) == -theta({1, 3}));
  CHECK(applyD0(ext, theta({5})) == -theta({2, 3}));
  CHECK(applyD0(ext, theta({1})).isZero());
  CHECK(applyD0(ext, theta({2})).isZero());

  // d0 ∘ d0 = 0 on every degree (equivalent to the Jacobi identity)
  for (int h = 0; h + 2 <= 5; ++h) {
    RatMatrix prod = buildD0(ext, h + 1).m * buildD0(ext, h).m;
    CHECK(prod.isZero());
  }

  // δ0 is the transpose and squares to zero
  for (int h = 1; h <= 5; ++h) {
    CHECK(buildDelta0(ext, h).m == buildD0(ext, h - 1).m.transpose());
    if (h >= 2) CHECK((buildDelta0(ext, h - 1).m * buildDelta0(ext, h).m).isZero());
  }

  // d0 preserves weight: nonzero entries only between equal-weight elements
  for (int h = 0; h < 5; ++h) {
    RatMatrix d0 = buildD0(ext, h).m;
    for (int i = 0; i < d0.rows(); ++i)
      for (int j = 0; j < d0.cols(); ++j)
        if (d0.at(i, j) != 0)
          CHECK(ext.basis(h + 1)[i].weight == ext.basis(h)[j].weight);
  }
}

TEST_CASE("abelian d0 vanishes") {
  auto alg = std::make_shared<StratifiedLieAlgebra>(StratifiedLieAlgebra::preset("abelian-4"));
  ExteriorAlgebra ext(alg);
  for (int h = 0; h < 4; ++h) CHECK(buildD0(ext, h).m.isZero());
}

TEST_CASE("full differential: layer structure and d∘d = 0") {
  auto alg = cartanAlg();
  auto ctx = std::make_shared<UeaContext>(*alg);
  ExteriorAlgebra ext(alg);

  // on functions: d f = Σ_j (X_j f) θ_j, five first-order entries
  OperatorMatrix d0full = buildFullD(ctx, ext, 0);
  REQUIRE(d0full.rows() == 5);
  for (int j = 0; j < 5; ++j) {
    int row = ext.indexOf(1, uint64_t(1) << j);
    CHECK(d0full.at(row, 0) == EnvelopingOperator::generator(ctx, j));
  }

  // d_ℓ raises weight by exactly ℓ and carries layer-ℓ fields
  for (int h = 0; h < 5; ++h)
    for (int ell = 0; ell <= 3; ++ell) {
      OperatorMatrix dl = buildDLayer(ctx, ext, h, ell);
      for (int i = 0; i < dl.rows(); ++i)
        for (int j = 0; j < dl.cols(); ++j) {
          if (dl.at(i, j).isZero()) continue;
          CHECK(ext.basis(h + 1)[i].weight - ext.basis(h)[j].weight == ell);
          CHECK(dl.at(i, j).maxHomDegree() == ell);
        }
    }

  // d ∘ d = 0 as an operator identity after PBW normalization, all degrees
  for (int h = 0; h + 1 < 5; ++h)
    CHECK((buildFullD(ctx, ext, h + 1) * buildFullD(ctx, ext, h)).isZero());
}

TEST_CASE("weight-block projections are idempotent and sum to the identity") {
  ExteriorAlgebra ext(cartanAlg());
  for (int h = 0; h <= 5; ++h) {
    RatMatrix sum(ext.dimOf(h), ext.dimOf(h));
    for (const auto& b : ext.weightBlocks(h)) {
      RatMatrix p(ext.dimOf(h), ext.dimOf(h));
      for (int t = 0; t < b.size; ++t) p.at(b.start + t, b.start + t) = 1;
      CHECK(p * p == p);
      sum = sum + p;
    }
    CHECK(sum == RatMatrix::identity(ext.dimOf(h)));
  }
}
