#ifndef CARNOT_EXTERIOR_HPP
#define CARNOT_EXTERIOR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "carnot/lie_algebra.hpp"
#include "carnot/linalg.hpp"
#include "carnot/scalar.hpp"

namespace carnot {

/// Sparse element of Λ^h with Scalar coefficients, keyed by index-set mask.
class Multivector {
 public:
  Multivector() : degree_(0) {}
  explicit Multivector(int degree) : degree_(degree) {}
  static Multivector basisElement(int degree, uint64_t mask);

  int degree() const { return degree_; }
  const std::map<uint64_t, Scalar>& comps() const { return comps_; }
  bool isZero() const { return comps_.empty(); }
  void add(uint64_t mask, const Scalar& c);

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  Multivector scaled(const Scalar& c) const;
  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  /// Inner product in the orthonormal θ basis.
  Scalar dot(const Multivector& o) const;

 private:
  int degree_;
  std::map<uint64_t, Scalar> comps_;
};

/// Weight-graded exterior algebra over the dual of a stratified algebra.
/// Basis covectors θ_I are indexed by bitmasks; within each degree the basis
/// is ordered lexicographically on the index set and then stable-sorted by
/// weight, so weight blocks are contiguous and deterministic.
class ExteriorAlgebra {
 public:
  explicit ExteriorAlgebra(std::shared_ptr<const StratifiedLieAlgebra> alg);

  struct BasisElem {
    std::vector<int> indices;  // ascending, 0-based
    uint64_t mask;
    int weight;
  };
  struct WeightBlock {
    int weight;
    int start;  // first index within the degree basis
    int size;
  };

  const StratifiedLieAlgebra& algebra() const { return *alg_; }
  int dim() const { return alg_->dim(); }
  int weightOf(uint64_t mask) const;

  const std::vector<BasisElem>& basis(int degree) const { return basis_[degree]; }
  int dimOf(int degree) const { return static_cast<int>(basis_[degree].size()); }
  int indexOf(int degree, uint64_t mask) const;
  const std::vector<WeightBlock>& weightBlocks(int degree) const { return blocks_[degree]; }

  std::string basisName(int degree, int idx) const;   // "t1^t3" style (ASCII)
  std::string basisLatex(int degree, int idx) const;  // "\theta_{1}\wedge..."

  /// Maurer–Cartan term dθ_k (a 2-covector).
  const Multivector& dTheta(int k) const { return dTheta_[k]; }

 private:
  std::shared_ptr<const StratifiedLieAlgebra> alg_;
  std::vector<std::vector<BasisElem>> basis_;  // per degree 0..N
  std::vector<std::vector<WeightBlock>> blocks_;
  std::vector<std::map<uint64_t, int>> index_;
  std::vector<Multivector> dTheta_;
};

/// Graded-antisymmetric product; throws ValidationError("degree-overflow")
/// when the degrees add past N.
Multivector wedge(const ExteriorAlgebra& ext, const Multivector& a, const Multivector& b);

/// Hodge star for the orientation θ_1∧···∧θ_N, characterized by
/// φ∧(⋆ψ) = <φ,ψ>·vol.
Multivector hodgeStar(const ExteriorAlgebra& ext, const Multivector& a);

/// Sign s with ⋆θ_I = s·θ_{I^c}.
int hodgeSign(const ExteriorAlgebra& ext, uint64_t mask);

/// Purely algebraic map between two covector degrees, stored against the
/// canonical bases. d₀, δ₀ and the projections live here; entries stay
/// rational throughout.
struct AlgebraicMap {
  int srcDegree = 0;
  int dstDegree = 0;
  RatMatrix m;
};

/// Maurer–Cartan differential d₀ : Λ^h -> Λ^{h+1}, using the convention
/// dθ_k = -Σ_{i<j} c^k_{ij} θ_i∧θ_j extended as an antiderivation.
AlgebraicMap buildD0(const ExteriorAlgebra& ext, int degree);

/// δ₀ : Λ^h -> Λ^{h-1}, the transpose of d₀ in the orthonormal basis.
AlgebraicMap buildDelta0(const ExteriorAlgebra& ext, int degree);

/// d₀ applied to a multivector (for tests and the E₀ machinery).
Multivector applyD0(const ExteriorAlgebra& ext, const Multivector& a);

}  // namespace carnot

#endif
