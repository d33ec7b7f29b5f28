#ifndef CARNOT_RUMIN_HPP
#define CARNOT_RUMIN_HPP

#include <memory>
#include <string>
#include <vector>

#include "carnot/operator_matrix.hpp"

namespace carnot {

/// Bases of the spaces E₀^h = Ker d₀ ∩ Ker δ₀ per degree. Vectors are kept
/// orthogonal but unnormalized over Q; the squared norms sit in the Gram
/// diagonal and the radical scale factors 1/√g appear only when presenting
/// results in the orthonormal basis.
struct RuminBasis {
  std::vector<std::vector<Multivector>> vectors;  // per degree
  std::vector<std::vector<int>> weights;
  std::vector<std::vector<Rational>> gram;
  std::vector<RatMatrix> coords;  // columns = basis vectors in θ coordinates

  int dim(int h) const { return static_cast<int>(vectors[h].size()); }
};

/// One verified identity of the operator suite.
struct IdentityItem {
  std::string name;
  bool pass = false;
  std::string detail;  // residual description when failing
};

struct IdentityReport {
  std::vector<IdentityItem> items;
  bool allPass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

/// The full symbolic Rumin complex of a stratified algebra: E₀ bases, the
/// projections Π_{E₀} and Π_E, the differentials d_c and δ_c, and the
/// homogeneous Laplacians, all as exact operator matrices.
class RuminComplex {
 public:
  explicit RuminComplex(std::shared_ptr<const UeaContext> ctx);

  const std::shared_ptr<const UeaContext>& context() const { return ctx_; }
  const StratifiedLieAlgebra& algebra() const { return ctx_->algebra(); }
  const ExteriorAlgebra& exterior() const { return *ext_; }
  int dim() const { return algebra().dim(); }

  const RuminBasis& basis() const { return basis_; }
  const AlgebraicMap& piE0(int h) const { return piE0_[h]; }
  const OperatorMatrix& piE(int h) const { return piE_[h]; }
  const OperatorMatrix& fullD(int h) const { return fullD_[h]; }

  /// d_c : E₀^h -> E₀^{h+1} in the unnormalized orthogonal basis (rational).
  const OperatorMatrix& dc(int h) const { return dc_[h]; }
  /// δ_c : E₀^h -> E₀^{h-1}, the Gram-weighted formal adjoint of d_c.
  const OperatorMatrix& deltaC(int h) const { return deltaC_[h]; }
  const OperatorMatrix& laplacian(int h) const { return laplacian_[h]; }
  /// Homogeneous order M_h of the degree-h Laplacian.
  int laplacianOrder(int h) const { return mh_[h]; }
  const std::vector<int>& laplacianOrders() const { return mh_; }

  /// Shape of Δ_{R,h} = (d_cδ_c)^a + (δ_cd_c)^b; powers are 0 when absent.
  struct LaplacianShape {
    int dDeltaPow = 0;
    int deltaDPow = 0;
  };
  LaplacianShape laplacianShape(int h) const { return shape_[h]; }

  /// Orders of d_c per source degree (max homogeneous entry degree).
  int dcOrder(int h) const { return dc_[h].maxHomDegree(); }

  /// Presentation in the orthonormal basis (radical scalars appear here).
  OperatorMatrix dcOrthonormal(int h) const;
  OperatorMatrix deltaCOrthonormal(int h) const;
  OperatorMatrix laplacianOrthonormal(int h) const;
  /// Orthonormal Hodge star E₀^h -> E₀^{N-h} as a constant operator matrix.
  OperatorMatrix starOrthonormal(int h) const;
  /// Presentation scale factors 1/√g_i of degree h.
  std::vector<Scalar> orthonormalScales(int h) const;

  /// The full operator identity suite (d_c² = 0, the δ_c sign law, all
  /// Laplacian intertwinings, star duality, Laplacian orders).
  IdentityReport checkIdentities() const;

 private:
  void computeE0();
  void computePiE();
  void computeDc();
  void computeLaplacians();
  void verifyPiEContract() const;

  std::shared_ptr<const UeaContext> ctx_;
  std::shared_ptr<const ExteriorAlgebra> ext_;
  RuminBasis basis_;
  std::vector<AlgebraicMap> piE0_;       // per degree
  std::vector<RatMatrix> pi0_;           // algebraic projection onto E₀^⊥
  std::vector<RatMatrix> d0_, d0inv_;    // d₀ and its partial inverse per degree
  std::vector<OperatorMatrix> fullD_;    // Λ^h -> Λ^{h+1}
  std::vector<OperatorMatrix> piE_;      // Λ^h -> Λ^h
  std::vector<OperatorMatrix> dc_, deltaC_, laplacian_;
  std::vector<LaplacianShape> shape_;
  std::vector<int> mh_;
  std::vector<RatMatrix> starE0_;        // E₀^h -> E₀^{N-h}, unnormalized coords
  std::vector<FormBasisTag> e0Tag_;
};

}  // namespace carnot

#endif
