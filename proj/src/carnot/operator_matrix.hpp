#ifndef CARNOT_OPERATOR_MATRIX_HPP
#define CARNOT_OPERATOR_MATRIX_HPP

#include <memory>
#include <optional>
#include <vector>

#include "carnot/exterior.hpp"
#include "carnot/uea.hpp"

namespace carnot {

/// Whether entrywise matrix composition may fan out over OpenMP threads.
/// Results are identical either way (entries are independent pure values);
/// the serial path is kept as the reference for tests and benchmarks.
void setParallelCompose(bool enabled);
bool parallelCompose();

/// Row/column labelling of an operator matrix: form degree plus the weight of
/// each basis element (used for homogeneity checks and block assertions).
struct FormBasisTag {
  int degree = 0;
  std::vector<int> weights;
  int size() const { return static_cast<int>(weights.size()); }
};

/// Rectangular matrix of left-invariant operators mapping sections of one
/// form bundle to another.
class OperatorMatrix {
 public:
  OperatorMatrix() : rows_(0), cols_(0) {}
  OperatorMatrix(std::shared_ptr<const UeaContext> ctx, FormBasisTag rowTag, FormBasisTag colTag);

  static OperatorMatrix identity(std::shared_ptr<const UeaContext> ctx, const FormBasisTag& tag);
  static OperatorMatrix fromRatMatrix(std::shared_ptr<const UeaContext> ctx,
                                      const FormBasisTag& rowTag, const FormBasisTag& colTag,
                                      const RatMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FormBasisTag& rowTag() const { return rowTag_; }
  const FormBasisTag& colTag() const { return colTag_; }
  const std::shared_ptr<const UeaContext>& context() const { return ctx_; }

  EnvelopingOperator& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const EnvelopingOperator& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  OperatorMatrix operator+(const OperatorMatrix& o) const;
  OperatorMatrix operator-(const OperatorMatrix& o) const;
  OperatorMatrix operator*(const OperatorMatrix& o) const;  // composition
  OperatorMatrix scaled(const Scalar& c) const;
  bool operator==(const OperatorMatrix& o) const;
  bool isZero() const;

  /// Entrywise formal adjoint of the transpose (the orthonormal-basis L²
  /// adjoint; Gram-weighted variants are assembled by the callers).
  OperatorMatrix adjointTranspose() const;

  /// Scalar matrix action on either side.
  OperatorMatrix leftMul(const RatMatrix& m) const;
  OperatorMatrix rightMul(const RatMatrix& m) const;

  /// Row/column rescaling by (possibly radical) scalars; used to present
  /// matrices in orthonormal Rumin bases.
  OperatorMatrix scaleRows(const std::vector<Scalar>& s) const;
  OperatorMatrix scaleCols(const std::vector<Scalar>& s) const;

  int maxHomDegree() const;
  /// All nonzero entries homogeneous of degree rowWeight - colWeight?
  bool isWeightHomogeneous() const;
  /// Smallest entry degree over nonzero entries, if any entry is nonzero.
  std::optional<int> minEntryDegree() const;

  OperatorMatrix power(int k) const;  // square matrices

 private:
  std::shared_ptr<const UeaContext> ctx_;
  FormBasisTag rowTag_, colTag_;
  int rows_, cols_;
  std::vector<EnvelopingOperator> e_;
};

/// Full left-invariant de Rham differential on Λ^h sections as an operator
/// matrix: d = d₀ + Σ_ℓ d_ℓ with d_ℓ contributing layer-ℓ fields.
OperatorMatrix buildFullD(const std::shared_ptr<const UeaContext>& ctx,
                          const ExteriorAlgebra& ext, int degree);

/// The layer-ℓ piece d_ℓ alone (ℓ = 0 gives the algebraic part).
OperatorMatrix buildDLayer(const std::shared_ptr<const UeaContext>& ctx,
                           const ExteriorAlgebra& ext, int degree, int ell);

FormBasisTag lambdaTag(const ExteriorAlgebra& ext, int degree);

}  // namespace carnot

#endif
