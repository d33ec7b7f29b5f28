#include "carnot/operator_matrix.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>

namespace carnot {

namespace {
std::atomic<bool> g_parallel{true};
}

void setParallelCompose(bool enabled) { g_parallel.store(enabled); }
bool parallelCompose() { return g_parallel.load(); }

OperatorMatrix::OperatorMatrix(std::shared_ptr<const UeaContext> ctx, FormBasisTag rowTag,
                               FormBasisTag colTag)
    : ctx_(std::move(ctx)),
      rowTag_(std::move(rowTag)),
      colTag_(std::move(colTag)),
      rows_(rowTag_.size()),
      cols_(colTag_.size()),
      e_(size_t(rows_) * cols_) {
  for (auto& op : e_) op = EnvelopingOperator(ctx_);
}

OperatorMatrix OperatorMatrix::identity(std::shared_ptr<const UeaContext> ctx,
                                        const FormBasisTag& tag) {
  OperatorMatrix m(ctx, tag, tag);
  for (int i = 0; i < m.rows_; ++i) m.at(i, i) = EnvelopingOperator::one(ctx);
  return m;
}

OperatorMatrix OperatorMatrix::fromRatMatrix(std::shared_ptr<const UeaContext> ctx,
                                             const FormBasisTag& rowTag, const FormBasisTag& colTag,
                                             const RatMatrix& mat) {
  OperatorMatrix m(ctx, rowTag, colTag);
  assert(mat.rows() == m.rows_ && mat.cols() == m.cols_);
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j)
      if (mat.at(i, j) != 0)
        m.at(i, j) = EnvelopingOperator::one(ctx).scaled(Scalar(mat.at(i, j)));
  return m;
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  OperatorMatrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  OperatorMatrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("operator matrix dimension mismatch");
  OperatorMatrix r(ctx_, rowTag_, o.colTag_);
  const int n = rows_ * o.cols_;
  if (parallelCompose()) {
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < n; ++idx) {
      const int i = idx / o.cols_, j = idx % o.cols_;
      EnvelopingOperator sum(ctx_);
      for (int k = 0; k < cols_; ++k) sum += at(i, k) * o.at(k, j);
      r.at(i, j) = std::move(sum);
    }
  } else {
    for (int idx = 0; idx < n; ++idx) {
      const int i = idx / o.cols_, j = idx % o.cols_;
      EnvelopingOperator sum(ctx_);
      for (int k = 0; k < cols_; ++k) sum += at(i, k) * o.at(k, j);
      r.at(i, j) = std::move(sum);
    }
  }
  return r;
}

OperatorMatrix OperatorMatrix::scaled(const Scalar& c) const {
  OperatorMatrix r = *this;
  for (auto& op : r.e_) op = op.scaled(c);
  return r;
}

bool OperatorMatrix::operator==(const OperatorMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (!(e_[i] == o.e_[i])) return false;
  return true;
}

bool OperatorMatrix::isZero() const {
  for (const auto& op : e_)
    if (!op.isZero()) return false;
  return true;
}

OperatorMatrix OperatorMatrix::adjointTranspose() const {
  OperatorMatrix r(ctx_, colTag_, rowTag_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).adjoint();
  return r;
}

OperatorMatrix OperatorMatrix::leftMul(const RatMatrix& m) const {
  assert(m.cols() == rows_);
  FormBasisTag tag = rowTag_;
  tag.weights.resize(m.rows());
  OperatorMatrix r(ctx_, tag, colTag_);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < cols_; ++j) {
      EnvelopingOperator sum(ctx_);
      for (int k = 0; k < rows_; ++k)
        if (m.at(i, k) != 0) sum += at(k, j).scaled(Scalar(m.at(i, k)));
      r.at(i, j) = std::move(sum);
    }
  return r;
}

OperatorMatrix OperatorMatrix::rightMul(const RatMatrix& m) const {
  assert(m.rows() == cols_);
  FormBasisTag tag = colTag_;
  tag.weights.resize(m.cols());
  OperatorMatrix r(ctx_, rowTag_, tag);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < m.cols(); ++j) {
      EnvelopingOperator sum(ctx_);
      for (int k = 0; k < cols_; ++k)
        if (m.at(k, j) != 0) sum += at(i, k).scaled(Scalar(m.at(k, j)));
      r.at(i, j) = std::move(sum);
    }
  return r;
}

OperatorMatrix OperatorMatrix::scaleRows(const std::vector<Scalar>& s) const {
  assert(static_cast<int>(s.size()) == rows_);
  OperatorMatrix r = *this;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).scaled(s[i]);
  return r;
}

OperatorMatrix OperatorMatrix::scaleCols(const std::vector<Scalar>& s) const {
  assert(static_cast<int>(s.size()) == cols_);
  OperatorMatrix r = *this;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).scaled(s[j]);
  return r;
}

int OperatorMatrix::maxHomDegree() const {
  int d = 0;
  for (const auto& op : e_) d = std::max(d, op.maxHomDegree());
  return d;
}

bool OperatorMatrix::isWeightHomogeneous() const {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const auto& op = at(i, j);
      if (op.isZero()) continue;
      auto d = op.homogeneousDegree();
      if (!d || *d != rowTag_.weights[i] - colTag_.weights[j]) return false;
    }
  return true;
}

std::optional<int> OperatorMatrix::minEntryDegree() const {
  std::optional<int> d;
  for (const auto& op : e_) {
    if (op.isZero()) continue;
    for (const auto& [m, c] : op.terms()) {
      int w = ctx_->weightedDegree(m);
      d = d ? std::min(*d, w) : w;
    }
  }
  return d;
}

OperatorMatrix OperatorMatrix::power(int k) const {
  assert(rows_ == cols_);
  OperatorMatrix r = identity(ctx_, rowTag_);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

FormBasisTag lambdaTag(const ExteriorAlgebra& ext, int degree) {
  FormBasisTag tag;
  tag.degree = degree;
  for (const auto& b : ext.basis(degree)) tag.weights.push_back(b.weight);
  return tag;
}

OperatorMatrix buildDLayer(const std::shared_ptr<const UeaContext>& ctx,
                           const ExteriorAlgebra& ext, int degree, int ell) {
  OperatorMatrix d(ctx, lambdaTag(ext, degree + 1), lambdaTag(ext, degree));
  if (ell == 0) {
    AlgebraicMap d0 = buildD0(ext, degree);
    return OperatorMatrix::fromRatMatrix(ctx, d.rowTag(), d.colTag(), d0.m);
  }
  // d_ℓ α = Σ_i Σ_{X_j ∈ V_ℓ} X_j(f_i) θ_j ∧ θ_i
  for (int col = 0; col < ext.dimOf(degree); ++col) {
    const auto& src = ext.basis(degree)[col];
    for (int j = 0; j < ext.dim(); ++j) {
      if (ext.algebra().layer(j) != ell) continue;
      if (src.mask >> j & 1) continue;
      Multivector w = wedge(ext, Multivector::basisElement(1, uint64_t(1) << j),
                            Multivector::basisElement(degree, src.mask));
      for (const auto& [mask, c] : w.comps()) {
        int row = ext.indexOf(degree + 1, mask);
        d.at(row, col) += EnvelopingOperator::generator(ctx, j).scaled(c);
      }
    }
  }
  return d;
}

OperatorMatrix buildFullD(const std::shared_ptr<const UeaContext>& ctx,
                          const ExteriorAlgebra& ext, int degree) {
  OperatorMatrix d = buildDLayer(ctx, ext, degree, 0);
  for (int ell = 1; ell <= ext.algebra().step(); ++ell)
    d = d + buildDLayer(ctx, ext, degree, ell);
  return d;
}

}  // namespace carnot
