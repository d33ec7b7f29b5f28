#ifndef CARNOT_LINALG_HPP
#define CARNOT_LINALG_HPP

#include <optional>
#include <vector>

#include "carnot/common.hpp"

namespace carnot {

/// Dense matrix over the exact rationals. Sizes here are tiny (≤ a few dozen
/// rows), so plain Gaussian elimination is used throughout.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static RatMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix scaled(const Rational& c) const;
  bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool isZero() const;

  /// In-place reduced row echelon form; returns pivot column indices.
  std::vector<int> rref();

  int rank() const;

  /// Basis of the right null space, one column vector per basis element.
  std::vector<std::vector<Rational>> nullspace() const;

  /// Moore–Penrose pseudoinverse over Q via rank factorization. For the
  /// orthonormal coordinate bases used here this is exactly the algebraic
  /// partial inverse: zero on (Im A)^⊥, inverse of A on Im A.
  RatMatrix pseudoInverse() const;

  /// Solves A x = b exactly; nullopt when inconsistent. Free variables are 0.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

/// Gram–Schmidt without normalization: returns orthogonal vectors spanning the
/// same space, plus their squared norms (Gram diagonal). Exact over Q.
void gramSchmidt(std::vector<std::vector<Rational>>& vecs, std::vector<Rational>& gram);

}  // namespace carnot

#endif
