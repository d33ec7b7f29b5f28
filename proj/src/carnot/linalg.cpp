#include "carnot/linalg.hpp"

#include <cassert>

namespace carnot {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  assert(cols_ == o.rows_);
  RatMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  RatMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  RatMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

RatMatrix RatMatrix::scaled(const Rational& c) const {
  RatMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
  return r;
}

bool RatMatrix::isZero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

std::vector<int> RatMatrix::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int p = -1;
    for (int i = row; i < rows_; ++i)
      if (at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
    Rational inv = Rational(1) / at(row, col);
    for (int j = col; j < cols_; ++j) at(row, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == row || at(i, col) == 0) continue;
      Rational f = at(i, col);
      for (int j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int RatMatrix::rank() const {
  RatMatrix copy = *this;
  return static_cast<int>(copy.rref().size());
}

std::vector<std::vector<Rational>> RatMatrix::nullspace() const {
  RatMatrix r = *this;
  std::vector<int> pivots = r.rref();
  std::vector<bool> isPivot(cols_, false);
  for (int p : pivots) isPivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (isPivot[free]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[free] = 1;
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r.at(int(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RatMatrix RatMatrix::pseudoInverse() const {
  // Rank factorization A = C F from the RREF: C = pivot columns of A,
  // F = nonzero rows of rref(A). Then A+ = F^T (F F^T)^-1 (C^T C)^-1 C^T.
  RatMatrix r = *this;
  std::vector<int> pivots = r.rref();
  const int rk = static_cast<int>(pivots.size());
  if (rk == 0) return RatMatrix(cols_, rows_);
  RatMatrix C(rows_, rk), F(rk, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < rk; ++k) C.at(i, k) = at(i, pivots[k]);
  for (int k = 0; k < rk; ++k)
    for (int j = 0; j < cols_; ++j) F.at(k, j) = r.at(k, j);
  auto invertSquare = [](RatMatrix m) {
    const int n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
      aug.at(i, n + i) = 1;
    }
    aug.rref();
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
  };
  RatMatrix Ft = F.transpose(), Ct = C.transpose();
  RatMatrix mid = invertSquare(F * Ft) * invertSquare(Ct * C);
  return Ft * mid * Ct;
}

std::optional<std::vector<Rational>> RatMatrix::solve(const std::vector<Rational>& b) const {
  assert(static_cast<int>(b.size()) == rows_);
  RatMatrix aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  std::vector<int> pivots = aug.rref();
  for (int p : pivots)
    if (p == cols_) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
  std::vector<Rational> x(cols_, Rational(0));
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(int(k), cols_);
  return x;
}

void gramSchmidt(std::vector<std::vector<Rational>>& vecs, std::vector<Rational>& gram) {
  gram.clear();
  auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  for (size_t i = 0; i < vecs.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      Rational c = dot(vecs[i], vecs[j]) / gram[j];
      if (c == 0) continue;
      for (size_t k = 0; k < vecs[i].size(); ++k) vecs[i][k] -= c * vecs[j][k];
    }
    gram.push_back(dot(vecs[i], vecs[i]));
  }
}

}  // namespace carnot
