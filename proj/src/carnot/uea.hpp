#ifndef CARNOT_UEA_HPP
#define CARNOT_UEA_HPP

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "carnot/lie_algebra.hpp"
#include "carnot/scalar.hpp"

namespace carnot {

/// PBW monomial X_1^{j_1}···X_N^{j_N} stored as its exponent vector.
using PbwMono = std::vector<int>;

/// Shared rewriting context for one algebra: structure constants plus the
/// memo table for generator pushes X_i · X^K -> normal form. The memo is
/// safe for concurrent use (entrywise matrix composition runs parallel).
class UeaContext {
 public:
  explicit UeaContext(StratifiedLieAlgebra alg, int degreeCap = 16);

  const StratifiedLieAlgebra& algebra() const { return alg_; }
  int dim() const { return alg_.dim(); }

  int degreeCap() const { return degreeCap_.load(std::memory_order_relaxed); }
  /// Const-callable: the cap is a guard against runaway compositions, not
  /// part of the algebraic state (identity suites raise it temporarily).
  void setDegreeCap(int cap) const { degreeCap_.store(cap, std::memory_order_relaxed); }

  /// Homogeneous degree d(J) = sum_i layer(i)·j_i.
  int weightedDegree(const PbwMono& m) const;
  /// Operator order |J| = sum_i j_i.
  static int order(const PbwMono& m);

  using Combo = std::vector<std::pair<PbwMono, Rational>>;
  /// Normal form of X_i · X^K (memoized).
  Combo pushGenerator(int i, const PbwMono& k) const;
  /// Normal form of X^J · X^K.
  Combo mulMonomials(const PbwMono& j, const PbwMono& k) const;
  /// Normal form of a letter word X_{w1}···X_{wm}.
  Combo wordToNormal(const std::vector<int>& word) const;

 private:
  StratifiedLieAlgebra alg_;
  mutable std::atomic<int> degreeCap_;
  mutable std::map<std::pair<int, PbwMono>, Combo> memo_;
  mutable std::shared_mutex mutex_;
};

/// A left-invariant differential operator in PBW normal form: a finite sum of
/// ordered monomials X^J with exact Scalar coefficients.
class EnvelopingOperator {
 public:
  EnvelopingOperator() = default;
  explicit EnvelopingOperator(std::shared_ptr<const UeaContext> ctx) : ctx_(std::move(ctx)) {}

  static EnvelopingOperator zero(std::shared_ptr<const UeaContext> ctx);
  static EnvelopingOperator one(std::shared_ptr<const UeaContext> ctx);
  static EnvelopingOperator generator(std::shared_ptr<const UeaContext> ctx, int i);
  /// pbw_normal_form: coeff · X_{w1}···X_{wm} rewritten into the PBW basis.
  static EnvelopingOperator fromWord(std::shared_ptr<const UeaContext> ctx,
                                     const std::vector<int>& word, const Scalar& coeff = Scalar(1));

  const std::shared_ptr<const UeaContext>& context() const { return ctx_; }
  const std::map<PbwMono, Scalar>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  void addTerm(const PbwMono& m, const Scalar& c);

  EnvelopingOperator operator-() const;
  EnvelopingOperator& operator+=(const EnvelopingOperator& o);
  EnvelopingOperator& operator-=(const EnvelopingOperator& o);
  friend EnvelopingOperator operator+(EnvelopingOperator a, const EnvelopingOperator& b) { return a += b; }
  friend EnvelopingOperator operator-(EnvelopingOperator a, const EnvelopingOperator& b) { return a -= b; }
  /// Composition P∘Q, PBW-normalized. Throws DegreeCapError past the cap.
  friend EnvelopingOperator operator*(const EnvelopingOperator& a, const EnvelopingOperator& b);
  EnvelopingOperator scaled(const Scalar& c) const;
  friend bool operator==(const EnvelopingOperator& a, const EnvelopingOperator& b) {
    return a.terms_ == b.terms_;
  }

  /// Formal adjoint: (X^J)* = (-1)^{|J|} · reversed word, normalized.
  EnvelopingOperator adjoint() const;

  /// Max |J| over stored monomials (0 for the zero operator).
  int maxOrder() const;
  /// Max d(J) over stored monomials (0 for the zero operator).
  int maxHomDegree() const;
  /// d(J) shared by all monomials, if the operator is homogeneous.
  std::optional<int> homogeneousDegree() const;

  std::string toString() const;

 private:
  std::shared_ptr<const UeaContext> ctx_;
  std::map<PbwMono, Scalar> terms_;
};

EnvelopingOperator commutator(const EnvelopingOperator& p, const EnvelopingOperator& q);

/// Sum of scalar-weighted generator words; the pre-normalization form used by
/// horizontalization and the Leibniz machinery.
struct WordSum {
  std::vector<std::pair<Scalar, std::vector<int>>> terms;
};

/// Letters of X^J in PBW order (nondecreasing indices).
std::vector<int> monomialLetters(const PbwMono& m);

/// Rewrites P with every non-horizontal generator replaced by its iterated
/// bracket in the horizontal letters; the result uses only layer-1 letters.
WordSum horizontalWords(const EnvelopingOperator& p);

/// PBW normal form of a word sum (round-trips horizontalWords).
EnvelopingOperator normalize(std::shared_ptr<const UeaContext> ctx, const WordSum& w);

}  // namespace carnot

#endif
