#ifndef CARNOT_LIE_ALGEBRA_HPP
#define CARNOT_LIE_ALGEBRA_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "carnot/common.hpp"

namespace carnot {

/// A stratified (Carnot) Lie algebra given by an adapted graded basis
/// X_1..X_N with layer numbers and exact structure constants. Basis indices
/// are 0-based internally; layers start at 1. The basis must be sorted by
/// layer, which every construction here guarantees and validation enforces.
class StratifiedLieAlgebra {
 public:
  using SparseVec = std::vector<std::pair<int, Rational>>;  // (index, coeff)

  StratifiedLieAlgebra() = default;
  StratifiedLieAlgebra(std::string name, std::vector<int> layers,
                       const std::vector<std::tuple<int, int, int, Rational>>& brackets);

  /// Free nilpotent algebra on m generators of the given step, in a Hall
  /// basis ordered by degree. Throws when the Witt dimension exceeds the cap.
  static StratifiedLieAlgebra freeNilpotent(int generators, int step, int basisCap = 64);

  /// Named presets: "abelian-<n>", "heisenberg-1", "engel", "cartan".
  static StratifiedLieAlgebra preset(const std::string& name);

  /// Dimension of the degree-n layer of the free Lie algebra on m generators.
  static long wittDimension(int m, int n);

  const std::string& name() const { return name_; }
  int dim() const { return N_; }
  int step() const { return step_; }
  int generators() const { return m1_; }
  int layer(int i) const { return layer_[i]; }
  const std::vector<int>& layers() const { return layer_; }
  /// Dilation exponent of coordinate i (equals its layer).
  const std::vector<int>& dilationExponents() const { return layer_; }
  int layerDim(int ell) const;
  long homogeneousDimension() const;

  /// [X_i, X_j] as a sparse combination of basis elements (any i, j).
  SparseVec bracket(int i, int j) const;
  /// Bilinear extension of the bracket to sparse vectors.
  SparseVec bracket(const SparseVec& a, const SparseVec& b) const;

  /// Expression of a non-horizontal basis element as a combination of
  /// brackets [X_i, X_w] with X_i horizontal and layer(w) = layer(k) - 1.
  struct BracketTerm {
    Rational coeff;
    int hi;     // horizontal index
    int inner;  // index of the lower-layer factor
  };
  const std::vector<BracketTerm>& horizontalBracketExpr(int k) const;

  /// Checks every structural invariant; throws ValidationError naming the
  /// first violated one ("grading", "jacobi", "stratification", ...).
  void validate() const;

  struct RawBracket {
    int i, j, k;
    Rational c;
  };
  const std::vector<RawBracket>& rawBrackets() const { return raw_; }

 private:
  void buildTables();
  void computeHorizontalExprs();

  std::string name_;
  int N_ = 0;
  int step_ = 0;
  int m1_ = 0;
  std::vector<int> layer_;
  std::vector<RawBracket> raw_;                    // stored with i < j
  std::vector<std::vector<SparseVec>> table_;      // table_[i][j] for i < j
  std::vector<std::vector<BracketTerm>> horizExpr_;
};

}  // namespace carnot

#endif
