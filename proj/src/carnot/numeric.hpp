#ifndef CARNOT_NUMERIC_HPP
#define CARNOT_NUMERIC_HPP

#include <string>
#include <vector>

#include "carnot/group_model.hpp"
#include "carnot/rumin.hpp"

namespace carnot {

/// Axis-aligned support box with rational bounds.
struct Box {
  std::vector<Rational> lo, hi;
  static Box cube(int n, const Rational& a, const Rational& b);
  bool contains(const std::vector<Rational>& x) const;
  bool containsDouble(const std::vector<double>& x) const;
};

/// Compactly supported smooth function: a sum of terms
///   p(x) · Π_i B_i(x_i)^{e_i},   B_i = 1 - t_i²,  t_i affine onto [-1,1],
/// clipped to zero outside the box. Closed under the left-invariant fields,
/// and exactly evaluable at rational points.
class SmoothFn {
 public:
  SmoothFn() = default;
  SmoothFn(Box box, int nvars);
  /// p(x) · Π_i B_i^{bumpExp} supported on the box.
  static SmoothFn bump(const Box& box, const Polynomial& p, int bumpExp);

  const Box& box() const { return box_; }
  bool isZero() const { return terms_.empty(); }
  int minBumpPower() const;

  SmoothFn& operator+=(const SmoothFn& o);
  SmoothFn scaled(const Rational& c) const;
  /// ∂_j (plain coordinate derivative, valid inside the box).
  SmoothFn derivative(int j) const;
  /// Left-invariant field application X_i.
  SmoothFn applyField(const GroupModel& g, int i) const;
  SmoothFn applyWord(const GroupModel& g, const std::vector<int>& word) const;
  SmoothFn applyOperator(const GroupModel& g, const EnvelopingOperator& op) const;

  Rational evalRational(const std::vector<Rational>& x) const;
  double evalDouble(const std::vector<double>& x) const;

  struct Term {
    Polynomial p;
    std::vector<int> bumpPow;
  };
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<Polynomial>& bumpPolys() const { return bumpPoly_; }

 private:
  Box box_;
  std::vector<Polynomial> bumpPoly_;  // B_i as a polynomial in x_i
  std::vector<Term> terms_;
};

/// Test vehicle: one smooth component per E₀^h basis element.
struct SampleForm {
  int degree = 0;
  std::vector<SmoothFn> comps;
};

SampleForm randomSampleForm(const RuminComplex& cx, int degree, const Box& box, int bumpExp,
                            int polyDegree, unsigned long seed);

/// Applies an operator matrix componentwise (rational coefficients).
SampleForm applyMatrixNumeric(const GroupModel& g, const OperatorMatrix& m, const SampleForm& a);

std::vector<Rational> evalComponents(const SampleForm& a, const std::vector<Rational>& x);
std::vector<double> evalComponentsDouble(const SampleForm& a, const std::vector<double>& x);

enum class QuadratureRule { Midpoint, GaussLegendre };

struct QuadratureGrid {
  Box box;
  int pointsPerAxis = 16;
  QuadratureRule rule = QuadratureRule::GaussLegendre;
  unsigned long mcSamples = 0;  // > 0 switches pairing to Monte Carlo
  unsigned long mcSeed = 1;
};

/// L² pairing Σ_i g_i ∫ a_i b_i over the intersection of the supports. The
/// tensor rule is evaluated in factorized per-axis form with a fixed
/// summation order, so results are bitwise-reproducible.
double pairing(const SampleForm& a, const SampleForm& b, const std::vector<Rational>& gram,
               const QuadratureGrid& grid);

struct MonteCarloEstimate {
  double value = 0;
  double standardError = 0;
};
MonteCarloEstimate pairingMonteCarlo(const SampleForm& a, const SampleForm& b,
                                     const std::vector<Rational>& gram,
                                     const QuadratureGrid& grid);

struct AdjointnessResult {
  int trials = 0;
  double maxRelError = 0;
};

/// max over trials of |<d_c α, β> - <α, δ_c β>| / (1 + |<d_c α, β>|),
/// α of degree h-1 and β of degree h, randomly generated.
/// Requires bumpExp > order(d_c) so the integrands vanish at the boundary.
AdjointnessResult adjointnessCheck(const RuminComplex& cx, const GroupModel& g, int h, int trials,
                                   const QuadratureGrid& grid, int bumpExp, unsigned long seed,
                                   bool flipSign = false);

/// max |component| of d_c(d_c α) over random interior points (double mode).
double dcSquaredPointwiseResidual(const RuminComplex& cx, const GroupModel& g, int h, int points,
                                  unsigned long seed);

}  // namespace carnot

#endif
