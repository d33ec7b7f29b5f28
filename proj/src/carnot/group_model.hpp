#ifndef CARNOT_GROUP_MODEL_HPP
#define CARNOT_GROUP_MODEL_HPP

#include <memory>
#include <string>
#include <vector>

#include "carnot/linalg.hpp"
#include "carnot/polynomial.hpp"
#include "carnot/uea.hpp"

namespace carnot {

enum class CoordConvention {
  BchFirstKind,           // x <-> exp(x_1 X_1 + ... + x_N X_N)
  OrderedExpDescending,   // x <-> exp(x_N X_N) ··· exp(x_1 X_1)
};

std::string conventionName(CoordConvention c);
CoordConvention conventionFromName(const std::string& s);

/// Coordinate model of the Carnot group: exact polynomial group law, the
/// dilations, and the left-invariant vector fields in coordinates.
///
/// The group law is computed inside the degree-truncated enveloping algebra
/// (exp/log with polynomial coefficients), so it is exact for either
/// coordinate convention. Coordinates are x_1..x_N (variables 0..N-1); the
/// law is a vector of polynomials in (x, y) = variables 0..2N-1.
class GroupModel {
 public:
  GroupModel(std::shared_ptr<const UeaContext> ctx, CoordConvention convention);

  const std::shared_ptr<const UeaContext>& context() const { return ctx_; }
  const StratifiedLieAlgebra& algebra() const { return ctx_->algebra(); }
  CoordConvention convention() const { return convention_; }
  int dim() const { return algebra().dim(); }
  long homogeneousDimension() const { return algebra().homogeneousDimension(); }

  const std::vector<Polynomial>& groupLaw() const { return law_; }
  const std::vector<Polynomial>& inverseLaw() const { return inverse_; }
  /// Coefficient polynomials of the left-invariant fields: fields()[i][j] is
  /// the ∂_j coefficient of X_i (polynomials in x_1..x_N).
  const std::vector<std::vector<Polynomial>>& fields() const { return fields_; }

  std::vector<Rational> multiply(const std::vector<Rational>& x,
                                 const std::vector<Rational>& y) const;
  std::vector<Rational> inverse(const std::vector<Rational>& x) const;

  std::vector<Rational> dilate(const Rational& lambda, const std::vector<Rational>& x) const;
  std::vector<double> dilate(double lambda, const std::vector<double>& x) const;
  /// Anisotropic power norm (sum_i |x_i|^{2K/d_i})^{1/2K} with K = step!.
  double homogeneousNorm(const std::vector<double>& x) const;

  /// X_i f for a polynomial f in the coordinates.
  Polynomial applyField(int i, const Polynomial& f) const;
  /// X_{w_1}···X_{w_m} f for a letter word.
  Polynomial applyWord(const std::vector<int>& word, const Polynomial& f) const;
  /// P f; requires rational coefficients (the symbolic complex is rational).
  Polynomial applyOperator(const EnvelopingOperator& p, const Polynomial& f) const;

  /// Exact structural checks (unit law, associativity, dilations, field
  /// homogeneity, divergence, bracket realization). Throws ContractError.
  void verifyConstruction() const;

 private:
  void buildLaw();
  void buildInverse();
  void buildFields();

  std::shared_ptr<const UeaContext> ctx_;
  CoordConvention convention_;
  std::vector<Polynomial> law_;        // N polys in 2N vars
  std::vector<Polynomial> inverse_;    // N polys in N vars
  std::vector<std::vector<Polynomial>> fields_;
};

/// Left-regular representation of the algebra on the degree-truncated
/// enveloping algebra: a faithful strictly triangular matrix representation.
/// Returns one matrix per generator, acting on the PBW monomials of weighted
/// degree <= step (ordered by degree, then lexicographically).
struct RegularRepresentation {
  std::vector<PbwMono> basis;
  std::vector<RatMatrix> matrices;  // one per basis vector field X_i
};
RegularRepresentation regularRepresentation(const UeaContext& ctx);

/// exp of a nilpotent rational matrix (finite series, exact).
RatMatrix nilpotentMatrixExp(const RatMatrix& a);

}  // namespace carnot

#endif
