#ifndef CARNOT_CALCULUS_HPP
#define CARNOT_CALCULUS_HPP

#include <string>
#include <vector>

#include "carnot/group_model.hpp"
#include "carnot/rumin.hpp"

namespace carnot {

/// Operator with polynomial coefficients: a sum of terms
/// (coefficient polynomial in x) × (word in horizontal letters).
struct PolyCoefOperator {
  struct Term {
    Polynomial coef;
    std::vector<int> word;
  };
  std::vector<Term> terms;

  bool isZero() const;
  int maxOrder() const;
  Polynomial apply(const GroupModel& g, const Polynomial& f) const;
};

/// Commutator decomposition [P, ζ] = Σ_j P_j(X^{j+1}ζ): group j carries
/// coefficients built from the (j+1)-th horizontal derivatives of ζ and has
/// operator order ≤ m-1-j. Matrix-valued: one PolyCoefOperator per entry.
struct LeibnizDecomposition {
  int order = 0;  // m, the horizontal order of P
  std::vector<std::vector<std::vector<PolyCoefOperator>>> groups;  // [j][row][col]

  int groupCount() const { return static_cast<int>(groups.size()); }
  bool groupIsZero(int j) const;
  int groupOrder(int j) const;
  /// Applies group j to a component vector of polynomials.
  std::vector<Polynomial> applyGroup(int j, const GroupModel& g,
                                     const std::vector<Polynomial>& u) const;
};

/// Decomposes [P, ζ] by multi-Leibniz expansion over the horizontalized
/// words of P. ζ must be a polynomial; P must have rational coefficients.
LeibnizDecomposition leibnizCommutator(const OperatorMatrix& P, const Polynomial& zeta,
                                       const GroupModel& g);
LeibnizDecomposition leibnizCommutator(const EnvelopingOperator& P, const Polynomial& zeta,
                                       const GroupModel& g);

/// Structural report for the Leibniz suite: decomposition exactness on random
/// probes, the order drop, and annihilation probes for the derivative
/// dependence of each group.
struct LeibnizReport {
  struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Item> items;
  bool allPass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

LeibnizReport checkLeibnizStructure(const RuminComplex& cx, const GroupModel& g,
                                    unsigned long seed);

/// The exponent bookkeeping of the complex: s_h (order of d_c into degree h),
/// r_h (order of δ_c from degree h+1... i.e. of d_c out of degree h), the
/// Laplacian orders M_h, and the Sobolev exponent q = pQ/(Q - s_h p).
struct ExponentTable {
  long Q = 0;
  std::vector<int> s;   // s[h] for h = 1..N
  std::vector<int> r;   // r[h] for h = 1..N-1
  std::vector<int> Mh;  // h = 0..N

  static ExponentTable fromComplex(const RuminComplex& cx);

  int sOf(int h) const { return s[h - 1]; }
  int rOf(int h) const { return r[h - 1]; }

  /// q with 1/q = 1/p - s_h/Q; p = 1 gives the endpoint Q/(Q - s_h);
  /// for p > 1 requires p < Q/s_h.
  Rational poincareExponent(int h, const Rational& p) const;
};

/// Random polynomial with small rational coefficients (seeded, reproducible).
Polynomial randomPolynomial(int nvars, int maxDegree, unsigned long seed, int terms = 6);

}  // namespace carnot

#endif
