#ifndef CARNOT_POLYNOMIAL_HPP
#define CARNOT_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carnot/common.hpp"

namespace carnot {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Monomials are exponent vectors of a fixed arity; the map ordering makes all
/// iteration (printing, serialization, evaluation) deterministic.
class Polynomial {
 public:
  using Mono = std::vector<int>;

  Polynomial() : nvars_(0) {}
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int index, int power = 1);

  int nvars() const { return nvars_; }
  bool isZero() const { return terms_.empty(); }
  const std::map<Mono, Rational>& terms() const { return terms_; }

  /// Adds c·x^mono (merging and dropping zeros).
  void addTerm(const Mono& mono, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const Rational& c);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial derivative(int var) const;
  Rational eval(const std::vector<Rational>& x) const;
  double evalDouble(const std::vector<double>& x) const;

  /// Substitutes variable i by subs[i]; all subs share one arity.
  Polynomial compose(const std::vector<Polynomial>& subs) const;

  /// Maps this polynomial into a wider variable space; var i becomes shift+i.
  Polynomial embed(int newNvars, int shift) const;

  int totalDegree() const;
  /// Weighted degree with per-variable weights; nullopt for the zero polynomial.
  std::optional<int> weightedDegree(const std::vector<int>& w) const;
  /// True when every monomial has the same weighted degree d.
  bool isWeightedHomogeneous(const std::vector<int>& w, int d) const;

  std::string toString(const std::vector<std::string>& varNames = {}) const;

 private:
  int nvars_;
  std::map<Mono, Rational> terms_;
};

}  // namespace carnot

#endif
