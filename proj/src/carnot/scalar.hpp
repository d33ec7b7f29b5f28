#ifndef CARNOT_SCALAR_HPP
#define CARNOT_SCALAR_HPP

#include <string>

#include "carnot/common.hpp"

namespace carnot {

/// Exact scalar of the form q·√r with q rational and r a positive squarefree
/// integer. r == 1 is the plain rational case, which is closed under all
/// arithmetic. Radical values arise only at the presentation boundary (Gram
/// rescaling of Rumin bases, transcribed matrices); adding two radical scalars
/// with different radicands is a reported error, not a silent widening.
class Scalar {
 public:
  Scalar() : q_(0), rad_(1) {}
  Scalar(const Rational& q) : q_(q), rad_(1) {}  // NOLINT: implicit by design
  Scalar(long n) : q_(n), rad_(1) {}             // NOLINT
  Scalar(const Rational& q, long radicand);

  static Scalar sqrtOf(const Rational& r);  // √r as a Scalar

  const Rational& rational() const { return q_; }
  long radicand() const { return rad_; }
  bool isZero() const { return q_ == 0; }
  bool isRational() const { return rad_ == 1; }

  /// Exact rational value; throws if a radical part is present.
  const Rational& asRational() const;

  Scalar operator-() const { return Scalar(-q_, rad_, NoNormalize{}); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.q_ == b.q_ && a.rad_ == b.rad_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  double toDouble() const;
  std::string toString() const;  // "3/2" or "3/2*sqrt(2)"
  std::string toLatex() const;   // "\frac{3}{2}\sqrt{2}" style

 private:
  struct NoNormalize {};
  Scalar(Rational q, long rad, NoNormalize) : q_(std::move(q)), rad_(rad) {}
  void normalize();

  Rational q_;
  long rad_;  // positive squarefree; 1 when value is rational
};

}  // namespace carnot

#endif
