#include "carnot/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace carnot {

namespace {

// Splits n = s^2 * f with f squarefree; returns {s, f}. Radicands stay tiny
// (products of Gram entries), so trial division is enough; bail out loudly if
// an input ever grows past what that can factor.
std::pair<long, long> extractSquare(long n) {
  if (n <= 0) throw ScalarError("radicand must be positive");
  if (n > 1000000000L) throw ScalarError("radicand too large to normalize");
  long s = 1, f = 1;
  for (long p = 2; p * p <= n; ++p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (long i = 0; i + 1 < e; i += 2) s *= p;
    if (e % 2 == 1) f *= p;
  }
  f *= n;  // leftover prime
  return {s, f};
}

}  // namespace

Scalar::Scalar(const Rational& q, long radicand) : q_(q), rad_(radicand) {
  normalize();
}

Scalar Scalar::sqrtOf(const Rational& r) {
  if (r <= 0) throw ScalarError("sqrt of non-positive rational");
  // √(a/b) = (1/b)·√(ab)
  mpz_class num = r.get_num(), den = r.get_den();
  mpz_class ab = num * den;
  if (!ab.fits_slong_p()) throw ScalarError("radicand too large to normalize");
  return Scalar(Rational(1) / Rational(den), ab.get_si());
}

void Scalar::normalize() {
  if (q_ == 0) {
    rad_ = 1;
    return;
  }
  auto [s, f] = extractSquare(rad_);
  q_ *= s;
  rad_ = f;
}

const Rational& Scalar::asRational() const {
  if (!isRational()) throw ScalarError("scalar has a radical part: " + toString());
  return q_;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.isZero()) return *this;
  if (isZero()) {
    *this = o;
    return *this;
  }
  if (rad_ != o.rad_)
    throw ScalarError("cannot add scalars with radicands " + std::to_string(rad_) +
                      " and " + std::to_string(o.rad_));
  q_ += o.q_;
  if (q_ == 0) rad_ = 1;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (isZero() || o.isZero()) {
    q_ = 0;
    rad_ = 1;
    return *this;
  }
  q_ *= o.q_;
  if (rad_ == o.rad_) {
    // √r·√r = r
    q_ *= rad_;
    rad_ = 1;
  } else {
    rad_ *= o.rad_;
    normalize();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.isZero()) throw ScalarError("division by zero scalar");
  // 1/(q√r) = (1/(q r))√r
  Scalar inv(Rational(1) / (o.q_ * o.rad_), o.rad_, NoNormalize{});
  return *this *= inv;
}

double Scalar::toDouble() const {
  return q_.get_d() * std::sqrt(static_cast<double>(rad_));
}

std::string Scalar::toString() const {
  if (rad_ == 1) return q_.get_str();
  if (q_ == 1) return "sqrt(" + std::to_string(rad_) + ")";
  if (q_ == -1) return "-sqrt(" + std::to_string(rad_) + ")";
  return q_.get_str() + "*sqrt(" + std::to_string(rad_) + ")";
}

std::string Scalar::toLatex() const {
  std::ostringstream os;
  Rational aq = abs(q_);
  if (q_ < 0) os << "-";
  bool unitCoef = (aq == 1) && rad_ != 1;
  if (!unitCoef) {
    if (aq.get_den() == 1)
      os << aq.get_num().get_str();
    else
      os << "\\frac{" << aq.get_num().get_str() << "}{" << aq.get_den().get_str() << "}";
  }
  if (rad_ != 1) os << "\\sqrt{" << rad_ << "}";
  return os.str();
}

}  // namespace carnot
