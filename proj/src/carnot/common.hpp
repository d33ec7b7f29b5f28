#ifndef CARNOT_COMMON_HPP
#define CARNOT_COMMON_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace carnot {

/// Exact rational scalar used everywhere below the presentation layer.
using Rational = mpq_class;

/// Input data failed a structural invariant (bad algebra file, bad config).
struct ValidationError : std::runtime_error {
  std::string invariant;  // short name, e.g. "jacobi"
  ValidationError(std::string inv, const std::string& msg)
      : std::runtime_error(msg), invariant(std::move(inv)) {}
};

/// An internal construction postcondition failed (e.g. a projector contract).
struct ContractError : std::runtime_error {
  std::string identity;  // name of the failing identity
  ContractError(std::string id, const std::string& msg)
      : std::runtime_error(msg), identity(std::move(id)) {}
};

/// Scalar arithmetic outside the supported tower (mixed radicands etc.).
struct ScalarError : std::runtime_error {
  explicit ScalarError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A composition exceeded the configured homogeneous-degree cap.
struct DegreeCapError : std::runtime_error {
  explicit DegreeCapError(const std::string& msg) : std::runtime_error(msg) {}
};

inline Rational rationalFromString(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw ValidationError("rational-format", "cannot parse rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rationalToString(const Rational& r) { return r.get_str(); }

inline Rational makeRational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace carnot

#endif
