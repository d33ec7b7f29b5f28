#ifndef CARNOT_SERIALIZE_HPP
#define CARNOT_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "carnot/calculus.hpp"
#include "carnot/group_model.hpp"
#include "carnot/rumin.hpp"

namespace carnot {

using OrderedJson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// JSON with rationals as "num/den" strings; key order fixed so identical
/// inputs serialize byte-identically.
OrderedJson algebraToJson(const StratifiedLieAlgebra& alg);
StratifiedLieAlgebra algebraFromJson(const OrderedJson& j);
StratifiedLieAlgebra loadAlgebraFile(const std::string& path);

OrderedJson polynomialToJson(const Polynomial& p);
OrderedJson groupModelToJson(const GroupModel& g);

OrderedJson scalarToJson(const Scalar& s);
OrderedJson operatorToJson(const EnvelopingOperator& op);
OrderedJson operatorMatrixToJson(const OperatorMatrix& m);

OrderedJson ruminBasisToJson(const RuminComplex& cx);
OrderedJson exponentTableToJson(const ExponentTable& t);

std::string operatorToLatex(const EnvelopingOperator& op);
std::string operatorMatrixToLatex(const OperatorMatrix& m);
std::string algebraicMapToLatex(const AlgebraicMap& m, const ExteriorAlgebra& ext);
std::string formBasisToLatex(const RuminComplex& cx, int degree);

/// Parses "x1^2*x3 - 3/2*x2 + (x1+x2)^2" style polynomials over x1..xN.
Polynomial parsePolynomial(const std::string& text, int nvars);

/// Content hash used as the complex-cache key (FNV-1a of canonical JSON).
std::string algebraHash(const StratifiedLieAlgebra& alg, CoordConvention convention);

/// Writes text atomically (temp file in the same directory, then rename).
void atomicWriteFile(const std::string& path, const std::string& contents);

}  // namespace carnot

#endif
