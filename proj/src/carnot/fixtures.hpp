#ifndef CARNOT_FIXTURES_HPP
#define CARNOT_FIXTURES_HPP

#include <string>
#include <vector>

#include "carnot/rumin.hpp"

namespace carnot {

/// A transcribed set of d_c matrices (one per source degree) in some
/// orthonormal basis of E₀.
struct DcFixture {
  std::string group;
  std::vector<OperatorMatrix> dc;  // indexed by source degree
};

/// Loads a fixture file (see fixtures/cartan_dc.json for the schema).
DcFixture loadDcFixture(const std::shared_ptr<const UeaContext>& ctx, const std::string& path);
DcFixture loadDcFixtureFromText(const std::shared_ptr<const UeaContext>& ctx,
                                const std::string& jsonText);
/// The transcription shipped in fixtures/cartan_dc.json, embedded so the CLI
/// works without a checkout. A unit test pins file == embedded.
const std::string& embeddedCartanFixture();

/// Three-tier comparison of the computed complex against a fixture:
///   1. boundary degrees (0 and N-1): exact match up to diagonal ±1 signs;
///   2. the fixture matrices themselves satisfy d_c∘d_c = 0 under the engine;
///   3. inner degrees: an exact weight-preserving orthogonal change of basis
///      relating computed and fixture matrices, found degree by degree by
///      linear solves; falls back to basis-independent invariants (entry
///      homogeneity pattern and symbol Gram invariants at sampled covectors).
struct FixtureComparison {
  struct Tier {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Tier> tiers;
  bool allPass() const {
    for (const auto& t : tiers)
      if (!t.pass) return false;
    return true;
  }
};

FixtureComparison compareWithFixture(const RuminComplex& complex, const DcFixture& fixture);

/// Scalar value of an operator with every generator X_i replaced by ξ_i.
Scalar operatorSymbol(const EnvelopingOperator& op, const std::vector<Rational>& xi);

}  // namespace carnot

#endif
