#include "carnot/fixtures.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace carnot {

namespace {

using nlohmann::json;

OperatorMatrix matrixFromJson(const std::shared_ptr<const UeaContext>& ctx, const json& jm) {
  const int rows = jm.at("rows").get<int>();
  const int cols = jm.at("cols").get<int>();
  FormBasisTag rowTag{jm.at("source_degree").get<int>() + 1, std::vector<int>(rows, 0)};
  FormBasisTag colTag{jm.at("source_degree").get<int>(), std::vector<int>(cols, 0)};
  OperatorMatrix m(ctx, rowTag, colTag);
  const auto& entries = jm.at("entries");
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      EnvelopingOperator op(ctx);
      for (const auto& term : entries.at(i).at(j)) {
        Rational c = rationalFromString(term.at("c").get<std::string>());
        long rad = term.contains("sqrt") ? term.at("sqrt").get<long>() : 1;
        std::vector<int> word;
        for (int letter : term.at("word").get<std::vector<int>>()) word.push_back(letter - 1);
        op += EnvelopingOperator::fromWord(ctx, word, Scalar(c, rad));
      }
      m.at(i, j) = std::move(op);
    }
  return m;
}

}  // namespace

DcFixture loadDcFixtureFromText(const std::shared_ptr<const UeaContext>& ctx,
                                const std::string& jsonText) {
  json j = json::parse(jsonText);
  if (j.at("schemaVersion").get<int>() != 1)
    throw ValidationError("fixture-schema", "unsupported fixture schema version");
  DcFixture f;
  f.group = j.at("group").get<std::string>();
  int expected = 0;
  for (const auto& jm : j.at("matrices")) {
    if (jm.at("source_degree").get<int>() != expected++)
      throw ValidationError("fixture-schema", "fixture matrices out of order");
    f.dc.push_back(matrixFromJson(ctx, jm));
  }
  return f;
}

DcFixture loadDcFixture(const std::shared_ptr<const UeaContext>& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("fixture-file", "cannot open fixture file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return loadDcFixtureFromText(ctx, ss.str());
}

Scalar operatorSymbol(const EnvelopingOperator& op, const std::vector<Rational>& xi) {
  Scalar sum(0);
  for (const auto& [m, c] : op.terms()) {
    Rational v = 1;
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
      for (int e = 0; e < m[i]; ++e) v *= xi[i];
    sum += c * Scalar(v);
  }
  return sum;
}

namespace {

// F == diag(r) * C * diag(c) for some sign vectors r, c?
bool matchUpToSigns(const OperatorMatrix& f, const OperatorMatrix& c) {
  if (f.rows() != c.rows() || f.cols() != c.cols()) return false;
  const int n = f.rows() + f.cols();
  for (long bits = 0; bits < (1L << n); ++bits) {
    bool ok = true;
    for (int i = 0; ok && i < f.rows(); ++i)
      for (int j = 0; ok && j < f.cols(); ++j) {
        int sign = ((bits >> i & 1) ^ (bits >> (f.rows() + j) & 1)) ? -1 : 1;
        ok = (f.at(i, j) == (sign > 0 ? c.at(i, j) : -c.at(i, j)));
      }
    if (ok) return true;
  }
  return false;
}

struct Cascade {
  bool ok = false;
  std::string detail;
};

// Solve R_next * M == K for R_next with same-weight sparsity; returns empty
// optional when the linear system is inconsistent.
std::optional<RatMatrix> solveLeftTransform(const OperatorMatrix& M, const OperatorMatrix& K,
                                            const std::vector<int>& rowWeights) {
  const int n = K.rows();
  std::vector<std::pair<int, int>> unknowns;  // (i, k) with matching weights
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (rowWeights[i] == rowWeights[k]) unknowns.push_back({i, k});
  // collect equations: per (i, j) and PBW monomial
  std::vector<std::vector<Rational>> rowsA;
  std::vector<Rational> rhs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < M.cols(); ++j) {
      std::map<PbwMono, int> monos;
      for (int k = 0; k < n; ++k)
        for (const auto& [m, cc] : M.at(k, j).terms()) monos.emplace(m, 0);
      for (const auto& [m, cc] : K.at(i, j).terms()) monos.emplace(m, 0);
      for (const auto& [mono, unused] : monos) {
        std::vector<Rational> row(unknowns.size(), Rational(0));
        for (size_t u = 0; u < unknowns.size(); ++u) {
          if (unknowns[u].first != i) continue;
          auto it = M.at(unknowns[u].second, j).terms().find(mono);
          if (it != M.at(unknowns[u].second, j).terms().end()) row[u] = it->second.asRational();
        }
        auto it = K.at(i, j).terms().find(mono);
        rhs.push_back(it != K.at(i, j).terms().end() ? it->second.asRational() : Rational(0));
        rowsA.push_back(std::move(row));
      }
    }
  RatMatrix A(static_cast<int>(rowsA.size()), static_cast<int>(unknowns.size()));
  for (int r = 0; r < A.rows(); ++r)
    for (int c = 0; c < A.cols(); ++c) A.at(r, c) = rowsA[r][c];
  auto sol = A.solve(rhs);
  if (!sol) return std::nullopt;
  RatMatrix R(n, n);
  for (size_t u = 0; u < unknowns.size(); ++u) R.at(unknowns[u].first, unknowns[u].second) = (*sol)[u];
  return R;
}

Cascade tryCascade(const RuminComplex& cx, const std::vector<OperatorMatrix>& pulled, int sign) {
  const int N = cx.dim();
  std::vector<RatMatrix> R(N + 1);
  R[0] = RatMatrix(1, 1);
  R[0].at(0, 0) = sign;
  for (int h = 0; h < N; ++h) {
    OperatorMatrix K = pulled[h].rightMul(R[h]);
    auto next = solveLeftTransform(cx.dc(h), K, cx.basis().weights[h + 1]);
    if (!next) return {false, "no exact transform at degree " + std::to_string(h)};
    R[h + 1] = *next;
    if (!(cx.dc(h).leftMul(R[h + 1]) == K))
      return {false, "transform residual at degree " + std::to_string(h)};
  }
  for (int h = 0; h <= N; ++h) {
    RatMatrix G(cx.basis().dim(h), cx.basis().dim(h));
    for (int i = 0; i < G.rows(); ++i) G.at(i, i) = cx.basis().gram[h][i];
    if (!((R[h].transpose() * G * R[h]) == G))
      return {false, "transform not orthogonal at degree " + std::to_string(h)};
  }
  return {true, ""};
}

std::vector<std::vector<Rational>> symbolSamples(int n) {
  std::vector<std::vector<Rational>> samples;
  std::vector<long> primes{2, 3, 5, 7, 11, 13, 17, 19};
  std::vector<Rational> a(n), b(n), c(n);
  for (int i = 0; i < n; ++i) {
    a[i] = 1;
    b[i] = primes[i % primes.size()];
    c[i] = Rational((i % 2 == 0) ? 1 : -2, i + 1);
  }
  samples.push_back(a);
  samples.push_back(b);
  samples.push_back(c);
  return samples;
}

// trace(G), trace(G²), det(G) of the symbol Gram G = M(ξ)M(ξ)ᵀ
std::vector<Scalar> symbolInvariants(const OperatorMatrix& m, const std::vector<Rational>& xi) {
  const int n = m.rows();
  std::vector<std::vector<Scalar>> sym(n, std::vector<Scalar>(m.cols(), Scalar(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m.cols(); ++j) sym[i][j] = operatorSymbol(m.at(i, j), xi);
  std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < m.cols(); ++j) g[i][k] += sym[i][j] * sym[k][j];
  Scalar tr(0), tr2(0);
  for (int i = 0; i < n; ++i) tr += g[i][i];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) tr2 += g[i][k] * g[k][i];
  // determinant by Laplace expansion (n <= 4 here)
  std::function<Scalar(std::vector<int>)> det = [&](std::vector<int> idx) -> Scalar {
    if (idx.empty()) return Scalar(1);
    Scalar sum(0);
    int row = idx[0];
    for (size_t c2 = 0; c2 < idx.size(); ++c2) {
      std::vector<int> rest(idx.begin() + 1, idx.end());
      std::vector<int> colsLeft;
      for (size_t t = 0; t < idx.size(); ++t)
        if (t != c2) colsLeft.push_back(idx[t]);
      // minor over rows rest x cols colsLeft
      // build recursively via submatrix determinant
      std::function<Scalar(const std::vector<int>&, const std::vector<int>&)> mdet =
          [&](const std::vector<int>& rr, const std::vector<int>& cc) -> Scalar {
        if (rr.empty()) return Scalar(1);
        Scalar acc(0);
        for (size_t t = 0; t < cc.size(); ++t) {
          std::vector<int> rr2(rr.begin() + 1, rr.end());
          std::vector<int> cc2;
          for (size_t q = 0; q < cc.size(); ++q)
            if (q != t) cc2.push_back(cc[q]);
          Scalar term = g[rr[0]][cc[t]] * mdet(rr2, cc2);
          if (t % 2 == 1) term = -term;
          acc += term;
        }
        return acc;
      };
      Scalar term = g[row][idx[c2]] * mdet(std::vector<int>(idx.begin() + 1, idx.end()), colsLeft);
      if (c2 % 2 == 1) term = -term;
      sum += term;
    }
    return sum;
  };
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return {tr, tr2, det(all)};
}

}  // namespace

FixtureComparison compareWithFixture(const RuminComplex& cx, const DcFixture& fixture) {
  FixtureComparison out;
  const int N = cx.dim();
  auto& ctx = cx.context();
  ctx->setDegreeCap(std::max(ctx->degreeCap(), 16));

  // tier 1: boundary degrees match exactly up to diagonal signs
  for (int h : {0, N - 1}) {
    FixtureComparison::Tier tier;
    tier.name = "tier1-exact-degree-" + std::to_string(h);
    if (h >= static_cast<int>(fixture.dc.size())) {
      tier.pass = false;
      tier.detail = "fixture missing degree";
    } else {
      tier.pass = matchUpToSigns(fixture.dc[h], cx.dcOrthonormal(h));
      if (!tier.pass) tier.detail = "no diagonal sign change matches";
    }
    out.tiers.push_back(tier);
  }

  // tier 2: the fixture is itself a complex under the PBW engine
  for (int h = 0; h + 1 < static_cast<int>(fixture.dc.size()); ++h) {
    FixtureComparison::Tier tier;
    tier.name = "tier2-fixture-dc-dc-degree-" + std::to_string(h);
    tier.pass = (fixture.dc[h + 1] * fixture.dc[h]).isZero();
    if (!tier.pass) tier.detail = "fixture composition is nonzero";
    out.tiers.push_back(tier);
  }

  // tier 3: exact orthogonal equivalence across all degrees, with fallback
  FixtureComparison::Tier tier3;
  tier3.name = "tier3-orthogonal-equivalence";
  bool pulledRational = true;
  std::vector<OperatorMatrix> pulled;
  for (int h = 0; h < N && h < static_cast<int>(fixture.dc.size()); ++h) {
    std::vector<Scalar> rows, cols;
    for (const auto& g : cx.basis().gram[h + 1]) rows.push_back(Scalar(1) / Scalar::sqrtOf(g));
    for (const auto& g : cx.basis().gram[h]) cols.push_back(Scalar::sqrtOf(g));
    OperatorMatrix p = fixture.dc[h].scaleRows(rows).scaleCols(cols);
    for (int i = 0; i < p.rows() && pulledRational; ++i)
      for (int j = 0; j < p.cols() && pulledRational; ++j)
        for (const auto& [m, c] : p.at(i, j).terms())
          if (!c.isRational()) pulledRational = false;
    pulled.push_back(std::move(p));
  }
  if (pulledRational) {
    Cascade plus = tryCascade(cx, pulled, 1);
    Cascade minus = plus.ok ? plus : tryCascade(cx, pulled, -1);
    tier3.pass = plus.ok || minus.ok;
    if (!tier3.pass) tier3.detail = plus.detail + "; " + minus.detail;
  } else {
    tier3.pass = false;
    tier3.detail = "fixture Gram pattern differs (radical pull-back)";
  }
  out.tiers.push_back(tier3);

  if (!tier3.pass) {
    // fallback: basis-independent invariants per inner degree
    for (int h = 0; h < N && h < static_cast<int>(fixture.dc.size()); ++h) {
      FixtureComparison::Tier tier;
      tier.name = "tier3-fallback-invariants-degree-" + std::to_string(h);
      const OperatorMatrix comp = cx.dcOrthonormal(h);
      const OperatorMatrix& fix = fixture.dc[h];
      bool ok = comp.rows() == fix.rows() && comp.cols() == fix.cols() &&
                comp.maxHomDegree() == fix.maxHomDegree();
      if (ok) {
        for (const auto& xi : symbolSamples(N)) {
          auto a = symbolInvariants(comp, xi);
          auto b = symbolInvariants(fix, xi);
          for (size_t t = 0; t < a.size(); ++t) ok = ok && (a[t] == b[t]);
        }
      }
      tier.pass = ok;
      if (!ok) tier.detail = "symbol invariants disagree";
      out.tiers.push_back(tier);
    }
  }
  return out;
}

const std::string& embeddedCartanFixture() {
  static const std::string text = R"FIX(
{
  "schemaVersion": 1,
  "group": "cartan",
  "matrices": [
    { "source_degree": 0, "rows": 2, "cols": 1, "entries": [
        [[{"c": "1", "word": [1]}]],
        [[{"c": "1", "word": [2]}]] ] },
    { "source_degree": 1, "rows": 3, "cols": 2, "entries": [
        [ [{"c": "-1", "word": [1,1,2]}, {"c": "-1", "word": [1,3]}, {"c": "-1", "word": [4]}],
          [{"c": "1", "word": [1,1,1]}] ],
        [ [{"c": "-1", "sqrt": 2, "word": [1,2,2]}, {"c": "-1", "sqrt": 2, "word": [5]}],
          [{"c": "1", "sqrt": 2, "word": [2,1,1]}, {"c": "-1", "sqrt": 2, "word": [4]}] ],
        [ [{"c": "-1", "word": [2,2,2]}],
          [{"c": "1", "word": [2,2,1]}, {"c": "-1", "word": [2,3]}, {"c": "-1", "word": [5]}] ] ] },
    { "source_degree": 2, "rows": 3, "cols": 3, "entries": [
        [ [{"c": "-1", "word": [1,2]}, {"c": "-1", "word": [3]}],
          [{"c": "1/2", "sqrt": 2, "word": [1,1]}],
          [] ],
        [ [{"c": "-1/2", "sqrt": 2, "word": [2,2]}],
          [{"c": "-3/2", "word": [3]}],
          [{"c": "1/2", "sqrt": 2, "word": [1,1]}] ],
        [ [],
          [{"c": "-1/2", "sqrt": 2, "word": [2,2]}],
          [{"c": "1", "word": [2,1]}, {"c": "-1", "word": [3]}] ] ] },
    { "source_degree": 3, "rows": 2, "cols": 3, "entries": [
        [ [{"c": "1", "word": [1,2,2]}, {"c": "1", "word": [3,2]}, {"c": "-1", "word": [5]}],
          [{"c": "-1", "sqrt": 2, "word": [1,1,2]}, {"c": "1", "sqrt": 2, "word": [4]}],
          [{"c": "1", "word": [1,1,1]}] ],
        [ [{"c": "1", "word": [2,2,2]}],
          [{"c": "-1", "sqrt": 2, "word": [2,2,1]}, {"c": "-1", "sqrt": 2, "word": [5]}],
          [{"c": "1", "word": [2,1,1]}, {"c": "-1", "word": [3,1]}, {"c": "1", "word": [4]}] ] ] },
    { "source_degree": 4, "rows": 1, "cols": 2, "entries": [
        [ [{"c": "-1", "word": [2]}],
          [{"c": "1", "word": [1]}] ] ] }
  ]
}
)FIX";
  return text;
}

}  // namespace carnot
