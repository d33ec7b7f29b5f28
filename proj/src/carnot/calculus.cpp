#include "carnot/calculus.hpp"

#include <algorithm>
#include <random>

namespace carnot {

bool PolyCoefOperator::isZero() const {
  for (const auto& t : terms)
    if (!t.coef.isZero()) return false;
  return true;
}

int PolyCoefOperator::maxOrder() const {
  int m = 0;
  for (const auto& t : terms)
    if (!t.coef.isZero()) m = std::max(m, static_cast<int>(t.word.size()));
  return m;
}

Polynomial PolyCoefOperator::apply(const GroupModel& g, const Polynomial& f) const {
  Polynomial out(f.nvars());
  for (const auto& t : terms) {
    if (t.coef.isZero()) continue;
    out += t.coef * g.applyWord(t.word, f);
  }
  return out;
}

bool LeibnizDecomposition::groupIsZero(int j) const {
  for (const auto& row : groups[j])
    for (const auto& op : row)
      if (!op.isZero()) return false;
  return true;
}

int LeibnizDecomposition::groupOrder(int j) const {
  int m = 0;
  for (const auto& row : groups[j])
    for (const auto& op : row) m = std::max(m, op.maxOrder());
  return m;
}

std::vector<Polynomial> LeibnizDecomposition::applyGroup(int j, const GroupModel& g,
                                                         const std::vector<Polynomial>& u) const {
  std::vector<Polynomial> out(groups[j].size(), Polynomial(g.dim()));
  for (size_t i = 0; i < groups[j].size(); ++i)
    for (size_t k = 0; k < groups[j][i].size(); ++k) out[i] += groups[j][i][k].apply(g, u[k]);
  return out;
}

LeibnizDecomposition leibnizCommutator(const OperatorMatrix& P, const Polynomial& zeta,
                                       const GroupModel& g) {
  // horizontal order of the matrix: after horizontalization, word length
  // equals the homogeneous degree
  const int m = P.maxHomDegree();
  LeibnizDecomposition dec;
  dec.order = m;
  dec.groups.assign(std::max(0, m), std::vector<std::vector<PolyCoefOperator>>(
                                        P.rows(), std::vector<PolyCoefOperator>(P.cols())));
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j) {
      WordSum words = horizontalWords(P.at(i, j));
      for (const auto& [c, word] : words.terms) {
        const int len = static_cast<int>(word.size());
        // multi-Leibniz: every nonempty subset S of letter positions
        // differentiates ζ; the complement acts as the remaining operator
        for (unsigned long s = 1; s < (1UL << len); ++s) {
          int bits = __builtin_popcountl(s);
          std::vector<int> sel, rest;
          for (int t = 0; t < len; ++t)
            if (s >> t & 1)
              sel.push_back(word[t]);
            else
              rest.push_back(word[t]);
          Polynomial zd = g.applyWord(sel, zeta);
          if (zd.isZero()) continue;
          zd *= c.asRational();
          dec.groups[bits - 1][i][j].terms.push_back({std::move(zd), std::move(rest)});
        }
      }
    }
  return dec;
}

LeibnizDecomposition leibnizCommutator(const EnvelopingOperator& P, const Polynomial& zeta,
                                       const GroupModel& g) {
  FormBasisTag tag{0, {0}};
  OperatorMatrix m(P.context(), tag, tag);
  m.at(0, 0) = P;
  return leibnizCommutator(m, zeta, g);
}

namespace {

std::vector<Polynomial> randomVector(int n, int nvars, int deg, std::mt19937_64& rng) {
  std::vector<Polynomial> v;
  for (int i = 0; i < n; ++i)
    v.push_back(randomPolynomial(nvars, deg, rng()));
  return v;
}

// exactness of one decomposition: Σ_j group_j(u) == P(ζu) - ζP(u)
bool decompositionExact(const OperatorMatrix& P, const LeibnizDecomposition& dec,
                        const Polynomial& zeta, const GroupModel& g,
                        const std::vector<Polynomial>& u) {
  std::vector<Polynomial> lhs(P.rows(), Polynomial(g.dim()));
  for (int j = 0; j < dec.groupCount(); ++j) {
    auto part = dec.applyGroup(j, g, u);
    for (int i = 0; i < P.rows(); ++i) lhs[i] += part[i];
  }
  for (int i = 0; i < P.rows(); ++i) {
    Polynomial rhs(g.dim());
    for (int k = 0; k < P.cols(); ++k) {
      rhs += g.applyOperator(P.at(i, k), zeta * u[k]);
      rhs -= zeta * g.applyOperator(P.at(i, k), u[k]);
    }
    if (!(lhs[i] == rhs)) return false;
  }
  return true;
}

// all horizontal derivatives of ζ of the given order vanish?
bool horizontalDerivativesVanish(const GroupModel& g, const Polynomial& zeta, int order) {
  const int m1 = g.algebra().generators();
  std::vector<Polynomial> level{zeta};
  for (int o = 0; o < order; ++o) {
    std::vector<Polynomial> next;
    for (const auto& p : level)
      for (int i = 0; i < m1; ++i) next.push_back(g.applyField(i, p));
    level = std::move(next);
  }
  for (const auto& p : level)
    if (!p.isZero()) return false;
  return true;
}

}  // namespace

LeibnizReport checkLeibnizStructure(const RuminComplex& cx, const GroupModel& g,
                                    unsigned long seed) {
  LeibnizReport report;
  std::mt19937_64 rng(seed);
  const int N = cx.dim();
  auto push = [&](const std::string& name, bool pass, const std::string& detail = "") {
    report.items.push_back({name, pass, pass ? "" : detail});
  };

  struct Case {
    std::string name;
    OperatorMatrix op;
  };
  std::vector<Case> cases;
  for (int h = 0; h < N; ++h)
    if (!cx.dc(h).isZero()) cases.push_back({"dc[h=" + std::to_string(h) + "]", cx.dc(h)});
  for (int h = 1; h <= N; ++h)
    if (!cx.deltaC(h).isZero())
      cases.push_back({"deltac[h=" + std::to_string(h) + "]", cx.deltaC(h)});
  for (int h = 1; h <= N; ++h) {
    if (cx.dc(h - 1).isZero()) continue;
    cases.push_back({"dcdeltac[h=" + std::to_string(h) + "]", cx.dc(h - 1) * cx.deltaC(h)});
  }

  for (const auto& c : cases) {
    const int m = c.op.maxHomDegree();
    Polynomial zeta = randomPolynomial(N, 4, rng());
    LeibnizDecomposition dec = leibnizCommutator(c.op, zeta, g);

    // exactness on a random test vector
    auto u = randomVector(c.op.cols(), N, 3, rng);
    push(c.name + "-exact", decompositionExact(c.op, dec, zeta, g, u));

    // order drop: group j has order <= m-1-j
    bool orders = true;
    for (int j = 0; j < dec.groupCount(); ++j)
      if (!dec.groupIsZero(j) && dec.groupOrder(j) > m - 1 - j) orders = false;
    push(c.name + "-order-drop", orders, "group order exceeds m-1-j");

    // annihilation probes: if every horizontal derivative of ζ of order j+1
    // vanishes, group j must vanish identically
    bool annihilation = true;
    std::vector<Polynomial> probes;
    probes.push_back(Polynomial::constant(N, Rational(3)));          // kills order >= 1
    probes.push_back(Polynomial::variable(N, 0));                    // kills order >= 2
    if (N > 1) probes.push_back(Polynomial::variable(N, 0) + Polynomial::variable(N, 1));
    for (const auto& probe : probes) {
      LeibnizDecomposition pd = leibnizCommutator(c.op, probe, g);
      for (int j = 0; j < pd.groupCount(); ++j) {
        if (!horizontalDerivativesVanish(g, probe, j + 1)) continue;
        if (!pd.groupIsZero(j)) annihilation = false;
      }
    }
    push(c.name + "-annihilation", annihilation, "a group with vanishing derivatives survived");
  }
  return report;
}

ExponentTable ExponentTable::fromComplex(const RuminComplex& cx) {
  ExponentTable t;
  const int N = cx.dim();
  t.Q = cx.algebra().homogeneousDimension();
  for (int h = 1; h <= N; ++h) t.s.push_back(cx.dcOrder(h - 1));
  for (int h = 1; h < N; ++h) t.r.push_back(cx.dcOrder(h));
  t.Mh = cx.laplacianOrders();
  return t;
}

Rational ExponentTable::poincareExponent(int h, const Rational& p) const {
  if (h < 1 || h > static_cast<int>(s.size()))
    throw ValidationError("exponent-range", "degree out of range");
  const Rational sh = sOf(h);
  const Rational q(Q);
  if (p == 1) return q / (q - sh);
  if (p > 1 && p < q / sh) return p * q / (q - sh * p);
  throw ValidationError("exponent-range",
                        "p must satisfy 1 <= p < Q/s_h for the Poincare exponent");
}

Polynomial randomPolynomial(int nvars, int maxDegree, unsigned long seed, int terms) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> degDist(0, maxDegree);
  std::uniform_int_distribution<int> varDist(0, nvars - 1);
  std::uniform_int_distribution<long> numDist(-3, 3);
  std::uniform_int_distribution<long> denDist(1, 2);
  Polynomial p(nvars);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> mono(nvars, 0);
    int d = degDist(rng);
    for (int k = 0; k < d; ++k) mono[varDist(rng)] += 1;
    long num = numDist(rng);
    if (num == 0) num = 1;
    p.addTerm(mono, makeRational(num, denDist(rng)));
  }
  return p;
}

}  // namespace carnot
