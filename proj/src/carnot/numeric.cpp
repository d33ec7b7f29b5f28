#include "carnot/numeric.hpp"

#include "carnot/calculus.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <random>

namespace carnot {

Box Box::cube(int n, const Rational& a, const Rational& b) {
  Box box;
  box.lo.assign(n, a);
  box.hi.assign(n, b);
  return box;
}

bool Box::contains(const std::vector<Rational>& x) const {
  for (size_t i = 0; i < lo.size(); ++i)
    if (x[i] <= lo[i] || x[i] >= hi[i]) return false;
  return true;
}

bool Box::containsDouble(const std::vector<double>& x) const {
  for (size_t i = 0; i < lo.size(); ++i)
    if (x[i] <= lo[i].get_d() || x[i] >= hi[i].get_d()) return false;
  return true;
}

SmoothFn::SmoothFn(Box box, int nvars) : box_(std::move(box)) {
  bumpPoly_.reserve(nvars);
  for (int i = 0; i < nvars; ++i) {
    // t = (2x - lo - hi)/(hi - lo); B = 1 - t²
    Polynomial t = Polynomial::variable(nvars, i);
    t *= Rational(2);
    t -= Polynomial::constant(nvars, box_.lo[i] + box_.hi[i]);
    t *= Rational(1) / (box_.hi[i] - box_.lo[i]);
    bumpPoly_.push_back(Polynomial::constant(nvars, Rational(1)) - t * t);
  }
}

SmoothFn SmoothFn::bump(const Box& box, const Polynomial& p, int bumpExp) {
  SmoothFn f(box, p.nvars());
  if (!p.isZero()) f.terms_.push_back({p, std::vector<int>(p.nvars(), bumpExp)});
  return f;
}

int SmoothFn::minBumpPower() const {
  int m = -1;
  for (const auto& t : terms_)
    for (int e : t.bumpPow) m = (m < 0) ? e : std::min(m, e);
  return m;
}

SmoothFn& SmoothFn::operator+=(const SmoothFn& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty() && bumpPoly_.empty()) {
    *this = o;
    return *this;
  }
  assert(box_.lo == o.box_.lo && box_.hi == o.box_.hi);
  // merge on equal bump powers
  for (const auto& t : o.terms_) {
    bool merged = false;
    for (auto& mine : terms_)
      if (mine.bumpPow == t.bumpPow) {
        mine.p += t.p;
        merged = true;
        break;
      }
    if (!merged) terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return t.p.isZero(); });
  return *this;
}

SmoothFn SmoothFn::scaled(const Rational& c) const {
  SmoothFn r = *this;
  if (c == 0) {
    r.terms_.clear();
    return r;
  }
  for (auto& t : r.terms_) t.p *= c;
  return r;
}

SmoothFn SmoothFn::derivative(int j) const {
  SmoothFn r(box_, static_cast<int>(bumpPoly_.size()));
  auto push = [&](Polynomial p, std::vector<int> pw) {
    if (p.isZero()) return;
    for (auto& mine : r.terms_)
      if (mine.bumpPow == pw) {
        mine.p += p;
        return;
      }
    r.terms_.push_back({std::move(p), std::move(pw)});
  };
  for (const auto& t : terms_) {
    push(t.p.derivative(j), t.bumpPow);
    if (t.bumpPow[j] > 0) {
      Polynomial q = t.p * bumpPoly_[j].derivative(j);
      q *= Rational(t.bumpPow[j]);
      std::vector<int> pw = t.bumpPow;
      pw[j] -= 1;
      push(std::move(q), std::move(pw));
    }
  }
  std::erase_if(r.terms_, [](const Term& t) { return t.p.isZero(); });
  return r;
}

SmoothFn SmoothFn::applyField(const GroupModel& g, int i) const {
  SmoothFn out(box_, static_cast<int>(bumpPoly_.size()));
  for (int j = 0; j < g.dim(); ++j) {
    const Polynomial& coef = g.fields()[i][j];
    if (coef.isZero()) continue;
    SmoothFn dj = derivative(j);
    for (auto& t : dj.terms_) t.p = t.p * coef;
    out += dj;
  }
  return out;
}

SmoothFn SmoothFn::applyWord(const GroupModel& g, const std::vector<int>& word) const {
  SmoothFn out = *this;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = out.applyField(g, *it);
  return out;
}

SmoothFn SmoothFn::applyOperator(const GroupModel& g, const EnvelopingOperator& op) const {
  SmoothFn out(box_, static_cast<int>(bumpPoly_.size()));
  for (const auto& [m, c] : op.terms()) {
    SmoothFn t = applyWord(g, monomialLetters(m));
    out += t.scaled(c.asRational());
  }
  return out;
}

Rational SmoothFn::evalRational(const std::vector<Rational>& x) const {
  if (!box_.contains(x)) return Rational(0);
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.p.eval(x);
    for (size_t i = 0; i < bumpPoly_.size(); ++i) {
      if (t.bumpPow[i] == 0) continue;
      Rational b = bumpPoly_[i].eval(x);
      for (int e = 0; e < t.bumpPow[i]; ++e) v *= b;
    }
    sum += v;
  }
  return sum;
}

double SmoothFn::evalDouble(const std::vector<double>& x) const {
  if (!box_.containsDouble(x)) return 0.0;
  double sum = 0;
  for (const auto& t : terms_) {
    double v = t.p.evalDouble(x);
    for (size_t i = 0; i < bumpPoly_.size(); ++i) {
      if (t.bumpPow[i] == 0) continue;
      double b = bumpPoly_[i].evalDouble(x);
      v *= std::pow(b, t.bumpPow[i]);
    }
    sum += v;
  }
  return sum;
}

SampleForm randomSampleForm(const RuminComplex& cx, int degree, const Box& box, int bumpExp,
                            int polyDegree, unsigned long seed) {
  SampleForm f;
  f.degree = degree;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cx.basis().dim(degree); ++i) {
    Polynomial p = randomPolynomial(cx.dim(), polyDegree, rng(), 4);
    f.comps.push_back(SmoothFn::bump(box, p, bumpExp));
  }
  return f;
}

SampleForm applyMatrixNumeric(const GroupModel& g, const OperatorMatrix& m, const SampleForm& a) {
  assert(m.cols() == static_cast<int>(a.comps.size()));
  SampleForm out;
  out.degree = m.rowTag().degree;
  for (int i = 0; i < m.rows(); ++i) {
    SmoothFn acc;
    for (int j = 0; j < m.cols(); ++j) {
      if (m.at(i, j).isZero()) continue;
      acc += a.comps[j].applyOperator(g, m.at(i, j));
    }
    if (acc.isZero() && m.cols() > 0) acc = a.comps[0].scaled(Rational(0));
    out.comps.push_back(std::move(acc));
  }
  return out;
}

std::vector<Rational> evalComponents(const SampleForm& a, const std::vector<Rational>& x) {
  std::vector<Rational> v;
  for (const auto& c : a.comps) v.push_back(c.evalRational(x));
  return v;
}

std::vector<double> evalComponentsDouble(const SampleForm& a, const std::vector<double>& x) {
  std::vector<double> v;
  for (const auto& c : a.comps) v.push_back(c.evalDouble(x));
  return v;
}

namespace {

// Gauss–Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gaussLegendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1);
    nodes[i] = x;
    weights[i] = 2.0 / ((1 - x * x) * dp * dp);
  }
}

void ruleOnInterval(QuadratureRule rule, int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  if (rule == QuadratureRule::Midpoint) {
    double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      nodes[i] = a + h * (i + 0.5);
      weights[i] = h;
    }
    return;
  }
  std::vector<double> xs, ws;
  gaussLegendre(n, xs, ws);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * xs[i];
    weights[i] = 0.5 * (b - a) * ws[i];
  }
}

std::optional<Box> intersectBoxes(const Box& a, const Box& b) {
  Box out;
  for (size_t i = 0; i < a.lo.size(); ++i) {
    Rational lo = std::max(a.lo[i], b.lo[i]);
    Rational hi = std::min(a.hi[i], b.hi[i]);
    if (lo >= hi) return std::nullopt;
    out.lo.push_back(lo);
    out.hi.push_back(hi);
  }
  return out;
}

// per-axis moment tables: I[axis][k + kMax*(e + eMax*f)] = Σ_q w_q x^k Ba^e Bb^f
struct MomentTable {
  int kMax = 0, eMax = 0;
  std::vector<std::vector<double>> table;  // per axis
  double momentOf(int axis, int k, int e, int f) const {
    return table[axis][k + kMax * (e + eMax * f)];
  }
};

MomentTable buildMoments(const SmoothFn& fa, const SmoothFn& fb, const Box& domain,
                         const QuadratureGrid& grid, int kMax, int eMax) {
  const int n = static_cast<int>(domain.lo.size());
  MomentTable mt;
  mt.kMax = kMax;
  mt.eMax = eMax;
  mt.table.assign(n, std::vector<double>(size_t(kMax) * eMax * eMax, 0.0));
  for (int axis = 0; axis < n; ++axis) {
    std::vector<double> nodes, weights;
    ruleOnInterval(grid.rule, grid.pointsPerAxis, domain.lo[axis].get_d(),
                   domain.hi[axis].get_d(), nodes, weights);
    // bump polynomials are univariate in this axis; evaluate on nodes
    std::vector<double> xa(nodes.size()), xb(nodes.size());
    for (size_t q = 0; q < nodes.size(); ++q) {
      std::vector<double> pt(n, 0.0);
      pt[axis] = nodes[q];
      xa[q] = fa.bumpPolys()[axis].evalDouble(pt);
      xb[q] = fb.bumpPolys()[axis].evalDouble(pt);
    }
    for (size_t q = 0; q < nodes.size(); ++q) {
      double xk = 1.0;
      for (int k = 0; k < kMax; ++k) {
        double ae = 1.0;
        for (int e = 0; e < eMax; ++e) {
          double bf = 1.0;
          for (int f = 0; f < eMax; ++f) {
            mt.table[axis][k + size_t(kMax) * (e + size_t(eMax) * f)] +=
                weights[q] * xk * ae * bf;
            bf *= xb[q];
          }
          ae *= xa[q];
        }
        xk *= nodes[q];
      }
    }
  }
  return mt;
}

double integrateProduct(const SmoothFn& fa, const SmoothFn& fb, const QuadratureGrid& grid) {
  if (fa.isZero() || fb.isZero()) return 0.0;
  auto domain = intersectBoxes(fa.box(), fb.box());
  if (!domain) return 0.0;
  // clamp to the grid box as well
  domain = intersectBoxes(*domain, grid.box);
  if (!domain) return 0.0;
  int kMax = 1, eMax = 1;
  for (const auto& ta : fa.terms()) {
    for (int e : ta.bumpPow) eMax = std::max(eMax, e + 1);
    kMax = std::max(kMax, ta.p.totalDegree() + 1);
  }
  int kMaxB = 1;
  for (const auto& tb : fb.terms()) {
    for (int e : tb.bumpPow) eMax = std::max(eMax, e + 1);
    kMaxB = std::max(kMaxB, tb.p.totalDegree() + 1);
  }
  kMax = kMax + kMaxB;  // product degree bound per axis
  MomentTable mt = buildMoments(fa, fb, *domain, grid, kMax, eMax);
  double total = 0;
  const int n = static_cast<int>(domain->lo.size());
  for (const auto& ta : fa.terms())
    for (const auto& tb : fb.terms()) {
      Polynomial prod = ta.p * tb.p;
      for (const auto& [mono, coef] : prod.terms()) {
        double term = coef.get_d();
        for (int axis = 0; axis < n; ++axis)
          term *= mt.momentOf(axis, mono[axis], ta.bumpPow[axis], tb.bumpPow[axis]);
        total += term;
      }
    }
  return total;
}

}  // namespace

double pairing(const SampleForm& a, const SampleForm& b, const std::vector<Rational>& gram,
               const QuadratureGrid& grid) {
  if (a.degree != b.degree)
    throw ValidationError("pairing-degree", "pairing of forms of different degree");
  if (grid.mcSamples > 0) return pairingMonteCarlo(a, b, gram, grid).value;
  double sum = 0;
  for (size_t i = 0; i < a.comps.size(); ++i)
    sum += gram[i].get_d() * integrateProduct(a.comps[i], b.comps[i], grid);
  return sum;
}

MonteCarloEstimate pairingMonteCarlo(const SampleForm& a, const SampleForm& b,
                                     const std::vector<Rational>& gram,
                                     const QuadratureGrid& grid) {
  const int n = static_cast<int>(grid.box.lo.size());
  double volume = 1;
  for (int i = 0; i < n; ++i) volume *= Rational(grid.box.hi[i] - grid.box.lo[i]).get_d();
  // fixed chunking: deterministic for a given seed regardless of threads
  const int chunks = 64;
  const unsigned long per = grid.mcSamples / chunks + 1;
  std::vector<double> sums(chunks, 0.0), sqs(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < chunks; ++c) {
    std::mt19937_64 rng(grid.mcSeed + 0x9e3779b97f4a7c15ULL * (c + 1));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> x(n);
    double s = 0, s2 = 0;
    for (unsigned long t = 0; t < per; ++t) {
      for (int i = 0; i < n; ++i)
        x[i] = grid.box.lo[i].get_d() +
               uni(rng) * Rational(grid.box.hi[i] - grid.box.lo[i]).get_d();
      double v = 0;
      for (size_t i = 0; i < a.comps.size(); ++i)
        v += gram[i].get_d() * a.comps[i].evalDouble(x) * b.comps[i].evalDouble(x);
      s += v;
      s2 += v * v;
    }
    sums[c] = s;
    sqs[c] = s2;
  }
  double s = 0, s2 = 0;
  const double total = double(per) * chunks;
  for (int c = 0; c < chunks; ++c) {
    s += sums[c];
    s2 += sqs[c];
  }
  double mean = s / total;
  double var = std::max(0.0, s2 / total - mean * mean);
  MonteCarloEstimate est;
  est.value = mean * volume;
  est.standardError = volume * std::sqrt(var / total);
  return est;
}

AdjointnessResult adjointnessCheck(const RuminComplex& cx, const GroupModel& g, int h, int trials,
                                   const QuadratureGrid& grid, int bumpExp, unsigned long seed,
                                   bool flipSign) {
  const OperatorMatrix& dc = cx.dc(h - 1);
  const OperatorMatrix& deltac = cx.deltaC(h);
  const int need = dc.maxHomDegree() + 1;
  if (bumpExp < need)
    throw ValidationError("smoothness-order",
                          "bump exponent " + std::to_string(bumpExp) +
                              " is too small for operator order; need >= " + std::to_string(need));
  AdjointnessResult result;
  result.trials = trials;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    SampleForm alpha = randomSampleForm(cx, h - 1, grid.box, bumpExp, 2, rng());
    SampleForm beta = randomSampleForm(cx, h, grid.box, bumpExp, 2, rng());
    SampleForm da = applyMatrixNumeric(g, dc, alpha);
    SampleForm db = applyMatrixNumeric(g, deltac, beta);
    double lhs = pairing(da, beta, cx.basis().gram[h], grid);
    double rhs = pairing(alpha, db, cx.basis().gram[h - 1], grid);
    if (flipSign) rhs = -rhs;
    double err = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
    result.maxRelError = std::max(result.maxRelError, err);
  }
  return result;
}

double dcSquaredPointwiseResidual(const RuminComplex& cx, const GroupModel& g, int h, int points,
                                  unsigned long seed) {
  std::mt19937_64 rng(seed);
  Box box = Box::cube(cx.dim(), Rational(-1), Rational(1));
  SampleForm alpha = randomSampleForm(cx, h, box, 4, 2, rng());
  SampleForm once = applyMatrixNumeric(g, cx.dc(h), alpha);
  SampleForm twice = applyMatrixNumeric(g, cx.dc(h + 1), once);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst = 0;
  std::vector<double> x(cx.dim());
  for (int t = 0; t < points; ++t) {
    for (auto& xi : x) xi = uni(rng);
    for (const auto& comp : twice.comps) worst = std::max(worst, std::abs(comp.evalDouble(x)));
  }
  return worst;
}

}  // namespace carnot
