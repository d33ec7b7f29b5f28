#include "carnot/group_model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>

namespace carnot {

namespace {

// Element of U(g) ⊗ Q[vars], truncated at weighted degree <= step.
using PolyElem = std::map<PbwMono, Polynomial>;

PolyElem polyMul(const UeaContext& ctx, const PolyElem& a, const PolyElem& b, int step) {
  PolyElem out;
  for (const auto& [ma, pa] : a)
    for (const auto& [mb, pb] : b) {
      if (ctx.weightedDegree(ma) + ctx.weightedDegree(mb) > step) continue;
      Polynomial prod = pa * pb;
      if (prod.isZero()) continue;
      for (const auto& [m, c] : ctx.mulMonomials(ma, mb)) {
        Polynomial scaled = prod;
        scaled *= c;
        auto it = out.find(m);
        if (it == out.end())
          out.emplace(m, std::move(scaled));
        else
          it->second += scaled;
      }
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.isZero(); });
  return out;
}

// exp of an element without constant term.
PolyElem polyExp(const UeaContext& ctx, const PolyElem& a, int step, int nvars) {
  PolyElem result, term;
  PbwMono unit(ctx.dim(), 0);
  result[unit] = Polynomial::constant(nvars, Rational(1));
  term = result;
  for (int k = 1; k <= step && !term.empty(); ++k) {
    term = polyMul(ctx, term, a, step);
    for (auto& [m, p] : term) p *= Rational(1, k);
    for (const auto& [m, p] : term) {
      auto it = result.find(m);
      if (it == result.end())
        result.emplace(m, p);
      else
        it->second += p;
    }
  }
  return result;
}

// log of an element with constant term 1.
PolyElem polyLog(const UeaContext& ctx, PolyElem a, int step, int nvars) {
  PbwMono unit(ctx.dim(), 0);
  auto it = a.find(unit);
  assert(it != a.end());
  it->second -= Polynomial::constant(nvars, Rational(1));
  if (it->second.isZero()) a.erase(it);
  PolyElem result, power;
  power[unit] = Polynomial::constant(nvars, Rational(1));
  for (int k = 1; k <= step; ++k) {
    power = polyMul(ctx, power, a, step);
    if (power.empty()) break;
    Rational coef = (k % 2 == 1) ? Rational(1, k) : Rational(-1, k);
    for (const auto& [m, p] : power) {
      Polynomial scaled = p;
      scaled *= coef;
      auto jt = result.find(m);
      if (jt == result.end())
        result.emplace(m, std::move(scaled));
      else
        jt->second += scaled;
    }
  }
  std::erase_if(result, [](const auto& kv) { return kv.second.isZero(); });
  return result;
}

// ordered product exp(z_N X_N)···exp(z_1 X_1); variables varOf(i) host z_i.
PolyElem orderedProduct(const UeaContext& ctx, int step, int nvars,
                        const std::vector<int>& varOf) {
  const int N = ctx.dim();
  PolyElem u;
  u[PbwMono(N, 0)] = Polynomial::constant(nvars, Rational(1));
  for (int i = N - 1; i >= 0; --i) {
    PolyElem gen;
    PbwMono m(N, 0);
    m[i] = 1;
    gen[m] = Polynomial::variable(nvars, varOf[i]);
    u = polyMul(ctx, u, polyExp(ctx, gen, step, nvars), step);
  }
  return u;
}

// extracts the primitive (single-letter) coefficients; every other monomial
// must have vanished, otherwise the log was not an algebra element.
std::vector<Polynomial> primitiveCoordinates(const UeaContext& ctx, const PolyElem& el, int nvars) {
  const int N = ctx.dim();
  std::vector<Polynomial> coords(N, Polynomial(nvars));
  for (const auto& [m, p] : el) {
    int letter = -1, total = 0;
    for (int i = 0; i < N; ++i) {
      total += m[i];
      if (m[i] > 0) letter = i;
    }
    if (total != 1)
      throw ContractError("bch-primitive", "log of a group element has a non-primitive term");
    coords[letter] = p;
  }
  return coords;
}

}  // namespace

std::string conventionName(CoordConvention c) {
  return c == CoordConvention::BchFirstKind ? "bch-first-kind" : "ordered-exp-descending";
}

CoordConvention conventionFromName(const std::string& s) {
  if (s == "bch-first-kind") return CoordConvention::BchFirstKind;
  if (s == "ordered-exp-descending") return CoordConvention::OrderedExpDescending;
  throw ValidationError("convention", "unsupported coordinate convention '" + s + "'");
}

GroupModel::GroupModel(std::shared_ptr<const UeaContext> ctx, CoordConvention convention)
    : ctx_(std::move(ctx)), convention_(convention) {
  buildLaw();
  buildInverse();
  buildFields();
}

void GroupModel::buildLaw() {
  const auto& ctx = *ctx_;
  const int N = ctx.dim();
  const int step = algebra().step();
  const int nv = 2 * N;

  if (convention_ == CoordConvention::BchFirstKind) {
    auto primitive = [&](int shift) {
      PolyElem el;
      for (int i = 0; i < N; ++i) {
        PbwMono m(N, 0);
        m[i] = 1;
        el[m] = Polynomial::variable(nv, shift + i);
      }
      return el;
    };
    PolyElem u = polyExp(ctx, primitive(0), step, nv);
    PolyElem v = polyExp(ctx, primitive(N), step, nv);
    law_ = primitiveCoordinates(ctx, polyLog(ctx, polyMul(ctx, u, v, step), step, nv), nv);
    return;
  }

  // ordered exponential, descending factor order
  std::vector<int> xs(N), ys(N);
  for (int i = 0; i < N; ++i) {
    xs[i] = i;
    ys[i] = N + i;
  }
  PolyElem u = orderedProduct(ctx, step, nv, xs);
  PolyElem v = orderedProduct(ctx, step, nv, ys);
  std::vector<Polynomial> ell =
      primitiveCoordinates(ctx, polyLog(ctx, polyMul(ctx, u, v, step), step, nv), nv);

  // F maps second-kind coordinates to first-kind ones; invert it on ell by
  // the layer-graded fixed point z <- ell - (F(z) - z).
  std::vector<int> zv(N);
  for (int i = 0; i < N; ++i) zv[i] = i;
  std::vector<Polynomial> F =
      primitiveCoordinates(ctx, polyLog(ctx, orderedProduct(ctx, step, N, zv), step, N), N);
  std::vector<Polynomial> z = ell;
  for (int it = 0; it + 1 < step; ++it) {
    std::vector<Polynomial> next(N, Polynomial(nv));
    for (int k = 0; k < N; ++k) next[k] = ell[k] - (F[k].compose(z) - z[k]);
    z = std::move(next);
  }
  for (int k = 0; k < N; ++k)
    if (!(F[k].compose(z) == ell[k]))
      throw ContractError("second-kind-coordinates", "coordinate conversion did not close");
  law_ = std::move(z);
}

void GroupModel::buildInverse() {
  const int N = dim();
  const int step = algebra().step();
  std::vector<Polynomial> inv(N, Polynomial(N));
  for (int i = 0; i < N; ++i) inv[i] = -Polynomial::variable(N, i);
  auto lawAt = [&](const std::vector<Polynomial>& y) {
    std::vector<Polynomial> subs(2 * N, Polynomial(N));
    for (int i = 0; i < N; ++i) {
      subs[i] = Polynomial::variable(N, i);
      subs[N + i] = y[i];
    }
    std::vector<Polynomial> out(N, Polynomial(N));
    for (int k = 0; k < N; ++k) out[k] = law_[k].compose(subs);
    return out;
  };
  for (int it = 0; it + 1 < step; ++it) {
    auto err = lawAt(inv);
    for (int k = 0; k < N; ++k) inv[k] -= err[k];
  }
  for (auto& e : lawAt(inv))
    if (!e.isZero()) throw ContractError("group-inverse", "inverse polynomials did not close");
  inverse_ = std::move(inv);
}

void GroupModel::buildFields() {
  const int N = dim();
  std::vector<Polynomial> atZero(2 * N, Polynomial(N));
  for (int i = 0; i < N; ++i) atZero[i] = Polynomial::variable(N, i);  // y = 0
  fields_.assign(N, std::vector<Polynomial>(N, Polynomial(N)));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) fields_[i][j] = law_[j].derivative(N + i).compose(atZero);
}

std::vector<Rational> GroupModel::multiply(const std::vector<Rational>& x,
                                           const std::vector<Rational>& y) const {
  std::vector<Rational> xy(x);
  xy.insert(xy.end(), y.begin(), y.end());
  std::vector<Rational> out(dim());
  for (int k = 0; k < dim(); ++k) out[k] = law_[k].eval(xy);
  return out;
}

std::vector<Rational> GroupModel::inverse(const std::vector<Rational>& x) const {
  std::vector<Rational> out(dim());
  for (int k = 0; k < dim(); ++k) out[k] = inverse_[k].eval(x);
  return out;
}

std::vector<Rational> GroupModel::dilate(const Rational& lambda,
                                         const std::vector<Rational>& x) const {
  if (lambda <= 0) throw ValidationError("dilation-lambda", "dilation requires lambda > 0");
  std::vector<Rational> out(dim());
  for (int i = 0; i < dim(); ++i) {
    Rational p = 1;
    for (int e = 0; e < algebra().layer(i); ++e) p *= lambda;
    out[i] = p * x[i];
  }
  return out;
}

std::vector<double> GroupModel::dilate(double lambda, const std::vector<double>& x) const {
  if (lambda <= 0) throw ValidationError("dilation-lambda", "dilation requires lambda > 0");
  std::vector<double> out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = std::pow(lambda, algebra().layer(i)) * x[i];
  return out;
}

double GroupModel::homogeneousNorm(const std::vector<double>& x) const {
  long K = 1;
  for (int i = 2; i <= algebra().step(); ++i) K *= i;
  const double twoK = 2.0 * static_cast<double>(K);
  double sum = 0;
  for (int i = 0; i < dim(); ++i)
    sum += std::pow(std::abs(x[i]), twoK / algebra().layer(i));
  return std::pow(sum, 1.0 / twoK);
}

Polynomial GroupModel::applyField(int i, const Polynomial& f) const {
  Polynomial out(dim());
  for (int j = 0; j < dim(); ++j) {
    Polynomial dj = f.derivative(j);
    if (dj.isZero()) continue;
    out += fields_[i][j] * dj;
  }
  return out;
}

Polynomial GroupModel::applyWord(const std::vector<int>& word, const Polynomial& f) const {
  Polynomial out = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = applyField(*it, out);
  return out;
}

Polynomial GroupModel::applyOperator(const EnvelopingOperator& p, const Polynomial& f) const {
  Polynomial out(dim());
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = applyWord(monomialLetters(m), f);
    t *= c.asRational();
    out += t;
  }
  return out;
}

void GroupModel::verifyConstruction() const {
  const int N = dim();
  const auto& d = algebra().dilationExponents();

  // unit law
  std::vector<Polynomial> xOnly(2 * N, Polynomial(N)), yOnly(2 * N, Polynomial(N));
  for (int i = 0; i < N; ++i) {
    xOnly[i] = Polynomial::variable(N, i);
    yOnly[N + i] = Polynomial::variable(N, i);
  }
  for (int k = 0; k < N; ++k) {
    if (!(law_[k].compose(xOnly) == Polynomial::variable(N, k)))
      throw ContractError("group-law-unit", "x·0 != x in coordinate " + std::to_string(k + 1));
    if (!(law_[k].compose(yOnly) == Polynomial::variable(N, k)))
      throw ContractError("group-law-unit", "0·y != y in coordinate " + std::to_string(k + 1));
  }

  // dilations are automorphisms: every monomial of law_k is weighted
  // homogeneous of degree d_k in the doubled weights.
  std::vector<int> w2(2 * N);
  for (int i = 0; i < N; ++i) w2[i] = w2[N + i] = d[i];
  for (int k = 0; k < N; ++k)
    if (!law_[k].isWeightedHomogeneous(w2, d[k]))
      throw ContractError("dilation-automorphism",
                          "group law coordinate " + std::to_string(k + 1) + " is not homogeneous");

  // associativity as an exact polynomial identity in 3N variables
  if (N <= 12) {
    std::vector<Polynomial> subsOuter(2 * N), subsInner(2 * N), subsLeft(2 * N);
    for (int i = 0; i < N; ++i) {
      subsOuter[i] = law_[i].embed(3 * N, 0);
      subsOuter[N + i] = Polynomial::variable(3 * N, 2 * N + i);
      subsInner[i] = Polynomial::variable(3 * N, N + i);
      subsInner[N + i] = Polynomial::variable(3 * N, 2 * N + i);
    }
    for (int i = 0; i < N; ++i) subsLeft[i] = Polynomial::variable(3 * N, i);
    for (int i = 0; i < N; ++i) subsLeft[N + i] = law_[i].compose(subsInner);
    for (int k = 0; k < N; ++k)
      if (!(law_[k].compose(subsOuter) == law_[k].compose(subsLeft)))
        throw ContractError("group-law-associativity",
                            "associativity fails in coordinate " + std::to_string(k + 1));
  }

  // field structure
  for (int i = 0; i < N; ++i) {
    Polynomial div(N);
    for (int j = 0; j < N; ++j) {
      const Polynomial& c = fields_[i][j];
      if (!c.isZero() && !c.isWeightedHomogeneous(d, d[j] - d[i]))
        throw ContractError("field-homogeneity", "field coefficient X" + std::to_string(i + 1) +
                                                     "[" + std::to_string(j + 1) +
                                                     "] has wrong homogeneity");
      div += c.derivative(j);
    }
    if (!div.isZero())
      throw ContractError("field-divergence",
                          "field X" + std::to_string(i + 1) + " has nonzero divergence");
  }

  // bracket realization: [X_i, X_j] = sum_k c^k_{ij} X_k as coordinate fields
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      for (int t = 0; t < N; ++t) {
        Polynomial comm(N);
        for (int s = 0; s < N; ++s)
          comm += fields_[i][s] * fields_[j][t].derivative(s) -
                  fields_[j][s] * fields_[i][t].derivative(s);
        Polynomial expect(N);
        for (const auto& [k, c] : algebra().bracket(i, j)) {
          Polynomial term = fields_[k][t];
          term *= c;
          expect += term;
        }
        if (!(comm == expect))
          throw ContractError("bracket-realization",
                              "coordinate bracket [" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + "] mismatches structure constants");
      }
    }
}

RegularRepresentation regularRepresentation(const UeaContext& ctx) {
  const int N = ctx.dim();
  const int step = ctx.algebra().step();
  std::vector<PbwMono> basis;
  PbwMono cur(N, 0);
  // enumerate monomials of weighted degree <= step
  std::function<void(int, int)> rec = [&](int idx, int budget) {
    if (idx == N) {
      basis.push_back(cur);
      return;
    }
    const int layer = ctx.algebra().layer(idx);
    for (int e = 0; e * layer <= budget; ++e) {
      cur[idx] = e;
      rec(idx + 1, budget - e * layer);
    }
    cur[idx] = 0;
  };
  rec(0, step);
  std::sort(basis.begin(), basis.end(), [&](const PbwMono& a, const PbwMono& b) {
    int da = ctx.weightedDegree(a), db = ctx.weightedDegree(b);
    return da != db ? da < db : a < b;
  });
  std::map<PbwMono, int> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);

  RegularRepresentation rep;
  rep.basis = basis;
  const int dim = static_cast<int>(basis.size());
  for (int i = 0; i < N; ++i) {
    RatMatrix L(dim, dim);
    for (int col = 0; col < dim; ++col)
      for (const auto& [m, c] : ctx.pushGenerator(i, basis[col])) {
        auto it = index.find(m);
        if (it != index.end()) L.at(it->second, col) = c;
      }
    rep.matrices.push_back(std::move(L));
  }
  return rep;
}

RatMatrix nilpotentMatrixExp(const RatMatrix& a) {
  const int n = a.rows();
  RatMatrix result = RatMatrix::identity(n), power = RatMatrix::identity(n);
  Rational fact = 1;
  for (int k = 1; k <= n; ++k) {
    power = power * a;
    if (power.isZero()) break;
    fact *= k;
    result = result + power.scaled(Rational(1) / fact);
  }
  return result;
}

}  // namespace carnot
