#include "carnot/rumin.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace carnot {

namespace {

Rational binom(unsigned long n, unsigned long k) {
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return Rational(z);
}

OperatorMatrix retagged(const OperatorMatrix& m, const FormBasisTag& rowTag,
                        const FormBasisTag& colTag) {
  OperatorMatrix r(m.context(), rowTag, colTag);
  assert(m.rows() == r.rows() && m.cols() == r.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
  return r;
}

RatMatrix diagonal(const std::vector<Rational>& d, bool invert) {
  RatMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m.at(i, i) = invert ? Rational(1) / d[i] : d[i];
  return m;
}

}  // namespace

RuminComplex::RuminComplex(std::shared_ptr<const UeaContext> ctx) : ctx_(std::move(ctx)) {
  ext_ = std::make_shared<ExteriorAlgebra>(
      std::make_shared<StratifiedLieAlgebra>(ctx_->algebra()));
  // the Riesz-projection powers and the full differential bound the degrees
  // this construction composes; keep the runaway guard just above that
  int maxSpan = 0;
  for (int h = 0; h <= dim(); ++h) {
    const auto& blocks = ext_->weightBlocks(h);
    if (!blocks.empty())
      maxSpan = std::max(maxSpan, blocks.back().weight - blocks.front().weight);
  }
  ctx_->setDegreeCap(
      std::max(ctx_->degreeCap(), 2 * (maxSpan + 1) + algebra().step() + 2));
  computeE0();
  computePiE();
  verifyPiEContract();
  computeDc();
  computeLaplacians();
}

void RuminComplex::computeE0() {
  const int N = dim();
  d0_.resize(N + 1);
  d0inv_.resize(N + 1);
  for (int h = 0; h < N; ++h) d0_[h] = buildD0(*ext_, h).m;
  d0_[N] = RatMatrix(0, ext_->dimOf(N));
  for (int h = 0; h <= N; ++h) d0inv_[h] = d0_[h].pseudoInverse();

  basis_.vectors.resize(N + 1);
  basis_.weights.resize(N + 1);
  basis_.gram.resize(N + 1);
  basis_.coords.resize(N + 1);
  pi0_.resize(N + 1);
  piE0_.resize(N + 1);
  e0Tag_.resize(N + 1);

  for (int h = 0; h <= N; ++h) {
    const int dimH = ext_->dimOf(h);
    // E₀^h = Ker d₀ ∩ Ker δ₀, computed per weight block of Λ^h
    for (const auto& block : ext_->weightBlocks(h)) {
      const int up = (h < N) ? d0_[h].rows() : 0;
      const int down = (h > 0) ? d0_[h - 1].cols() : 0;
      RatMatrix stacked(up + down, block.size);
      for (int r = 0; r < up; ++r)
        for (int c = 0; c < block.size; ++c) stacked.at(r, c) = d0_[h].at(r, block.start + c);
      if (h > 0) {
        // δ₀ rows = columns of d₀ on degree h-1
        for (int r = 0; r < down; ++r)
          for (int c = 0; c < block.size; ++c)
            stacked.at(up + r, c) = d0_[h - 1].at(block.start + c, r);
      }
      auto kernel = stacked.nullspace();
      if (kernel.empty()) continue;
      std::vector<std::vector<Rational>> full;
      for (auto& v : kernel) {
        std::vector<Rational> w(dimH, Rational(0));
        for (int c = 0; c < block.size; ++c) w[block.start + c] = v[c];
        full.push_back(std::move(w));
      }
      std::vector<Rational> gram;
      gramSchmidt(full, gram);
      for (size_t t = 0; t < full.size(); ++t) {
        Multivector mv(h);
        for (int c = 0; c < dimH; ++c)
          if (full[t][c] != 0) mv.add(ext_->basis(h)[c].mask, Scalar(full[t][c]));
        basis_.vectors[h].push_back(std::move(mv));
        basis_.weights[h].push_back(block.weight);
        basis_.gram[h].push_back(gram[t]);
      }
    }
    const int nh = basis_.dim(h);
    RatMatrix V(dimH, nh);
    for (int j = 0; j < nh; ++j)
      for (const auto& [mask, c] : basis_.vectors[h][j].comps())
        V.at(ext_->indexOf(h, mask), j) = c.asRational();
    basis_.coords[h] = V;
    e0Tag_[h] = FormBasisTag{h, basis_.weights[h]};

    pi0_[h] = d0inv_[h] * d0_[h];
    if (h > 0) pi0_[h] = pi0_[h] + d0_[h - 1] * d0inv_[h - 1];

    piE0_[h].srcDegree = piE0_[h].dstDegree = h;
    piE0_[h].m = V * diagonal(basis_.gram[h], true) * V.transpose();
    RatMatrix complement = RatMatrix::identity(dimH) - pi0_[h];
    if (!(piE0_[h].m == complement))
      throw ContractError("pie0-consistency",
                          "E0 projection disagrees with I - Pi0 in degree " + std::to_string(h));
  }
}

void RuminComplex::computePiE() {
  const int N = dim();
  fullD_.resize(N + 1);
  for (int h = 0; h < N; ++h) fullD_[h] = buildFullD(ctx_, *ext_, h);
  {
    FormBasisTag empty;
    empty.degree = N + 1;
    fullD_[N] = OperatorMatrix(ctx_, empty, lambdaTag(*ext_, N));
  }
  piE_.resize(N + 1);
  for (int h = 0; h <= N; ++h) {
    const FormBasisTag tag = lambdaTag(*ext_, h);
    const FormBasisTag tagUp = (h < N) ? lambdaTag(*ext_, h + 1) : fullD_[N].rowTag();
    const FormBasisTag tagDown = (h > 0) ? lambdaTag(*ext_, h - 1) : FormBasisTag{-1, {}};

    // A = d₀⁻¹ d + d d₀⁻¹ on Λ^h sections
    OperatorMatrix A =
        retagged(fullD_[h].leftMul(d0inv_[h]), tag, tag);
    if (h > 0) {
      OperatorMatrix lift = OperatorMatrix::fromRatMatrix(ctx_, tagDown, tag, d0inv_[h - 1]);
      A = A + fullD_[h - 1] * lift;
    }
    OperatorMatrix P0 = OperatorMatrix::fromRatMatrix(ctx_, tag, tag, pi0_[h]);
    OperatorMatrix T = A - P0;
    auto minDeg = T.minEntryDegree();
    if (!T.isWeightHomogeneous() || (minDeg && *minDeg < 1))
      throw ContractError("weight-raising",
                          "A - Pi0 is not strictly weight-raising in degree " + std::to_string(h));

    // weight span bounds the nilpotency depth of A² - A
    int wMin = tag.weights.empty() ? 0 : *std::min_element(tag.weights.begin(), tag.weights.end());
    int wMax = tag.weights.empty() ? 0 : *std::max_element(tag.weights.begin(), tag.weights.end());
    const int M = wMax - wMin + 1;

    // Riesz projection onto the generalized 0-eigenspace of A, as the
    // polynomial p(A) with p ≡ 0 mod z^M and p ≡ 1 mod (z-1)^M:
    //   Π_E = (I - A)^M · Σ_{j<M} C(M-1+j, j) A^j
    OperatorMatrix I = OperatorMatrix::identity(ctx_, tag);
    OperatorMatrix acc = I, sum(ctx_, tag, tag);
    for (int j = 0; j < M; ++j) {
      sum = sum + acc.scaled(Scalar(binom(M - 1 + j, j)));
      if (j + 1 < M) acc = acc * A;
    }
    piE_[h] = (I - A).power(M) * sum;
  }
}

void RuminComplex::verifyPiEContract() const {
  const int N = dim();
  for (int h = 0; h <= N; ++h) {
    const auto& P = piE_[h];
    if (!((P * P) == P))
      throw ContractError("pie-idempotent", "Pi_E^2 != Pi_E in degree " + std::to_string(h));
    if (h < N && !((fullD_[h] * P) == (piE_[h + 1] * fullD_[h])))
      throw ContractError("pie-chain-map", "d Pi_E != Pi_E d in degree " + std::to_string(h));
    if (h > 0) {
      OperatorMatrix lower = P.leftMul(d0inv_[h - 1]);
      if (!lower.isZero())
        throw ContractError("pie-image-kernel-d0inv",
                            "d0^{-1} Pi_E != 0 in degree " + std::to_string(h));
    }
    if (h < N) {
      OperatorMatrix up = (fullD_[h] * P).leftMul(d0inv_[h]);
      if (!up.isZero())
        throw ContractError("pie-image-kernel-d0inv-d",
                            "d0^{-1} d Pi_E != 0 in degree " + std::to_string(h));
    }
    // kernel contains F = Im d₀⁻¹ + Im(d d₀⁻¹)
    if (h < N) {
      OperatorMatrix lift =
          OperatorMatrix::fromRatMatrix(ctx_, piE_[h].rowTag(), fullD_[h].rowTag(), d0inv_[h]);
      if (!(P * lift).isZero())
        throw ContractError("pie-kernel-d0inv",
                            "Pi_E d0^{-1} != 0 in degree " + std::to_string(h));
    }
    if (h > 0) {
      OperatorMatrix lift =
          OperatorMatrix::fromRatMatrix(ctx_, fullD_[h - 1].colTag(), piE_[h].colTag(),
                                        d0inv_[h - 1]);
      if (!(P * (fullD_[h - 1] * lift)).isZero())
        throw ContractError("pie-kernel-d-d0inv",
                            "Pi_E d d0^{-1} != 0 in degree " + std::to_string(h));
    }
    // Π_{E₀} Π_E ι = id on E₀
    const RatMatrix& V = basis_.coords[h];
    RatMatrix GinvVt = diagonal(basis_.gram[h], true) * V.transpose();
    OperatorMatrix restricted = retagged(P.rightMul(V).leftMul(GinvVt), e0Tag_[h], e0Tag_[h]);
    if (!(restricted == OperatorMatrix::identity(ctx_, e0Tag_[h])))
      throw ContractError("pie-retraction",
                          "Pi_E0 Pi_E iota != id on E0 in degree " + std::to_string(h));
  }
}

void RuminComplex::computeDc() {
  const int N = dim();
  dc_.resize(N + 1);
  deltaC_.resize(N + 1);
  for (int h = 0; h < N; ++h) {
    OperatorMatrix F = (fullD_[h] * piE_[h]).leftMul(piE0_[h + 1].m);
    const RatMatrix& V = basis_.coords[h];
    const RatMatrix& W = basis_.coords[h + 1];
    RatMatrix GinvWt = diagonal(basis_.gram[h + 1], true) * W.transpose();
    OperatorMatrix restricted =
        retagged(F.rightMul(V).leftMul(GinvWt), e0Tag_[h + 1], e0Tag_[h]);
    // the image of Π_{E₀} d Π_E must lie in the span of the E₀ basis
    if (!(F.rightMul(V) == restricted.leftMul(W)))
      throw ContractError("dc-image", "d_c image leaves E0 in degree " + std::to_string(h));
    if (!restricted.isWeightHomogeneous())
      throw ContractError("dc-homogeneity",
                          "d_c entry not weight-homogeneous in degree " + std::to_string(h));
    for (int i = 0; i < restricted.rows(); ++i)
      for (int j = 0; j < restricted.cols(); ++j)
        if (!restricted.at(i, j).isZero() &&
            basis_.weights[h + 1][i] - basis_.weights[h][j] < 1)
          throw ContractError("dc-order", "d_c entry of order < 1 in degree " + std::to_string(h));
    dc_[h] = std::move(restricted);
  }
  {
    FormBasisTag empty;
    empty.degree = N + 1;
    dc_[N] = OperatorMatrix(ctx_, empty, e0Tag_[N]);
  }
  for (int h = 1; h <= N; ++h) {
    deltaC_[h] = dc_[h - 1]
                     .adjointTranspose()
                     .leftMul(diagonal(basis_.gram[h - 1], true))
                     .rightMul(diagonal(basis_.gram[h], false));
    deltaC_[h] = retagged(deltaC_[h], e0Tag_[h - 1], e0Tag_[h]);
  }
  {
    FormBasisTag empty;
    empty.degree = -1;
    deltaC_[0] = OperatorMatrix(ctx_, empty, e0Tag_[0]);
  }

  // Hodge star in the unnormalized E₀ coordinates
  starE0_.resize(N + 1);
  for (int h = 0; h <= N; ++h) {
    const int nh = basis_.dim(h), nk = basis_.dim(N - h);
    starE0_[h] = RatMatrix(nk, nh);
    for (int j = 0; j < nh; ++j) {
      Multivector sv = hodgeStar(*ext_, basis_.vectors[h][j]);
      std::vector<Rational> rhs(ext_->dimOf(N - h), Rational(0));
      for (const auto& [mask, c] : sv.comps()) rhs[ext_->indexOf(N - h, mask)] = c.asRational();
      // coordinates via the Gram inner product, then exact membership check
      for (int i = 0; i < nk; ++i) {
        Rational dot = 0;
        for (const auto& [mask, c] : basis_.vectors[N - h][i].comps())
          dot += c.asRational() * rhs[ext_->indexOf(N - h, mask)];
        starE0_[h].at(i, j) = dot / basis_.gram[N - h][i];
      }
      std::vector<Rational> recon(ext_->dimOf(N - h), Rational(0));
      for (int i = 0; i < nk; ++i)
        for (const auto& [mask, c] : basis_.vectors[N - h][i].comps())
          recon[ext_->indexOf(N - h, mask)] += starE0_[h].at(i, j) * c.asRational();
      if (recon != rhs)
        throw ContractError("star-e0-duality",
                            "Hodge star leaves E0 in degree " + std::to_string(h));
    }
  }
}

void RuminComplex::computeLaplacians() {
  const int N = dim();
  laplacian_.resize(N + 1);
  shape_.resize(N + 1);
  mh_.assign(N + 1, 0);
  for (int h = 0; h <= N; ++h) {
    const int s = (h > 0 && !dc_[h - 1].isZero()) ? dc_[h - 1].maxHomDegree() : 0;
    const int r = (h < N && !dc_[h].isZero()) ? dc_[h].maxHomDegree() : 0;
    OperatorMatrix lap(ctx_, e0Tag_[h], e0Tag_[h]);
    int a = 0, b = 0;
    if (s > 0 && r > 0) {
      const int M = std::lcm(2 * s, 2 * r);
      a = M / (2 * s);
      b = M / (2 * r);
      ctx_->setDegreeCap(std::max(ctx_->degreeCap(), M + 2));
    } else if (s > 0) {
      a = 1;
    } else if (r > 0) {
      b = 1;
    }
    if (a > 0) lap = lap + (dc_[h - 1] * deltaC_[h]).power(a);
    if (b > 0) lap = lap + (deltaC_[h + 1] * dc_[h]).power(b);
    shape_[h] = {a, b};
    laplacian_[h] = std::move(lap);
    mh_[h] = laplacian_[h].maxHomDegree();
  }
}

std::vector<Scalar> RuminComplex::orthonormalScales(int h) const {
  std::vector<Scalar> s;
  for (const auto& g : basis_.gram[h]) s.push_back(Scalar(1) / Scalar::sqrtOf(g));
  return s;
}

OperatorMatrix RuminComplex::dcOrthonormal(int h) const {
  // coordinates scale contravariantly: entry (i,j) × √g_i / √g_j
  std::vector<Scalar> rows, cols;
  for (const auto& g : basis_.gram[h + 1]) rows.push_back(Scalar::sqrtOf(g));
  for (const auto& g : basis_.gram[h]) cols.push_back(Scalar(1) / Scalar::sqrtOf(g));
  return dc_[h].scaleRows(rows).scaleCols(cols);
}

OperatorMatrix RuminComplex::deltaCOrthonormal(int h) const {
  std::vector<Scalar> rows, cols;
  for (const auto& g : basis_.gram[h - 1]) rows.push_back(Scalar::sqrtOf(g));
  for (const auto& g : basis_.gram[h]) cols.push_back(Scalar(1) / Scalar::sqrtOf(g));
  return deltaC_[h].scaleRows(rows).scaleCols(cols);
}

OperatorMatrix RuminComplex::laplacianOrthonormal(int h) const {
  std::vector<Scalar> rows, cols;
  for (const auto& g : basis_.gram[h]) rows.push_back(Scalar::sqrtOf(g));
  for (const auto& g : basis_.gram[h]) cols.push_back(Scalar(1) / Scalar::sqrtOf(g));
  return laplacian_[h].scaleRows(rows).scaleCols(cols);
}

OperatorMatrix RuminComplex::starOrthonormal(int h) const {
  const int N = dim();
  OperatorMatrix S(ctx_, e0Tag_[N - h], e0Tag_[h]);
  for (int i = 0; i < basis_.dim(N - h); ++i)
    for (int j = 0; j < basis_.dim(h); ++j) {
      if (starE0_[h].at(i, j) == 0) continue;
      Scalar v = Scalar(starE0_[h].at(i, j)) * Scalar::sqrtOf(basis_.gram[N - h][i]) /
                 Scalar::sqrtOf(basis_.gram[h][j]);
      S.at(i, j) = EnvelopingOperator::one(ctx_).scaled(v);
    }
  return S;
}

IdentityReport RuminComplex::checkIdentities() const {
  const int N = dim();
  IdentityReport report;
  int capNeeded = 0;
  for (int h = 0; h <= N; ++h) capNeeded = std::max(capNeeded, mh_[h]);
  ctx_->setDegreeCap(std::max(ctx_->degreeCap(), 2 * capNeeded + 8));

  auto push = [&](const std::string& name, bool pass, const std::string& detail = "") {
    report.items.push_back({name, pass, pass ? "" : detail});
  };
  auto zeroCheck = [&](const std::string& name, const OperatorMatrix& m) {
    if (m.isZero()) {
      push(name, true);
    } else {
      std::ostringstream os;
      for (int i = 0; i < m.rows() && os.tellp() < 160; ++i)
        for (int j = 0; j < m.cols(); ++j)
          if (!m.at(i, j).isZero())
            os << "(" << i << "," << j << ")=" << m.at(i, j).toString() << " ";
      push(name, false, "nonzero residual: " + os.str());
    }
  };

  try {
    verifyPiEContract();
    push("pie-contract", true);
  } catch (const ContractError& e) {
    push("pie-contract", false, e.identity + ": " + e.what());
  }

  for (int h = 0; h + 1 < N; ++h) zeroCheck("dc-dc[h=" + std::to_string(h) + "]", dc_[h + 1] * dc_[h]);
  for (int h = 2; h <= N; ++h)
    zeroCheck("deltac-deltac[h=" + std::to_string(h) + "]", deltaC_[h - 1] * deltaC_[h]);

  // δ_c = (-1)^{N(h+1)+1} ⋆ d_c ⋆ against the formal-adjoint construction
  for (int h = 1; h <= N; ++h) {
    OperatorMatrix viaStar = starOrthonormal(N - h + 1) * dcOrthonormal(N - h) * starOrthonormal(h);
    int e = N * (h + 1) + 1;
    if (e % 2 != 0) viaStar = viaStar.scaled(Scalar(-1));
    zeroCheck("deltac-sign-law[h=" + std::to_string(h) + "]",
              viaStar - deltaCOrthonormal(h));
  }

  // Laplacian intertwinings: pad the short side by (d_cδ_c) or (δ_cd_c)
  // powers so both routes have equal homogeneity.
  for (int h = 0; h < N; ++h) {
    if (dc_[h].isZero() || shape_[h].deltaDPow == 0) continue;
    const int bH = shape_[h].deltaDPow, aUp = shape_[h + 1].dDeltaPow;
    const int p = std::max(0, aUp - bH), q = std::max(0, bH - aUp);
    OperatorMatrix ddelta = dc_[h] * deltaC_[h + 1];
    OperatorMatrix lhs = ddelta.power(p) * (dc_[h] * laplacian_[h]);
    OperatorMatrix rhs = laplacian_[h + 1] * (ddelta.power(q) * dc_[h]);
    zeroCheck("lemma-comm-d[h=" + std::to_string(h) + "]", lhs - rhs);
  }
  for (int h = 1; h <= N; ++h) {
    if (deltaC_[h].isZero() || shape_[h].dDeltaPow == 0) continue;
    const int aH = shape_[h].dDeltaPow, bDown = shape_[h - 1].deltaDPow;
    const int p = std::max(0, bDown - aH), q = std::max(0, aH - bDown);
    OperatorMatrix deltad = deltaC_[h] * dc_[h - 1];
    OperatorMatrix lhs = deltad.power(p) * (deltaC_[h] * laplacian_[h]);
    OperatorMatrix rhs = laplacian_[h - 1] * (deltad.power(q) * deltaC_[h]);
    zeroCheck("lemma-comm-delta[h=" + std::to_string(h) + "]", lhs - rhs);
  }
  for (int h = 1; h <= N; ++h) {
    if (dc_[h - 1].isZero()) continue;
    OperatorMatrix ddelta = dc_[h - 1] * deltaC_[h];
    zeroCheck("comm-ddelta[h=" + std::to_string(h) + "]",
              ddelta * laplacian_[h] - laplacian_[h] * ddelta);
  }
  for (int h = 0; h < N; ++h) {
    if (dc_[h].isZero()) continue;
    OperatorMatrix deltad = deltaC_[h + 1] * dc_[h];
    zeroCheck("comm-deltad[h=" + std::to_string(h) + "]",
              deltad * laplacian_[h] - laplacian_[h] * deltad);
  }

  // ⋆ intertwines Δ_{R,h} and Δ_{R,N-h} up to a per-degree sign
  for (int h = 0; h <= N; ++h) {
    OperatorMatrix S = starOrthonormal(h);
    OperatorMatrix lhs = laplacianOrthonormal(N - h) * S;
    OperatorMatrix rhsPlus = S * laplacianOrthonormal(h);
    bool ok = (lhs - rhsPlus).isZero() || (lhs + rhsPlus).isZero();
    push("star-laplacian-duality[h=" + std::to_string(h) + "]", ok,
         ok ? "" : "no sign makes star conjugation match");
  }

  // the two Laplacian terms are homogeneous of the same order M_h
  for (int h = 0; h <= N; ++h) {
    bool ok = true;
    const auto sh = shape_[h];
    if (sh.dDeltaPow > 0 && sh.deltaDPow > 0)
      ok = (dc_[h - 1] * deltaC_[h]).power(sh.dDeltaPow).maxHomDegree() ==
           (deltaC_[h + 1] * dc_[h]).power(sh.deltaDPow).maxHomDegree();
    push("laplacian-order-balance[h=" + std::to_string(h) + "]", ok,
         ok ? "" : "term orders differ");
  }

  return report;
}

}  // namespace carnot
