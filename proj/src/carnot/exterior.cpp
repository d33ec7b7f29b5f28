#include "carnot/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

namespace carnot {

namespace {

// sign of θ_I ∧ θ_J as a reordering of θ_{I∪J}: (-1)^{#crossings}
int wedgeSign(uint64_t a, uint64_t b) {
  int crossings = 0;
  while (b) {
    uint64_t low = b & (~b + 1);
    int pos = std::countr_zero(low);
    crossings += std::popcount(a >> (pos + 1));
    b ^= low;
  }
  return crossings % 2 == 0 ? 1 : -1;
}

}  // namespace

ExteriorAlgebra::ExteriorAlgebra(std::shared_ptr<const StratifiedLieAlgebra> alg)
    : alg_(std::move(alg)) {
  const int N = alg_->dim();
  if (N > 20)
    throw ValidationError("exterior-dim",
                          "exterior algebra over dimension " + std::to_string(N) + " is too large");
  basis_.resize(N + 1);
  blocks_.resize(N + 1);
  index_.resize(N + 1);
  for (uint64_t mask = 0; mask < (uint64_t(1) << N); ++mask) {
    int h = std::popcount(mask);
    BasisElem e;
    e.mask = mask;
    e.weight = 0;
    for (int i = 0; i < N; ++i)
      if (mask >> i & 1) {
        e.indices.push_back(i);
        e.weight += alg_->layer(i);
      }
    basis_[h].push_back(std::move(e));
  }
  for (int h = 0; h <= N; ++h) {
    std::sort(basis_[h].begin(), basis_[h].end(),
              [](const BasisElem& a, const BasisElem& b) { return a.indices < b.indices; });
    std::stable_sort(basis_[h].begin(), basis_[h].end(),
                     [](const BasisElem& a, const BasisElem& b) { return a.weight < b.weight; });
    for (int i = 0; i < static_cast<int>(basis_[h].size()); ++i) {
      index_[h][basis_[h][i].mask] = i;
      if (blocks_[h].empty() || blocks_[h].back().weight != basis_[h][i].weight)
        blocks_[h].push_back({basis_[h][i].weight, i, 1});
      else
        blocks_[h].back().size += 1;
    }
  }
  // Maurer–Cartan term per covector: dθ_k = -Σ_{i<j} c^k_{ij} θ_i∧θ_j
  dTheta_.assign(N, Multivector(2));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (const auto& [k, c] : alg_->bracket(i, j))
        dTheta_[k].add((uint64_t(1) << i) | (uint64_t(1) << j), Scalar(-c));
}

int ExteriorAlgebra::weightOf(uint64_t mask) const {
  int w = 0;
  for (int i = 0; i < dim(); ++i)
    if (mask >> i & 1) w += alg_->layer(i);
  return w;
}

int ExteriorAlgebra::indexOf(int degree, uint64_t mask) const { return index_[degree].at(mask); }

std::string ExteriorAlgebra::basisName(int degree, int idx) const {
  if (degree == 0) return "1";
  std::ostringstream os;
  bool first = true;
  for (int i : basis_[degree][idx].indices) {
    if (!first) os << "^";
    first = false;
    os << "t" << (i + 1);
  }
  return os.str();
}

std::string ExteriorAlgebra::basisLatex(int degree, int idx) const {
  if (degree == 0) return "1";
  std::ostringstream os;
  bool first = true;
  for (int i : basis_[degree][idx].indices) {
    if (!first) os << "\\wedge ";
    first = false;
    os << "\\theta_{" << (i + 1) << "}";
  }
  return os.str();
}

Multivector Multivector::basisElement(int degree, uint64_t mask) {
  Multivector v(degree);
  v.add(mask, Scalar(1));
  return v;
}

void Multivector::add(uint64_t mask, const Scalar& c) {
  if (c.isZero()) return;
  auto it = comps_.find(mask);
  if (it == comps_.end()) {
    comps_.emplace(mask, c);
  } else {
    it->second += c;
    if (it->second.isZero()) comps_.erase(it);
  }
}

Multivector Multivector::operator-() const {
  Multivector r(degree_);
  for (const auto& [m, c] : comps_) r.comps_.emplace(m, -c);
  return r;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  assert(comps_.empty() || o.comps_.empty() || degree_ == o.degree_);
  if (comps_.empty()) degree_ = o.degree_;
  for (const auto& [m, c] : o.comps_) add(m, c);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  assert(comps_.empty() || o.comps_.empty() || degree_ == o.degree_);
  if (comps_.empty()) degree_ = o.degree_;
  for (const auto& [m, c] : o.comps_) add(m, -c);
  return *this;
}

Multivector Multivector::scaled(const Scalar& c) const {
  Multivector r(degree_);
  if (c.isZero()) return r;
  for (const auto& [m, v] : comps_) r.comps_.emplace(m, v * c);
  return r;
}

Scalar Multivector::dot(const Multivector& o) const {
  Scalar s(0);
  for (const auto& [m, c] : comps_) {
    auto it = o.comps_.find(m);
    if (it != o.comps_.end()) s += c * it->second;
  }
  return s;
}

Multivector wedge(const ExteriorAlgebra& ext, const Multivector& a, const Multivector& b) {
  if (a.degree() + b.degree() > ext.dim())
    throw ValidationError("degree-overflow", "wedge degree exceeds the dimension");
  Multivector r(a.degree() + b.degree());
  for (const auto& [ma, ca] : a.comps())
    for (const auto& [mb, cb] : b.comps()) {
      if (ma & mb) continue;
      Scalar c = ca * cb;
      if (wedgeSign(ma, mb) < 0) c = -c;
      r.add(ma | mb, c);
    }
  return r;
}

int hodgeSign(const ExteriorAlgebra& ext, uint64_t mask) {
  const uint64_t full = (uint64_t(1) << ext.dim()) - 1;
  return wedgeSign(mask, full & ~mask);
}

Multivector hodgeStar(const ExteriorAlgebra& ext, const Multivector& a) {
  const uint64_t full = (uint64_t(1) << ext.dim()) - 1;
  Multivector r(ext.dim() - a.degree());
  for (const auto& [m, c] : a.comps()) {
    Scalar s = c;
    if (hodgeSign(ext, m) < 0) s = -s;
    r.add(full & ~m, s);
  }
  return r;
}

Multivector applyD0(const ExteriorAlgebra& ext, const Multivector& a) {
  Multivector out(a.degree() + 1);
  if (a.degree() == 0 || a.degree() >= ext.dim()) return out;  // trivial ends
  for (const auto& [mask, coef] : a.comps()) {
    std::vector<int> idx;
    for (int i = 0; i < ext.dim(); ++i)
      if (mask >> i & 1) idx.push_back(i);
    for (size_t s = 0; s < idx.size(); ++s) {
      const Multivector& dth = ext.dTheta(idx[s]);
      if (dth.isZero()) continue;
      uint64_t prefix = 0, suffix = 0;
      for (size_t t = 0; t < s; ++t) prefix |= uint64_t(1) << idx[t];
      for (size_t t = s + 1; t < idx.size(); ++t) suffix |= uint64_t(1) << idx[t];
      Scalar sign = (s % 2 == 0) ? coef : -coef;
      Multivector term =
          wedge(ext, Multivector::basisElement(static_cast<int>(s), prefix),
                wedge(ext, dth, Multivector::basisElement(
                                    static_cast<int>(idx.size() - s - 1), suffix)));
      out += term.scaled(sign);
    }
  }
  return out;
}

AlgebraicMap buildD0(const ExteriorAlgebra& ext, int degree) {
  AlgebraicMap map;
  map.srcDegree = degree;
  map.dstDegree = degree + 1;
  map.m = RatMatrix(ext.dimOf(degree + 1), ext.dimOf(degree));
  for (int col = 0; col < ext.dimOf(degree); ++col) {
    Multivector img =
        applyD0(ext, Multivector::basisElement(degree, ext.basis(degree)[col].mask));
    for (const auto& [mask, c] : img.comps())
      map.m.at(ext.indexOf(degree + 1, mask), col) = c.asRational();
  }
  return map;
}

AlgebraicMap buildDelta0(const ExteriorAlgebra& ext, int degree) {
  AlgebraicMap map;
  map.srcDegree = degree;
  map.dstDegree = degree - 1;
  map.m = buildD0(ext, degree - 1).m.transpose();
  return map;
}

}  // namespace carnot
