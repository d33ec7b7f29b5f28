#include "carnot/uea.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>

namespace carnot {

UeaContext::UeaContext(StratifiedLieAlgebra alg, int degreeCap)
    : alg_(std::move(alg)), degreeCap_(degreeCap) {}

int UeaContext::weightedDegree(const PbwMono& m) const {
  int d = 0;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) d += alg_.layer(i) * m[i];
  return d;
}

int UeaContext::order(const PbwMono& m) {
  int s = 0;
  for (int e : m) s += e;
  return s;
}

UeaContext::Combo UeaContext::pushGenerator(int i, const PbwMono& k) const {
  int first = -1;
  for (int t = 0; t < static_cast<int>(k.size()); ++t)
    if (k[t] > 0) {
      first = t;
      break;
    }
  if (first < 0 || i <= first) {
    PbwMono m = k;
    m[i] += 1;
    return {{std::move(m), Rational(1)}};
  }
  const auto key = std::make_pair(i, k);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  // X_i X_a X^{K'} = X_a (X_i X^{K'}) + [X_i, X_a] X^{K'} with a = first < i
  PbwMono rest = k;
  rest[first] -= 1;
  std::map<PbwMono, Rational> acc;
  for (auto& [m, c] : pushGenerator(i, rest)) {
    PbwMono m2 = m;
    m2[first] += 1;  // a precedes every index in m
    acc[std::move(m2)] += c;
  }
  for (const auto& [w, cw] : alg_.bracket(i, first))
    for (auto& [m, c] : pushGenerator(w, rest)) acc[m] += cw * c;
  Combo result;
  result.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) result.emplace_back(m, c);
  {
    std::unique_lock lock(mutex_);
    memo_.emplace(key, result);
  }
  return result;
}

UeaContext::Combo UeaContext::mulMonomials(const PbwMono& j, const PbwMono& k) const {
  std::map<PbwMono, Rational> acc;
  acc[k] = 1;
  // apply the letters of X^J right-to-left
  for (int i = static_cast<int>(j.size()) - 1; i >= 0; --i) {
    for (int rep = 0; rep < j[i]; ++rep) {
      std::map<PbwMono, Rational> next;
      for (const auto& [m, c] : acc)
        for (const auto& [m2, c2] : pushGenerator(i, m)) next[m2] += c * c2;
      acc = std::move(next);
    }
  }
  Combo result;
  result.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) result.emplace_back(m, c);
  return result;
}

UeaContext::Combo UeaContext::wordToNormal(const std::vector<int>& word) const {
  std::map<PbwMono, Rational> acc;
  acc[PbwMono(alg_.dim(), 0)] = 1;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::map<PbwMono, Rational> next;
    for (const auto& [m, c] : acc)
      for (const auto& [m2, c2] : pushGenerator(*it, m)) next[m2] += c * c2;
    acc = std::move(next);
  }
  Combo result;
  for (auto& [m, c] : acc)
    if (c != 0) result.emplace_back(m, c);
  return result;
}

EnvelopingOperator EnvelopingOperator::zero(std::shared_ptr<const UeaContext> ctx) {
  return EnvelopingOperator(std::move(ctx));
}

EnvelopingOperator EnvelopingOperator::one(std::shared_ptr<const UeaContext> ctx) {
  EnvelopingOperator e(std::move(ctx));
  e.addTerm(PbwMono(e.ctx_->dim(), 0), Scalar(1));
  return e;
}

EnvelopingOperator EnvelopingOperator::generator(std::shared_ptr<const UeaContext> ctx, int i) {
  EnvelopingOperator e(std::move(ctx));
  PbwMono m(e.ctx_->dim(), 0);
  m[i] = 1;
  e.addTerm(m, Scalar(1));
  return e;
}

EnvelopingOperator EnvelopingOperator::fromWord(std::shared_ptr<const UeaContext> ctx,
                                                const std::vector<int>& word, const Scalar& coeff) {
  EnvelopingOperator e(ctx);
  for (const auto& [m, c] : ctx->wordToNormal(word)) e.addTerm(m, coeff * Scalar(c));
  return e;
}

void EnvelopingOperator::addTerm(const PbwMono& m, const Scalar& c) {
  if (c.isZero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

EnvelopingOperator EnvelopingOperator::operator-() const {
  EnvelopingOperator r(ctx_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

EnvelopingOperator& EnvelopingOperator::operator+=(const EnvelopingOperator& o) {
  if (!ctx_) ctx_ = o.ctx_;
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

EnvelopingOperator& EnvelopingOperator::operator-=(const EnvelopingOperator& o) {
  if (!ctx_) ctx_ = o.ctx_;
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

EnvelopingOperator operator*(const EnvelopingOperator& a, const EnvelopingOperator& b) {
  auto ctx = a.ctx_ ? a.ctx_ : b.ctx_;
  EnvelopingOperator r(ctx);
  if (!ctx) return r;
  const int cap = ctx->degreeCap();
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      if (ctx->weightedDegree(ma) + ctx->weightedDegree(mb) > cap)
        throw DegreeCapError("operator composition exceeds degree cap " + std::to_string(cap));
      Scalar c = ca * cb;
      for (const auto& [m, f] : ctx->mulMonomials(ma, mb)) r.addTerm(m, c * Scalar(f));
    }
  return r;
}

EnvelopingOperator EnvelopingOperator::scaled(const Scalar& c) const {
  EnvelopingOperator r(ctx_);
  if (c.isZero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

EnvelopingOperator EnvelopingOperator::adjoint() const {
  EnvelopingOperator r(ctx_);
  if (!ctx_) return r;
  for (const auto& [m, c] : terms_) {
    std::vector<int> letters = monomialLetters(m);
    std::reverse(letters.begin(), letters.end());
    Scalar sign = (UeaContext::order(m) % 2 == 0) ? Scalar(1) : Scalar(-1);
    for (const auto& [m2, f] : ctx_->wordToNormal(letters)) r.addTerm(m2, c * sign * Scalar(f));
  }
  return r;
}

int EnvelopingOperator::maxOrder() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, UeaContext::order(m));
  return d;
}

int EnvelopingOperator::maxHomDegree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, ctx_->weightedDegree(m));
  return d;
}

std::optional<int> EnvelopingOperator::homogeneousDegree() const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    int w = ctx_->weightedDegree(m);
    if (d && *d != w) return std::nullopt;
    d = w;
  }
  return d;
}

std::string EnvelopingOperator::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.toString();
    if (!first) os << " + ";
    first = false;
    bool unit = (c == Scalar(1)), negUnit = (c == Scalar(-1));
    bool hasLetter = UeaContext::order(m) > 0;
    if (negUnit && hasLetter)
      os << "-";
    else if (!unit || !hasLetter)
      os << cs << (hasLetter ? "*" : "");
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (m[i] == 0) continue;
      os << "X" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

EnvelopingOperator commutator(const EnvelopingOperator& p, const EnvelopingOperator& q) {
  return p * q - q * p;
}

std::vector<int> monomialLetters(const PbwMono& m) {
  std::vector<int> letters;
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    for (int r = 0; r < m[i]; ++r) letters.push_back(i);
  return letters;
}

namespace {

// letter -> word sum over horizontal letters, memoized per algebra call
void horizontalLetter(const StratifiedLieAlgebra& alg, int letter,
                      std::vector<std::optional<WordSum>>& memo) {
  if (memo[letter]) return;
  WordSum out;
  if (alg.layer(letter) == 1) {
    out.terms.push_back({Scalar(1), {letter}});
  } else {
    for (const auto& t : alg.horizontalBracketExpr(letter)) {
      horizontalLetter(alg, t.inner, memo);
      for (const auto& [c, w] : memo[t.inner]->terms) {
        std::vector<int> left{t.hi};
        left.insert(left.end(), w.begin(), w.end());
        out.terms.push_back({Scalar(t.coeff) * c, std::move(left)});
        std::vector<int> right = w;
        right.push_back(t.hi);
        out.terms.push_back({Scalar(-t.coeff) * c, std::move(right)});
      }
    }
  }
  memo[letter] = std::move(out);
}

}  // namespace

WordSum horizontalWords(const EnvelopingOperator& p) {
  const auto& alg = p.context()->algebra();
  std::vector<std::optional<WordSum>> memo(alg.dim());
  WordSum out;
  for (const auto& [m, c] : p.terms()) {
    // product over the letters of the monomial, each expanded horizontally
    std::vector<std::pair<Scalar, std::vector<int>>> acc{{c, {}}};
    for (int letter : monomialLetters(m)) {
      horizontalLetter(alg, letter, memo);
      std::vector<std::pair<Scalar, std::vector<int>>> next;
      for (const auto& [ca, wa] : acc)
        for (const auto& [cb, wb] : memo[letter]->terms) {
          std::vector<int> w = wa;
          w.insert(w.end(), wb.begin(), wb.end());
          next.push_back({ca * cb, std::move(w)});
        }
      acc = std::move(next);
    }
    out.terms.insert(out.terms.end(), acc.begin(), acc.end());
  }
  return out;
}

EnvelopingOperator normalize(std::shared_ptr<const UeaContext> ctx, const WordSum& w) {
  EnvelopingOperator r(ctx);
  for (const auto& [c, word] : w.terms)
    for (const auto& [m, f] : ctx->wordToNormal(word)) r.addTerm(m, c * Scalar(f));
  return r;
}

}  // namespace carnot
