#include "carnot/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace carnot {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.addTerm(Mono(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index, int power) {
  Polynomial p(nvars);
  Mono m(nvars, 0);
  m[index] = power;
  p.addTerm(m, Rational(1));
  return p;
}

void Polynomial::addTerm(const Mono& mono, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.nvars_);
  Polynomial::Mono m(a.nvars_, 0);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
      r.addTerm(m, ca * cb);
    }
  return r;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Mono d = m;
    d[var] -= 1;
    r.addTerm(d, c * m[var]);
  }
  return r;
}

Rational Polynomial::eval(const std::vector<Rational>& x) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < m[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

double Polynomial::evalDouble(const std::vector<double>& x) const {
  double sum = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < m[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& subs) const {
  const int outVars = subs.empty() ? 0 : subs[0].nvars();
  Polynomial r(outVars);
  for (const auto& [m, c] : terms_) {
    Polynomial t = Polynomial::constant(outVars, c);
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < m[i]; ++k) t *= subs[i];
    r += t;
  }
  return r;
}

Polynomial Polynomial::embed(int newNvars, int shift) const {
  Polynomial r(newNvars);
  Mono m2(newNvars, 0);
  for (const auto& [m, c] : terms_) {
    std::fill(m2.begin(), m2.end(), 0);
    for (int i = 0; i < nvars_; ++i) m2[shift + i] = m[i];
    r.addTerm(m2, c);
  }
  return r;
}

int Polynomial::totalDegree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

std::optional<int> Polynomial::weightedDegree(const std::vector<int>& w) const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int i = 0; i < nvars_; ++i) s += w[i] * m[i];
    d = d ? std::max(*d, s) : s;
  }
  return d;
}

bool Polynomial::isWeightedHomogeneous(const std::vector<int>& w, int d) const {
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int i = 0; i < nvars_; ++i) s += w[i] * m[i];
    if (s != d) return false;
  }
  return true;
}

std::string Polynomial::toString(const std::vector<std::string>& varNames) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool hasVar = std::any_of(m.begin(), m.end(), [](int e) { return e > 0; });
    if (a != 1 || !hasVar) os << a.get_str();
    bool needStar = (a != 1);
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (needStar) os << "*";
      needStar = true;
      if (i < static_cast<int>(varNames.size()))
        os << varNames[i];
      else
        os << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace carnot
