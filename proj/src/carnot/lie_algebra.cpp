#include "carnot/lie_algebra.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "carnot/linalg.hpp"

namespace carnot {

namespace {

// Hall set on m generators up to the given degree. Elements are ordered by
// creation (degree-major); a bracket (u,v) is in the set iff u < v and v is
// either a generator or v = (a,b) with a <= u.
struct HallSet {
  struct Elem {
    int deg;
    int left = -1, right = -1;  // -1,-1 for generators
  };
  std::vector<Elem> elems;
  std::map<std::pair<int, int>, int> pairIndex;
  int step;
  std::map<std::pair<int, int>, std::map<int, Rational>> memo;

  HallSet(int m, int stepIn) : step(stepIn) {
    for (int g = 0; g < m; ++g) elems.push_back({1, -1, -1});
    for (int n = 2; n <= step; ++n) {
      const int existing = static_cast<int>(elems.size());
      for (int v = 0; v < existing; ++v) {
        for (int u = 0; u < v; ++u) {
          if (elems[u].deg + elems[v].deg != n) continue;
          const bool vIsGen = elems[v].left < 0;
          if (!vIsGen && elems[v].left > u) continue;
          pairIndex[{u, v}] = static_cast<int>(elems.size());
          elems.push_back({n, u, v});
        }
      }
    }
  }

  std::map<int, Rational> negate(std::map<int, Rational> c) {
    for (auto& [k, v] : c) v = -v;
    return c;
  }

  // [u, v] rewritten into the Hall basis via the Jacobi identity
  // [u,[a,b]] = [[u,a],b] + [a,[u,b]] whenever (u,v) is not itself a Hall pair.
  std::map<int, Rational> expand(int u, int v, int depth = 0) {
    if (depth > 256) throw ValidationError("hall-rewrite", "hall rewriting did not terminate");
    if (elems[u].deg + elems[v].deg > step) return {};
    if (u == v) return {};
    if (u > v) return negate(expand(v, u, depth + 1));
    auto key = std::make_pair(u, v);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::map<int, Rational> result;
    if (auto it = pairIndex.find(key); it != pairIndex.end()) {
      result[it->second] = 1;
    } else {
      const int a = elems[v].left, b = elems[v].right;
      assert(a >= 0 && a > u);
      auto ua = expand(u, a, depth + 1);
      auto ub = expand(u, b, depth + 1);
      for (const auto& [w, c] : ua)
        for (const auto& [k, d] : expand(w, b, depth + 1)) result[k] += c * d;
      for (const auto& [w, c] : ub)
        for (const auto& [k, d] : expand(a, w, depth + 1)) result[k] += c * d;
      std::erase_if(result, [](const auto& kv) { return kv.second == 0; });
    }
    memo[key] = result;
    return result;
  }
};

}  // namespace

StratifiedLieAlgebra::StratifiedLieAlgebra(
    std::string name, std::vector<int> layers,
    const std::vector<std::tuple<int, int, int, Rational>>& brackets) {
  name_ = std::move(name);
  layer_ = std::move(layers);
  N_ = static_cast<int>(layer_.size());
  step_ = layer_.empty() ? 0 : *std::max_element(layer_.begin(), layer_.end());
  m1_ = static_cast<int>(std::count(layer_.begin(), layer_.end(), 1));
  for (const auto& [i, j, k, c] : brackets) {
    if (i < 0 || j < 0 || k < 0 || i >= N_ || j >= N_ || k >= N_)
      throw ValidationError("bracket-index", "bracket index out of range");
    if (i == j) throw ValidationError("bracket-index", "bracket with i == j");
    if (c == 0) continue;
    if (i < j)
      raw_.push_back({i, j, k, c});
    else
      raw_.push_back({j, i, k, -c});
  }
  buildTables();
}

long StratifiedLieAlgebra::wittDimension(int m, int n) {
  // necklace polynomial (1/n) sum_{d|n} mu(d) m^{n/d}
  auto moebius = [](int d) {
    int result = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      d /= p;
      if (d % p == 0) return 0;
      result = -result;
    }
    if (d > 1) result = -result;
    return result;
  };
  long sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    long pw = 1;
    for (int e = 0; e < n / d; ++e) pw *= m;
    sum += moebius(d) * pw;
  }
  return sum / n;
}

StratifiedLieAlgebra StratifiedLieAlgebra::freeNilpotent(int generators, int step, int basisCap) {
  if (generators < 1 || step < 1)
    throw ValidationError("free-nilpotent-args", "need generators >= 1 and step >= 1");
  long total = 0;
  for (int n = 1; n <= step; ++n) {
    total += wittDimension(generators, n);
    if (total > basisCap)
      throw ValidationError("basis-cap", "free nilpotent basis size " + std::to_string(total) +
                                             " exceeds cap " + std::to_string(basisCap));
  }
  if (generators == 1) step = 1;  // brackets all vanish; the line
  HallSet hall(generators, step);
  const int N = static_cast<int>(hall.elems.size());
  std::vector<int> layers(N);
  for (int i = 0; i < N; ++i) layers[i] = hall.elems[i].deg;
  std::vector<std::tuple<int, int, int, Rational>> brackets;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (const auto& [k, c] : hall.expand(i, j)) brackets.emplace_back(i, j, k, c);
  StratifiedLieAlgebra alg("free(" + std::to_string(generators) + "," + std::to_string(step) + ")",
                           std::move(layers), brackets);
  alg.validate();
  return alg;
}

StratifiedLieAlgebra StratifiedLieAlgebra::preset(const std::string& name) {
  auto R = [](long n) { return Rational(n); };
  if (name == "cartan") {
    auto alg = freeNilpotent(2, 3);
    alg.name_ = "cartan";
    return alg;
  }
  if (name == "heisenberg-1") {
    StratifiedLieAlgebra alg("heisenberg-1", {1, 1, 2}, {{0, 1, 2, R(1)}});
    alg.validate();
    return alg;
  }
  if (name == "engel") {
    StratifiedLieAlgebra alg("engel", {1, 1, 2, 3}, {{0, 1, 2, R(1)}, {0, 2, 3, R(1)}});
    alg.validate();
    return alg;
  }
  if (name.rfind("abelian-", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(8));
    } catch (...) {
      n = 0;
    }
    if (n < 1) throw ValidationError("preset", "bad abelian preset '" + name + "'");
    StratifiedLieAlgebra alg(name, std::vector<int>(n, 1), {});
    alg.validate();
    return alg;
  }
  throw ValidationError("preset", "unknown preset '" + name + "'");
}

void StratifiedLieAlgebra::buildTables() {
  table_.assign(N_, std::vector<SparseVec>(N_));
  for (const auto& rb : raw_) {
    bool found = false;
    for (auto& [k, c] : table_[rb.i][rb.j])
      if (k == rb.k) {
        c += rb.c;
        found = true;
      }
    if (!found) table_[rb.i][rb.j].push_back({rb.k, rb.c});
  }
  for (auto& row : table_)
    for (auto& sv : row) {
      std::erase_if(sv, [](const auto& p) { return p.second == 0; });
      std::sort(sv.begin(), sv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  computeHorizontalExprs();
}

int StratifiedLieAlgebra::layerDim(int ell) const {
  return static_cast<int>(std::count(layer_.begin(), layer_.end(), ell));
}

long StratifiedLieAlgebra::homogeneousDimension() const {
  return std::accumulate(layer_.begin(), layer_.end(), 0L);
}

StratifiedLieAlgebra::SparseVec StratifiedLieAlgebra::bracket(int i, int j) const {
  if (i == j) return {};
  if (i < j) return table_[i][j];
  SparseVec v = table_[j][i];
  for (auto& [k, c] : v) c = -c;
  return v;
}

StratifiedLieAlgebra::SparseVec StratifiedLieAlgebra::bracket(const SparseVec& a,
                                                              const SparseVec& b) const {
  std::map<int, Rational> acc;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b)
      for (const auto& [k, ck] : bracket(i, j)) acc[k] += ci * cj * ck;
  SparseVec out;
  for (const auto& [k, c] : acc)
    if (c != 0) out.push_back({k, c});
  return out;
}

const std::vector<StratifiedLieAlgebra::BracketTerm>& StratifiedLieAlgebra::horizontalBracketExpr(
    int k) const {
  return horizExpr_[k];
}

void StratifiedLieAlgebra::computeHorizontalExprs() {
  horizExpr_.assign(N_, {});
  for (int ell = 2; ell <= step_; ++ell) {
    std::vector<int> targets, horiz, inner;
    for (int i = 0; i < N_; ++i) {
      if (layer_[i] == ell) targets.push_back(i);
      if (layer_[i] == 1) horiz.push_back(i);
      if (layer_[i] == ell - 1) inner.push_back(i);
    }
    if (targets.empty()) continue;
    // rows: candidate brackets [X_h, X_w]; columns: layer-ell coordinates
    std::vector<std::pair<int, int>> pairs;
    for (int h : horiz)
      for (int w : inner) pairs.push_back({h, w});
    RatMatrix A(static_cast<int>(pairs.size()), static_cast<int>(targets.size()));
    for (int r = 0; r < static_cast<int>(pairs.size()); ++r)
      for (const auto& [k, c] : bracket(pairs[r].first, pairs[r].second))
        for (int cidx = 0; cidx < static_cast<int>(targets.size()); ++cidx)
          if (targets[cidx] == k) A.at(r, cidx) = c;
    RatMatrix At = A.transpose();
    for (int cidx = 0; cidx < static_cast<int>(targets.size()); ++cidx) {
      std::vector<Rational> e(targets.size(), Rational(0));
      e[cidx] = 1;
      auto sol = At.solve(e);
      if (!sol) {
        horizExpr_[targets[cidx]].clear();  // reported by validate() as "stratification"
        continue;
      }
      for (size_t r = 0; r < pairs.size(); ++r)
        if ((*sol)[r] != 0)
          horizExpr_[targets[cidx]].push_back({(*sol)[r], pairs[r].first, pairs[r].second});
    }
  }
}

void StratifiedLieAlgebra::validate() const {
  if (N_ == 0) throw ValidationError("empty", "algebra has no basis");
  for (int i = 0; i < N_; ++i)
    if (layer_[i] < 1 || layer_[i] > step_)
      throw ValidationError("layer-range", "layer out of range at index " + std::to_string(i));
  for (int i = 0; i + 1 < N_; ++i)
    if (layer_[i] > layer_[i + 1])
      throw ValidationError("layer-sorted", "basis must be sorted by layer");
  for (int ell = 1; ell <= step_; ++ell)
    if (layerDim(ell) == 0)
      throw ValidationError("layer-range", "empty layer " + std::to_string(ell));
  if (m1_ == 0) throw ValidationError("generator-count", "no horizontal generators");

  // grading: c^k_{ij} = 0 unless layer(k) = layer(i)+layer(j)
  for (int i = 0; i < N_; ++i)
    for (int j = i + 1; j < N_; ++j)
      for (const auto& [k, c] : table_[i][j])
        if (layer_[k] != layer_[i] + layer_[j])
          throw ValidationError("grading", "bracket [" + std::to_string(i + 1) + "," +
                                               std::to_string(j + 1) + "] violates the grading");

  // Jacobi identity on all basis triples
  for (int i = 0; i < N_; ++i)
    for (int j = i + 1; j < N_; ++j)
      for (int k = j + 1; k < N_; ++k) {
        std::map<int, Rational> acc;
        auto addTriple = [&](int a, int b, int c) {
          for (const auto& [w, cw] : bracket(b, c))
            for (const auto& [t, ct] : bracket(a, w)) acc[t] += cw * ct;
        };
        addTriple(i, j, k);
        addTriple(j, k, i);
        addTriple(k, i, j);
        for (const auto& [t, c] : acc)
          if (c != 0)
            throw ValidationError("jacobi", "jacobi identity fails on triple (" +
                                                std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                "," + std::to_string(k + 1) + ")");
      }

  // stratification: V_{ell} = [V_1, V_{ell-1}] for ell >= 2, witnessed by the
  // horizontal bracket expressions computed at construction.
  for (int k = 0; k < N_; ++k) {
    if (layer_[k] < 2) continue;
    if (horizExpr_[k].empty())
      throw ValidationError("stratification",
                            "layer-" + std::to_string(layer_[k]) + " element X" +
                                std::to_string(k + 1) + " is not in [V1, V" +
                                std::to_string(layer_[k] - 1) + "]");
    // sanity: the expression really evaluates to X_k
    std::map<int, Rational> acc;
    for (const auto& t : horizExpr_[k])
      for (const auto& [w, c] : bracket(t.hi, t.inner)) acc[w] += t.coeff * c;
    acc[k] -= 1;
    for (const auto& [w, c] : acc)
      if (c != 0) throw ValidationError("stratification", "inconsistent bracket expression");
  }
}

}  // namespace carnot
