#include "carnot/serialize.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace carnot {

OrderedJson algebraToJson(const StratifiedLieAlgebra& alg) {
  OrderedJson j;
  j["schemaVersion"] = kSchemaVersion;
  j["name"] = alg.name();
  j["N"] = alg.dim();
  j["step"] = alg.step();
  j["generators"] = alg.generators();
  j["layers"] = alg.layers();
  OrderedJson brackets = OrderedJson::array();
  for (const auto& b : alg.rawBrackets()) {
    OrderedJson jb;
    jb["i"] = b.i + 1;
    jb["j"] = b.j + 1;
    jb["k"] = b.k + 1;
    jb["c"] = rationalToString(b.c);
    brackets.push_back(jb);
  }
  j["brackets"] = brackets;
  return j;
}

StratifiedLieAlgebra algebraFromJson(const OrderedJson& j) {
  if (!j.contains("layers") || !j.contains("brackets"))
    throw ValidationError("algebra-schema", "algebra file must contain layers and brackets");
  std::vector<int> layers = j.at("layers").get<std::vector<int>>();
  std::vector<std::tuple<int, int, int, Rational>> brackets;
  for (const auto& jb : j.at("brackets")) {
    Rational c = jb.at("c").is_string() ? rationalFromString(jb.at("c").get<std::string>())
                                        : Rational(jb.at("c").get<long>());
    brackets.emplace_back(jb.at("i").get<int>() - 1, jb.at("j").get<int>() - 1,
                          jb.at("k").get<int>() - 1, c);
  }
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "user";
  StratifiedLieAlgebra alg(name, std::move(layers), brackets);
  alg.validate();
  return alg;
}

StratifiedLieAlgebra loadAlgebraFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("algebra-file", "cannot open algebra file '" + path + "'");
  OrderedJson j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("algebra-schema", std::string("malformed JSON: ") + e.what());
  }
  return algebraFromJson(j);
}

OrderedJson polynomialToJson(const Polynomial& p) {
  OrderedJson terms = OrderedJson::array();
  for (const auto& [mono, c] : p.terms()) {
    OrderedJson t;
    t["c"] = rationalToString(c);
    t["exponents"] = mono;
    terms.push_back(t);
  }
  return terms;
}

OrderedJson groupModelToJson(const GroupModel& g) {
  OrderedJson j;
  j["schemaVersion"] = kSchemaVersion;
  j["algebra"] = algebraToJson(g.algebra());
  j["convention"] = conventionName(g.convention());
  j["Q"] = g.homogeneousDimension();
  j["dilationExponents"] = g.algebra().dilationExponents();
  OrderedJson law = OrderedJson::array();
  for (const auto& p : g.groupLaw()) law.push_back(polynomialToJson(p));
  j["groupLaw"] = law;
  OrderedJson fields = OrderedJson::array();
  for (const auto& field : g.fields()) {
    OrderedJson row = OrderedJson::array();
    for (const auto& coef : field) row.push_back(polynomialToJson(coef));
    fields.push_back(row);
  }
  j["leftInvariantFields"] = fields;
  return j;
}

OrderedJson scalarToJson(const Scalar& s) {
  OrderedJson j;
  j["c"] = rationalToString(s.rational());
  if (s.radicand() != 1) j["sqrt"] = s.radicand();
  return j;
}

OrderedJson operatorToJson(const EnvelopingOperator& op) {
  OrderedJson terms = OrderedJson::array();
  for (const auto& [mono, c] : op.terms()) {
    OrderedJson t;
    t["coefficient"] = rationalToString(c.rational());
    if (c.radicand() != 1) t["sqrt"] = c.radicand();
    t["exponents"] = mono;
    terms.push_back(t);
  }
  return terms;
}

OrderedJson operatorMatrixToJson(const OperatorMatrix& m) {
  OrderedJson j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["sourceDegree"] = m.colTag().degree;
  j["targetDegree"] = m.rowTag().degree;
  j["sourceWeights"] = m.colTag().weights;
  j["targetWeights"] = m.rowTag().weights;
  OrderedJson entries = OrderedJson::array();
  for (int i = 0; i < m.rows(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(operatorToJson(m.at(i, k)));
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

OrderedJson ruminBasisToJson(const RuminComplex& cx) {
  OrderedJson degrees = OrderedJson::array();
  const auto& ext = cx.exterior();
  for (int h = 0; h <= cx.dim(); ++h) {
    OrderedJson jd;
    jd["degree"] = h;
    jd["dim"] = cx.basis().dim(h);
    jd["weights"] = cx.basis().weights[h];
    OrderedJson gram = OrderedJson::array();
    for (const auto& g : cx.basis().gram[h]) gram.push_back(rationalToString(g));
    jd["gram"] = gram;
    OrderedJson vecs = OrderedJson::array();
    for (const auto& v : cx.basis().vectors[h]) {
      OrderedJson jv = OrderedJson::array();
      for (const auto& [mask, c] : v.comps()) {
        OrderedJson t;
        t["c"] = rationalToString(c.asRational());
        t["covector"] = ext.basisName(h, ext.indexOf(h, mask));
        jv.push_back(t);
      }
      vecs.push_back(jv);
    }
    jd["basis"] = vecs;
    degrees.push_back(jd);
  }
  return degrees;
}

OrderedJson exponentTableToJson(const ExponentTable& t) {
  OrderedJson j;
  j["schemaVersion"] = kSchemaVersion;
  j["Q"] = t.Q;
  j["s"] = t.s;
  j["r"] = t.r;
  j["M"] = t.Mh;
  OrderedJson endpoints = OrderedJson::array();
  for (int h = 1; h <= static_cast<int>(t.s.size()); ++h)
    endpoints.push_back(rationalToString(t.poincareExponent(h, Rational(1))));
  j["l1PoincareExponents"] = endpoints;
  return j;
}

std::string operatorToLatex(const EnvelopingOperator& op) {
  if (op.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : op.terms()) {
    std::string cs = c.toLatex();
    bool neg = !cs.empty() && cs[0] == '-';
    if (!first) os << (neg ? "" : "+");
    first = false;
    bool unit = (cs == "1" || cs == "-1");
    if (unit)
      os << (neg ? "-" : "");
    else
      os << cs;
    bool any = false;
    for (size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      any = true;
      os << "X_{" << (i + 1) << "}";
      if (mono[i] > 1) os << "^{" << mono[i] << "}";
    }
    if (!any && unit) os << "1";
  }
  return os.str();
}

std::string operatorMatrixToLatex(const OperatorMatrix& m) {
  std::ostringstream os;
  os << "\\begin{pmatrix}\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      os << operatorToLatex(m.at(i, j));
      if (j + 1 < m.cols()) os << " & ";
    }
    if (i + 1 < m.rows()) os << " \\\\";
    os << "\n";
  }
  os << "\\end{pmatrix}";
  return os.str();
}

std::string algebraicMapToLatex(const AlgebraicMap& m, const ExteriorAlgebra& ext) {
  std::ostringstream os;
  os << "\\begin{pmatrix}\n";
  for (int i = 0; i < m.m.rows(); ++i) {
    for (int j = 0; j < m.m.cols(); ++j) {
      os << Scalar(m.m.at(i, j)).toLatex();
      if (j + 1 < m.m.cols()) os << " & ";
    }
    if (i + 1 < m.m.rows()) os << " \\\\";
    os << "\n";
  }
  os << "\\end{pmatrix}";
  (void)ext;
  return os.str();
}

std::string formBasisToLatex(const RuminComplex& cx, int degree) {
  std::ostringstream os;
  const auto& ext = cx.exterior();
  for (int i = 0; i < cx.basis().dim(degree); ++i) {
    if (i) os << ",\\; ";
    const auto& v = cx.basis().vectors[degree][i];
    Scalar scale = Scalar(1) / Scalar::sqrtOf(cx.basis().gram[degree][i]);
    bool first = true;
    if (!(scale == Scalar(1))) os << scale.toLatex() << "\\left(";
    for (const auto& [mask, c] : v.comps()) {
      std::string cs = c.toLatex();
      bool neg = !cs.empty() && cs[0] == '-';
      if (!first) os << (neg ? "" : "+");
      first = false;
      if (cs == "1")
        ;
      else if (cs == "-1")
        os << "-";
      else
        os << cs;
      os << ext.basisLatex(degree, ext.indexOf(degree, mask));
    }
    if (!(scale == Scalar(1))) os << "\\right)";
  }
  return os.str();
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int nvars;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ValidationError("polynomial-parse",
                          msg + " at position " + std::to_string(pos) + " in '" + s + "'");
  }

  Polynomial parseExpr() {
    Polynomial r = parseTerm();
    for (;;) {
      skip();
      if (eat('+'))
        r += parseTerm();
      else if (eat('-'))
        r -= parseTerm();
      else
        return r;
    }
  }
  Polynomial parseTerm() {
    Polynomial r = parseFactor();
    for (;;) {
      skip();
      if (eat('*')) {
        r *= parseFactor();
        continue;
      }
      // implicit multiplication: factor starting with x or (
      if (pos < s.size() && (s[pos] == 'x' || s[pos] == '(')) {
        r *= parseFactor();
        continue;
      }
      return r;
    }
  }
  Polynomial parseFactor() {
    Polynomial base = parseBase();
    skip();
    if (eat('^')) {
      skip();
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected exponent");
      int e = std::stoi(s.substr(start, pos - start));
      Polynomial r = Polynomial::constant(nvars, Rational(1));
      for (int k = 0; k < e; ++k) r *= base;
      return r;
    }
    return base;
  }
  Polynomial parseBase() {
    skip();
    if (eat('(')) {
      Polynomial r = parseExpr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (eat('-')) return -parseBase();
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected variable index after 'x'");
      int idx = std::stoi(s.substr(start, pos - start));
      if (idx < 1 || idx > nvars) fail("variable index out of range");
      return Polynomial::variable(nvars, idx - 1);
    }
    size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
      ++pos;
    if (start == pos) fail("expected number, variable or '('");
    return Polynomial::constant(nvars, rationalFromString(s.substr(start, pos - start)));
  }
};

}  // namespace

Polynomial parsePolynomial(const std::string& text, int nvars) {
  Parser p{text, 0, nvars};
  Polynomial r = p.parseExpr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

std::string algebraHash(const StratifiedLieAlgebra& alg, CoordConvention convention) {
  std::string canonical = algebraToJson(alg).dump() + "|" + conventionName(convention);
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

void atomicWriteFile(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ValidationError("output-file", "cannot write '" + tmp.string() + "'");
    out << contents;
  }
  fs::rename(tmp, target);
}

}  // namespace carnot
