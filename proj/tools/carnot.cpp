// carnot: build stratified groups and their Rumin complexes, dump the
// operators, and run the verification suites.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "carnot/calculus.hpp"
#include "carnot/fixtures.hpp"
#include "carnot/numeric.hpp"
#include "carnot/serialize.hpp"

namespace {

using namespace carnot;

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitContract = 3;

struct RunConfig {
  std::string preset;
  std::string algebraFile;
  std::string convention = "ordered-exp-descending";
  std::string format = "json";
  std::string outPath;
  unsigned long seed = 20240901;
};

StratifiedLieAlgebra loadAlgebra(const RunConfig& cfg) {
  if (!cfg.algebraFile.empty()) return loadAlgebraFile(cfg.algebraFile);
  if (!cfg.preset.empty()) return StratifiedLieAlgebra::preset(cfg.preset);
  throw ValidationError("config", "need --preset or --algebra");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.outPath.empty()) {
    std::cout << text << "\n";
  } else {
    atomicWriteFile(cfg.outPath, text + "\n");
  }
}

std::optional<std::string> cachePath(const StratifiedLieAlgebra& alg, CoordConvention conv,
                                     const std::string& kind) {
  const char* dir = std::getenv("CARNOT_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::string(dir) + "/" + algebraHash(alg, conv) + "-" + kind + ".json";
}

int cmdGroup(const RunConfig& cfg) {
  StratifiedLieAlgebra alg = loadAlgebra(cfg);
  auto ctx = std::make_shared<UeaContext>(alg);
  GroupModel g(ctx, conventionFromName(cfg.convention));
  g.verifyConstruction();
  emit(cfg, groupModelToJson(g).dump(2));
  return kExitOk;
}

int cmdComplex(const RunConfig& cfg, const std::string& dump) {
  StratifiedLieAlgebra alg = loadAlgebra(cfg);
  auto conv = conventionFromName(cfg.convention);
  auto cache = cachePath(alg, conv, "complex-" + dump + "-" + cfg.format);
  if (cache && std::filesystem::exists(*cache)) {
    std::ifstream in(*cache);
    std::stringstream ss;
    ss << in.rdbuf();
    emit(cfg, ss.str());
    return kExitOk;
  }
  auto ctx = std::make_shared<UeaContext>(alg);
  RuminComplex cx(ctx);
  const int N = cx.dim();

  std::string text;
  if (cfg.format == "latex") {
    std::ostringstream os;
    for (const auto& what : {"basis", "dc", "deltac", "laplacians"}) {
      if (dump.find(what) == std::string::npos) continue;
      if (std::string(what) == "basis") {
        for (int h = 0; h <= N; ++h)
          os << "% E0^" << h << "\n$" << formBasisToLatex(cx, h) << "$\n";
      } else if (std::string(what) == "dc") {
        for (int h = 0; h < N; ++h)
          os << "% d_c : E_0^" << h << " -> E_0^" << h + 1 << "\n"
             << operatorMatrixToLatex(cx.dcOrthonormal(h)) << "\n";
      } else if (std::string(what) == "deltac") {
        for (int h = 1; h <= N; ++h)
          os << "% delta_c : E_0^" << h << " -> E_0^" << h - 1 << "\n"
             << operatorMatrixToLatex(cx.deltaCOrthonormal(h)) << "\n";
      } else {
        for (int h = 0; h <= N; ++h)
          os << "% Delta_{R," << h << "} (order " << cx.laplacianOrder(h) << ")\n"
             << operatorMatrixToLatex(cx.laplacianOrthonormal(h)) << "\n";
      }
    }
    text = os.str();
  } else {
    OrderedJson j;
    j["schemaVersion"] = kSchemaVersion;
    j["group"] = alg.name();
    j["convention"] = conventionName(conv);
    j["Q"] = alg.homogeneousDimension();
    j["E0dims"] = OrderedJson::array();
    for (int h = 0; h <= N; ++h) j["E0dims"].push_back(cx.basis().dim(h));
    if (dump.find("basis") != std::string::npos) j["E0"] = ruminBasisToJson(cx);
    if (dump.find("pie0") != std::string::npos) {
      OrderedJson arr = OrderedJson::array();
      for (int h = 0; h <= N; ++h) {
        OrderedJson m = OrderedJson::array();
        for (int i = 0; i < cx.piE0(h).m.rows(); ++i) {
          OrderedJson row = OrderedJson::array();
          for (int k = 0; k < cx.piE0(h).m.cols(); ++k)
            row.push_back(rationalToString(cx.piE0(h).m.at(i, k)));
          m.push_back(row);
        }
        arr.push_back(m);
      }
      j["piE0"] = arr;
    }
    if (dump.find("dc") != std::string::npos) {
      OrderedJson arr = OrderedJson::array();
      for (int h = 0; h < N; ++h) arr.push_back(operatorMatrixToJson(cx.dcOrthonormal(h)));
      j["dc"] = arr;
    }
    if (dump.find("deltac") != std::string::npos) {
      OrderedJson arr = OrderedJson::array();
      for (int h = 1; h <= N; ++h) arr.push_back(operatorMatrixToJson(cx.deltaCOrthonormal(h)));
      j["deltac"] = arr;
      // per-degree sign relating δ_c to ⋆ d_c ⋆ (degree h source)
      OrderedJson signs = OrderedJson::array();
      for (int h = 1; h <= N; ++h) signs.push_back((N * (h + 1) + 1) % 2 == 0 ? 1 : -1);
      j["deltacStarSign"] = signs;
    }
    if (dump.find("laplacians") != std::string::npos) {
      OrderedJson arr = OrderedJson::array();
      for (int h = 0; h <= N; ++h) arr.push_back(operatorMatrixToJson(cx.laplacianOrthonormal(h)));
      j["laplacians"] = arr;
      j["laplacianOrders"] = cx.laplacianOrders();
    }
    text = j.dump(2);
  }
  if (cache) atomicWriteFile(*cache, text);
  emit(cfg, text);
  return kExitOk;
}

int cmdCheck(const RunConfig& cfg, bool doIdentities, bool doFixture, bool doLeibniz,
             bool doNumeric, const std::string& fixtureFile, int gridPoints, int trials) {
  StratifiedLieAlgebra alg = loadAlgebra(cfg);
  auto ctx = std::make_shared<UeaContext>(alg);
  RuminComplex cx(ctx);
  bool anyFail = false;
  OrderedJson report;
  report["schemaVersion"] = kSchemaVersion;
  report["group"] = alg.name();
  OrderedJson items = OrderedJson::array();
  auto record = [&](const std::string& suite, const std::string& name, bool pass,
                    const std::string& detail) {
    OrderedJson it;
    it["suite"] = suite;
    it["name"] = name;
    it["pass"] = pass;
    if (!detail.empty()) it["detail"] = detail;
    items.push_back(it);
    if (!pass) anyFail = true;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << suite << "] " << name
              << (detail.empty() ? "" : (": " + detail)) << "\n";
  };

  if (doIdentities) {
    auto rep = cx.checkIdentities();
    for (const auto& it : rep.items) record("identities", it.name, it.pass, it.detail);
  }
  if (doFixture) {
    if (alg.name() == "cartan") {
      DcFixture fixture = fixtureFile.empty()
                              ? loadDcFixtureFromText(ctx, embeddedCartanFixture())
                              : loadDcFixture(ctx, fixtureFile);
      auto cmp = compareWithFixture(cx, fixture);
      for (const auto& t : cmp.tiers) record("fixture", t.name, t.pass, t.detail);
    } else {
      std::cout << "SKIP [fixture] only the cartan preset has a printed fixture\n";
    }
  }
  if (doLeibniz) {
    GroupModel g(ctx, conventionFromName(cfg.convention));
    auto rep = checkLeibnizStructure(cx, g, cfg.seed);
    for (const auto& it : rep.items) record("leibniz", it.name, it.pass, it.detail);
  }
  if (doNumeric) {
    GroupModel g(ctx, conventionFromName(cfg.convention));
    QuadratureGrid grid;
    grid.box = Box::cube(cx.dim(), Rational(-1), Rational(1));
    grid.pointsPerAxis = gridPoints;
    grid.rule = QuadratureRule::GaussLegendre;
    for (int h = 1; h <= cx.dim(); ++h) {
      if (cx.basis().dim(h - 1) == 0 || cx.basis().dim(h) == 0 || cx.dc(h - 1).isZero()) continue;
      int bumpExp = cx.dc(h - 1).maxHomDegree() + 1;
      auto res = adjointnessCheck(cx, g, h, trials, grid, bumpExp, cfg.seed + h);
      bool pass = res.maxRelError < 1e-6;
      record("numeric", "adjointness[h=" + std::to_string(h) + "]", pass,
             "maxRelErr=" + std::to_string(res.maxRelError));
    }
    for (int h = 0; h + 1 < cx.dim(); ++h) {
      if (cx.dc(h).isZero() || cx.dc(h + 1).isZero()) continue;
      double res = dcSquaredPointwiseResidual(cx, g, h, 200, cfg.seed + 100 + h);
      record("numeric", "dc-squared-pointwise[h=" + std::to_string(h) + "]", res < 1e-9,
             "residual=" + std::to_string(res));
    }
  }
  report["items"] = items;
  report["pass"] = !anyFail;
  if (!cfg.outPath.empty()) atomicWriteFile(cfg.outPath, report.dump(2) + "\n");
  return anyFail ? kExitIdentityFailure : kExitOk;
}

int cmdLeibniz(const RunConfig& cfg, int degree, const std::string& zetaText,
               const std::string& opName) {
  StratifiedLieAlgebra alg = loadAlgebra(cfg);
  auto ctx = std::make_shared<UeaContext>(alg);
  RuminComplex cx(ctx);
  GroupModel g(ctx, conventionFromName(cfg.convention));
  Polynomial zeta = parsePolynomial(zetaText, alg.dim());

  OperatorMatrix op;
  if (opName == "dc") {
    op = cx.dc(degree);
  } else if (opName == "deltac") {
    op = cx.deltaC(degree);
  } else if (opName == "dcdeltac") {
    op = cx.dc(degree - 1) * cx.deltaC(degree);
  } else {
    throw ValidationError("config", "unknown operator '" + opName + "'");
  }
  LeibnizDecomposition dec = leibnizCommutator(op, zeta, g);

  OrderedJson j;
  j["schemaVersion"] = kSchemaVersion;
  j["group"] = alg.name();
  j["operator"] = opName;
  j["degree"] = degree;
  j["zeta"] = zetaText;
  j["order"] = dec.order;
  OrderedJson groups = OrderedJson::array();
  for (int jj = 0; jj < dec.groupCount(); ++jj) {
    OrderedJson gj;
    gj["zetaDerivativeOrder"] = jj + 1;
    gj["operatorOrder"] = dec.groupOrder(jj);
    gj["zero"] = dec.groupIsZero(jj);
    OrderedJson entries = OrderedJson::array();
    for (const auto& row : dec.groups[jj]) {
      OrderedJson jrow = OrderedJson::array();
      for (const auto& pco : row) {
        OrderedJson terms = OrderedJson::array();
        for (const auto& t : pco.terms) {
          if (t.coef.isZero()) continue;
          OrderedJson jt;
          jt["coef"] = t.coef.toString();
          OrderedJson w = OrderedJson::array();
          for (int letter : t.word) w.push_back(letter + 1);
          jt["word"] = w;
          terms.push_back(jt);
        }
        jrow.push_back(terms);
      }
      entries.push_back(jrow);
    }
    gj["entries"] = entries;
    groups.push_back(gj);
  }
  j["groups"] = groups;
  emit(cfg, j.dump(2));
  return kExitOk;
}

int cmdExponents(const RunConfig& cfg, const std::string& pText) {
  StratifiedLieAlgebra alg = loadAlgebra(cfg);
  auto ctx = std::make_shared<UeaContext>(alg);
  RuminComplex cx(ctx);
  ExponentTable t = ExponentTable::fromComplex(cx);
  OrderedJson j = exponentTableToJson(t);
  if (!pText.empty()) {
    Rational p = rationalFromString(pText);
    OrderedJson q = OrderedJson::array();
    for (int h = 1; h <= static_cast<int>(t.s.size()); ++h) {
      OrderedJson e;
      e["h"] = h;
      try {
        e["q"] = rationalToString(t.poincareExponent(h, p));
      } catch (const ValidationError&) {
        e["q"] = nullptr;  // hypothesis 1 <= p < Q/s_h fails
      }
      q.push_back(e);
    }
    j["p"] = pText;
    j["q"] = q;
  }
  if (cfg.format == "text") {
    std::ostringstream os;
    os << "Q = " << t.Q << "\n h   s_h  r_h  q_h(p=1)\n";
    for (int h = 1; h <= static_cast<int>(t.s.size()); ++h) {
      os << " " << h << "   " << t.sOf(h) << "    "
         << (h <= static_cast<int>(t.r.size()) ? std::to_string(t.rOf(h)) : "-") << "    "
         << rationalToString(t.poincareExponent(h, Rational(1))) << "\n";
    }
    emit(cfg, os.str());
  } else {
    emit(cfg, j.dump(2));
  }
  return kExitOk;
}

int cmdNumcheck(const RunConfig& cfg, int degree, int trials, int gridPoints,
                const std::string& rule, unsigned long samples, int bumpExp) {
  StratifiedLieAlgebra alg = loadAlgebra(cfg);
  auto ctx = std::make_shared<UeaContext>(alg);
  RuminComplex cx(ctx);
  GroupModel g(ctx, conventionFromName(cfg.convention));
  QuadratureGrid grid;
  grid.box = Box::cube(cx.dim(), Rational(-1), Rational(1));
  grid.pointsPerAxis = gridPoints;
  if (rule == "gauss") {
    grid.rule = QuadratureRule::GaussLegendre;
  } else if (rule == "midpoint") {
    grid.rule = QuadratureRule::Midpoint;
  } else if (rule == "mc") {
    grid.mcSamples = samples;
    grid.mcSeed = cfg.seed;
  } else {
    throw ValidationError("config", "unknown rule '" + rule + "'");
  }
  if (bumpExp <= 0) bumpExp = cx.dc(degree - 1).maxHomDegree() + 1;
  auto res = adjointnessCheck(cx, g, degree, trials, grid, bumpExp, cfg.seed);
  // the acceptance tolerance belongs to the Gauss rule; the low-order and
  // stochastic rules only get sanity gates
  double tolerance = rule == "gauss" ? 1e-6 : (rule == "midpoint" ? 1e-3 : 1e-1);
  OrderedJson j;
  j["schemaVersion"] = kSchemaVersion;
  j["identity"] = "adjointness";
  j["group"] = alg.name();
  j["degree"] = degree;
  j["trials"] = res.trials;
  j["rule"] = rule;
  j["gridPointsPerAxis"] = gridPoints;
  j["bumpExponent"] = bumpExp;
  j["maxRelErr"] = res.maxRelError;
  j["tolerance"] = tolerance;
  emit(cfg, j.dump(2));
  return res.maxRelError < tolerance ? kExitOk : kExitIdentityFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratified groups and their Rumin complexes, symbolically"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--preset,--group", cfg.preset,
                    "named preset: abelian-<n>, heisenberg-1, engel, cartan");
    sub->add_option("--algebra", cfg.algebraFile, "path to an algebra JSON file");
    sub->add_option("--convention", cfg.convention,
                    "bch-first-kind or ordered-exp-descending");
    sub->add_option("--format", cfg.format, "json, latex or text");
    sub->add_option("--out", cfg.outPath, "write output to this file (atomic)");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
  };

  auto* group = app.add_subcommand("group", "build and dump a group model");
  addCommon(group);

  auto* complexCmd = app.add_subcommand("complex", "build and dump the Rumin complex");
  addCommon(complexCmd);
  std::string dump = "dc";
  complexCmd->add_option("--dump", dump, "comma list: basis,pie0,dc,deltac,laplacians");

  auto* check = app.add_subcommand("check", "run verification suites");
  addCommon(check);
  bool all = false, identities = false, fixture = false, leibniz = false, numeric = false;
  std::string fixtureFile;
  int gridPoints = 8, trials = 5;
  check->add_flag("--all", all, "run every suite");
  check->add_flag("--identities", identities, "operator identity suite");
  check->add_flag("--fixture", fixture, "printed-matrix fixture comparison");
  check->add_flag("--leibniz", leibniz, "Leibniz structural suite");
  check->add_flag("--numeric", numeric, "numeric adjointness cross-check");
  check->add_option("--fixture-file", fixtureFile, "fixture JSON (default: embedded)");
  check->add_option("--grid", gridPoints, "quadrature points per axis for --numeric");
  check->add_option("--trials", trials, "trials per degree for --numeric");

  auto* leibnizCmd = app.add_subcommand("leibniz", "commutator decomposition [P, zeta]");
  addCommon(leibnizCmd);
  int degree = 0;
  std::string zeta = "x1", opName = "dc";
  leibnizCmd->add_option("--degree", degree, "source form degree h")->required();
  leibnizCmd->add_option("--zeta", zeta, "polynomial in x1..xN")->required();
  leibnizCmd->add_option("--op", opName, "dc, deltac or dcdeltac");

  auto* exponents = app.add_subcommand("exponents", "Sobolev/Poincare exponent table");
  addCommon(exponents);
  std::string pText;
  exponents->add_option("--p", pText, "rational p; prints q_h = pQ/(Q - s_h p)");

  auto* numcheck = app.add_subcommand("numcheck", "numeric adjointness check");
  addCommon(numcheck);
  int ncDegree = 1, ncTrials = 20, ncGrid = 24, ncBump = 0;
  std::string rule = "gauss";
  unsigned long samples = 1000000;
  numcheck->add_option("--degree", ncDegree, "form degree h (pairs E0^{h-1} with E0^h)");
  numcheck->add_option("--trials", ncTrials, "number of random pairs");
  numcheck->add_option("--grid", ncGrid, "points per axis");
  numcheck->add_option("--rule", rule, "gauss, midpoint or mc");
  numcheck->add_option("--samples", samples, "Monte Carlo sample count");
  numcheck->add_option("--bump-exp", ncBump, "bump exponent (default: operator order + 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*group) return cmdGroup(cfg);
    if (*complexCmd) return cmdComplex(cfg, dump);
    if (*check) {
      if (all) identities = fixture = leibniz = numeric = true;
      if (!identities && !fixture && !leibniz && !numeric) identities = true;
      return cmdCheck(cfg, identities, fixture, leibniz, numeric, fixtureFile, gridPoints, trials);
    }
    if (*leibnizCmd) return cmdLeibniz(cfg, degree, zeta, opName);
    if (*exponents) return cmdExponents(cfg, pText);
    if (*numcheck) return cmdNumcheck(cfg, ncDegree, ncTrials, ncGrid, rule, samples, ncBump);
  } catch (const ValidationError& e) {
    std::cerr << "validation error [" << e.invariant << "]: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ContractError& e) {
    std::cerr << "contract violation [" << e.identity << "]: " << e.what() << "\n";
    return kExitContract;
  } catch (const ScalarError& e) {
    std::cerr << "scalar error: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
  return kExitOk;
}
