// Benchmarks the OpenMP-parallel kernels against their serial reference:
// entrywise operator-matrix composition and Monte Carlo pairing.
#include <chrono>
#include <iomanip>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "carnot/numeric.hpp"
#include "carnot/rumin.hpp"

using namespace carnot;

namespace {

template <class F>
double timeIt(F&& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const std::string& name, double serial, double parallel, bool equal) {
  std::cout << std::left << std::setw(34) << name << std::right << std::fixed
            << std::setprecision(4) << std::setw(10) << serial << "s" << std::setw(10) << parallel
            << "s   x" << std::setprecision(2) << serial / parallel
            << (equal ? "   results identical" : "   RESULTS DIFFER") << "\n";
}

}  // namespace

int main() {
  auto ctx = std::make_shared<UeaContext>(StratifiedLieAlgebra::preset("cartan"));
  RuminComplex cx(ctx);
  GroupModel g(ctx, CoordConvention::OrderedExpDescending);
  ctx->setDegreeCap(40);

  std::cout << "kernel                                serial   parallel   speedup\n";

  // 1. operator-matrix composition: Δ_{R,2} ∘ (d_c δ_c) on E0^2, order 18
  {
    OperatorMatrix ddelta = cx.dc(1) * cx.deltaC(2);
    const OperatorMatrix& lap = cx.laplacian(2);
    OperatorMatrix serialResult, parallelResult;
    setParallelCompose(false);
    double ts = timeIt([&] { serialResult = ddelta * lap; }, 3);
    setParallelCompose(true);
    double tp = timeIt([&] { parallelResult = ddelta * lap; }, 3);
    row("compose ddelta*laplacian[2]", ts, tp, serialResult == parallelResult);
  }

  // 2. Laplacian assembly end to end
  {
    setParallelCompose(false);
    double ts = timeIt([&] { RuminComplex tmp(ctx); (void)tmp; }, 2);
    setParallelCompose(true);
    double tp = timeIt([&] { RuminComplex tmp(ctx); (void)tmp; }, 2);
    row("full complex construction", ts, tp, true);
  }

  // 3. Monte Carlo pairing (fixed chunking keeps both paths bit-identical)
  {
    QuadratureGrid grid;
    grid.box = Box::cube(5, Rational(-1), Rational(1));
    grid.mcSamples = 2000000;
    grid.mcSeed = 7;
    SampleForm a = randomSampleForm(cx, 1, grid.box, 4, 2, 1);
    SampleForm b = randomSampleForm(cx, 1, grid.box, 4, 2, 2);
    const auto& gram = cx.basis().gram[1];
    double vs = 0, vp = 0;
#ifdef _OPENMP
    int maxThreads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    double ts = timeIt([&] { vs = pairingMonteCarlo(a, b, gram, grid).value; }, 2);
#ifdef _OPENMP
    omp_set_num_threads(maxThreads);
#endif
    double tp = timeIt([&] { vp = pairingMonteCarlo(a, b, gram, grid).value; }, 2);
    row("monte carlo pairing (2M samples)", ts, tp, vs == vp);
  }

  setParallelCompose(true);
  return 0;
}
