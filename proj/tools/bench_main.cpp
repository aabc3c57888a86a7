// Timing harness comparing the OpenMP kernels against their serial reference
// twins on the three data-parallel hot loops: complex-grid secular
// evaluation, real-axis block-determinant scans, and batched Newton
// refinement.  Also asserts the outputs agree bitwise, which is the whole
// point of keeping the serial versions around.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cfgreen/cfrac.hpp"
#include "cfgreen/grid.hpp"
#include "cfgreen/hermitize.hpp"
#include "cfgreen/models.hpp"
#include "cfgreen/roots.hpp"

using namespace cfgreen;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(const F& f) {
  const double t0 = now_ms();
  f();
  return now_ms() - t0;
}

int g_failures = 0;

template <typename T>
void report(const char* name, double serial_ms, double parallel_ms, const std::vector<T>& a,
            const std::vector<T>& b) {
  const bool identical = a == b;
  if (!identical) ++g_failures;
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   bitwise %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms, identical ? "equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  long scale = 1;
  if (argc > 1) scale = std::max(1L, std::atol(argv[1]));
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; comparing two serial runs\n");
#endif

  CfOptions cf;

  {
    const FiniteTridiagonal h = bose_hubbard(24, 0.3);
    const CoefficientSource s = as_source(h);
    const long anchor = default_anchor(s.window);
    const SecularFn fn = [s, anchor, cf](Complex z) {
      return secular_value(s, z, anchor, cf).value;
    };
    const GridSpec g{gershgorin_region(h), 192 * scale, 192 * scale};
    std::vector<Complex> serial, parallel;
    const double ts = timed([&] { serial = eval_grid_serial(fn, g); });
    const double tp = timed([&] { parallel = eval_grid(fn, g); });
    report("secular grid 192x192", ts, tp, serial, parallel);
  }

  {
    const FiniteTridiagonal h = bose_hubbard(40, 0.3);
    const BlockTridiagonal bt = block_form(h);
    const long anchor = bt.lo() + static_cast<long>(bt.dim()) / 2;
    const auto g = [&](double sigma) {
      return block_secular(bt, sigma, anchor, cf).det_s.real();
    };
    const long n = 20000 * scale;
    std::vector<double> serial, parallel;
    const double ts = timed([&] { serial = sample_real_serial(g, 0.0, 30.0, n); });
    const double tp = timed([&] { parallel = sample_real(g, 0.0, 30.0, n); });
    report("block det scan 20k", ts, tp, serial, parallel);
  }

  {
    const FiniteTridiagonal h = bose_hubbard(16, 0.5);
    const CoefficientSource s = as_source(h);
    const long anchor = default_anchor(s.window);
    const SecularFn fn = [s, anchor, cf](Complex z) {
      return secular_value(s, z, anchor, cf).value;
    };
    const SearchRegion r = gershgorin_region(h);
    const GridSpec g{r, 64, 32 * scale};
    std::vector<Complex> seeds(g.size());
    for (long iy = 0; iy < g.ny; ++iy)
      for (long ix = 0; ix < g.nx; ++ix) seeds[iy * g.nx + ix] = g.point(ix, iy);
    std::vector<NewtonResult> serial, parallel;
    const double ts = timed([&] { serial = refine_all_serial(fn, seeds, 1e-12, 60); });
    const double tp = timed([&] { parallel = refine_all(fn, seeds, 1e-12, 60); });
    const auto key = [](const std::vector<NewtonResult>& v) {
      std::vector<double> k;
      for (const NewtonResult& nr : v) {
        k.push_back(nr.z.real());
        k.push_back(nr.z.imag());
        k.push_back(nr.residual);
        k.push_back(nr.iterations);
        k.push_back(nr.converged ? 1.0 : 0.0);
      }
      return k;
    };
    report("newton batch 2048", ts, tp, key(serial), key(parallel));
  }

  return g_failures == 0 ? 0 : 1;
}
