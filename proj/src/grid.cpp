#include "cfgreen/grid.hpp"

#include <stdexcept>

namespace cfgreen {

Complex GridSpec::point(long ix, long iy) const {
  const double re = (nx <= 1) ? 0.5 * (region.re_lo + region.re_hi)
                              : region.re_lo + (region.re_hi - region.re_lo) * ix / (nx - 1);
  const double im = (ny <= 1) ? 0.5 * (region.im_lo + region.im_hi)
                              : region.im_lo + (region.im_hi - region.im_lo) * iy / (ny - 1);
  return {re, im};
}

double real_sample_point(double lo, double hi, long n, long i) {
  return (n <= 1) ? lo : lo + (hi - lo) * i / (n - 1);
}

// The parallel kernels and their serial twins run the exact same per-cell
// expressions; cells are independent, so the outputs are bitwise identical
// and the serial versions double as the reference implementation in tests.

std::vector<Complex> eval_grid_serial(const SecularFn& f, const GridSpec& g) {
  std::vector<Complex> vals(g.size());
  for (long idx = 0; idx < static_cast<long>(g.size()); ++idx)
    vals[idx] = f(g.point(idx % g.nx, idx / g.nx));
  return vals;
}

std::vector<Complex> eval_grid(const SecularFn& f, const GridSpec& g) {
  std::vector<Complex> vals(g.size());
  const long total = static_cast<long>(g.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long idx = 0; idx < total; ++idx) vals[idx] = f(g.point(idx % g.nx, idx / g.nx));
  return vals;
}

std::vector<double> sample_real_serial(const std::function<double(double)>& g, double lo,
                                       double hi, long n) {
  if (n < 1) throw std::invalid_argument("sample_real: need n >= 1");
  std::vector<double> vals(n);
  for (long i = 0; i < n; ++i) vals[i] = g(real_sample_point(lo, hi, n, i));
  return vals;
}

std::vector<double> sample_real(const std::function<double(double)>& g, double lo, double hi,
                                long n) {
  if (n < 1) throw std::invalid_argument("sample_real: need n >= 1");
  std::vector<double> vals(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < n; ++i) vals[i] = g(real_sample_point(lo, hi, n, i));
  return vals;
}

std::vector<NewtonResult> refine_all_serial(const SecularFn& f, const std::vector<Complex>& seeds,
                                            double tol, int max_iter) {
  std::vector<NewtonResult> out(seeds.size());
  for (long i = 0; i < static_cast<long>(seeds.size()); ++i)
    out[i] = newton_refine(f, seeds[i], tol, max_iter);
  return out;
}

std::vector<NewtonResult> refine_all(const SecularFn& f, const std::vector<Complex>& seeds,
                                     double tol, int max_iter) {
  std::vector<NewtonResult> out(seeds.size());
  const long total = static_cast<long>(seeds.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < total; ++i) out[i] = newton_refine(f, seeds[i], tol, max_iter);
  return out;
}

}  // namespace cfgreen
