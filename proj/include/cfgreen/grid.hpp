#pragma once

#include <vector>

#include "cfgreen/roots.hpp"
#include "cfgreen/types.hpp"

namespace cfgreen {

/// Uniform rectangular grid over a search region; values are stored row-major
/// (iy * nx + ix).  nx == 1 or ny == 1 collapses that axis to the center.
struct GridSpec {
  SearchRegion region;
  long nx = 81;
  long ny = 81;

  Complex point(long ix, long iy) const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

/// Data-parallel kernels (OpenMP when available) with serial twins kept as
/// the reference implementation.  Cells are independent, so the parallel
/// results are bitwise identical to the serial ones.
std::vector<Complex> eval_grid(const SecularFn& f, const GridSpec& g);
std::vector<Complex> eval_grid_serial(const SecularFn& f, const GridSpec& g);

/// i-th of n uniform samples on [lo, hi]; the one formula shared by the
/// sampling kernels and their consumers so bracket endpoints reproduce
/// sample positions bit-for-bit.
double real_sample_point(double lo, double hi, long n, long i);

std::vector<double> sample_real(const std::function<double(double)>& g, double lo, double hi,
                                long n);
std::vector<double> sample_real_serial(const std::function<double(double)>& g, double lo,
                                       double hi, long n);

std::vector<NewtonResult> refine_all(const SecularFn& f, const std::vector<Complex>& seeds,
                                     double tol, int max_iter);
std::vector<NewtonResult> refine_all_serial(const SecularFn& f, const std::vector<Complex>& seeds,
                                            double tol, int max_iter);

}  // namespace cfgreen
