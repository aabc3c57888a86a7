#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "cfgreen/types.hpp"

namespace cfgreen {

using SecularFn = std::function<Complex(Complex)>;

struct SearchRegion {
  double re_lo = -1.0, re_hi = 1.0;
  double im_lo = -1.0, im_hi = 1.0;

  bool contains(Complex z, double pad = 0.0) const {
    return z.real() >= re_lo - pad && z.real() <= re_hi + pad && z.imag() >= im_lo - pad &&
           z.imag() <= im_hi + pad;
  }
  double diameter() const { return std::hypot(re_hi - re_lo, im_hi - im_lo); }
  Complex center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
  SearchRegion inflated(double factor) const;
};

/// Axis-aligned box around the union of the Gershgorin discs, padded by
/// pad_fraction of each dimension's own extent.
SearchRegion gershgorin_region(const FiniteTridiagonal& h, double pad_fraction = 0.1);

struct NewtonResult {
  Complex z{0.0, 0.0};
  double residual = 0.0;  ///< |f(z)| at the final iterate
  int iterations = 0;
  bool converged = false;
};

/// Newton iteration with a central finite-difference derivative
/// (step max(1e-7, 1e-7 |z|)).  Stops on |step| <= tol (1 + |z|).
NewtonResult newton_refine(const SecularFn& f, Complex z0, double tol = 1e-12,
                           int max_iter = 60);

/// Grid minima of |f| that fall below the grid median: cheap root seeds.
std::vector<Complex> grid_seed(const SecularFn& f, const SearchRegion& r, long nx, long ny);

/// Zero count (with multiplicity) inside the region boundary by argument
/// accumulation.  Edge sampling doubles until the count stabilizes twice and
/// every step stays under pi/2.  Throws if |f| on the contour falls under
/// breakdown_eps (a zero sits on the boundary) or the count never settles.
long winding_count(const SecularFn& f, const SearchRegion& r, long min_edge_samples = 64,
                   double breakdown_eps = 1e-14);

struct RealScanOptions {
  long samples = 2001;
  double bisect_tol = 1e-13;  ///< absolute bracket width target
  double accept_rel = 1e-12;  ///< |g| threshold (relative to scan median) for minima roots
};

/// Real roots of g on [lo, hi]: uniform scan, bisection on sign changes with
/// pole rejection (a crossing only counts if |g| shrinks toward it), plus
/// golden-section polishing of interior |g| minima to catch even
/// multiplicities.  A minimum counts as a root if |g| there falls below
/// accept_rel of the scan median or collapses many orders below its own
/// bracketing samples (the envelope-relative test that survives scans whose
/// magnitude varies over orders of magnitude).  Pronounced dips are re-scanned
/// on a fine sub-grid first, which splits close pairs of simple roots whose
/// sign changes would otherwise cancel inside one cell.  Non-finite samples are
/// treated as poles.
std::vector<double> real_roots(const std::function<double(double)>& g, double lo, double hi,
                               const RealScanOptions& opts);

struct RootRecord {
  Complex z{0.0, 0.0};
  double residual = 0.0;
  int newton_iters = 0;
  int multiplicity_hint = 1;
};

struct RootOptions {
  long grid_nx = 81, grid_ny = 81;
  double newton_tol = 1e-12;
  int newton_max_iter = 60;
  double dedup_rel = 1e-7;    ///< merge radius relative to region diameter
  double cluster_rel = 1e-2;  ///< pairs closer than this (relative) raise a warning
  bool do_winding = true;
  bool multiplicity_probe = true;  ///< winding on a small circle around each root
  /// Argument-principle counting needs a pole-free function with the same
  /// zeros (e.g. the determinant rather than a resolvent entry, which has
  /// interior poles that cancel zeros in the count).  Defaults to f itself.
  SecularFn winding_fn;
};

struct SpectrumResult {
  std::vector<RootRecord> roots;  ///< sorted by (Re, Im)
  SearchRegion region;
  long count_by_winding = -1;  ///< -1 when not computed / not available
  bool cluster_warning = false;
  double min_pair_distance = std::numeric_limits<double>::infinity();
};

/// Grid seeding + parallel Newton + dedup + winding cross-count.  When the
/// contour count reports missing roots, the search re-seeds on shrinking
/// rings around the roots found (clusters) and then retries the grid seeds
/// on the deflated function f(z)/prod(z - r_j) (isolated roots whose basin
/// drains into a neighbor); deflated candidates are re-polished on f itself.
SpectrumResult locate_roots(const SecularFn& f, const SearchRegion& r, const RootOptions& opts);

/// Greedy nearest-pair matching between two root lists; returns index pairs
/// and the largest matched distance (inf if sizes differ).
struct RootMatch {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double max_distance = std::numeric_limits<double>::infinity();
  bool complete = false;
};
RootMatch match_roots(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace cfgreen
