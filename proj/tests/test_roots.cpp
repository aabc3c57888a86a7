#include <cmath>
#include <complex>
#include <vector>

#include "cfgreen/cfrac.hpp"
#include "cfgreen/models.hpp"
#include "cfgreen/oracle.hpp"
#include "cfgreen/roots.hpp"
#include "cfgreen/types.hpp"
#include "doctest.h"

using namespace cfgreen;

TEST_CASE("Gershgorin box covers the dense spectrum") {
  for (const double gamma : {0.0, 0.4, 0.9}) {
    const FiniteTridiagonal h = bose_hubbard(3, gamma);
    const SearchRegion r = gershgorin_region(h);
    for (const Complex e : det_scan_spectrum(h)) CHECK(r.contains(e));
  }
  // Inflation grows the box around its center.
  const SearchRegion r = gershgorin_region(bose_hubbard(2, 0.5));
  const SearchRegion big = r.inflated(2.0);
  CHECK(big.re_hi - big.re_lo == doctest::Approx(2.0 * (r.re_hi - r.re_lo)));
  CHECK(std::abs(big.center() - r.center()) <= 1e-15);
}

TEST_CASE("Newton refinement converges quadratically on a simple root") {
  const SecularFn f = [](Complex z) { return z * z - Complex(0.75, 0.0); };
  const NewtonResult r = newton_refine(f, Complex(0.9, 0.0));
  CHECK(r.converged);
  CHECK(r.iterations < 10);
  CHECK(std::abs(r.z - Complex(0.86602540378443865, 0.0)) <= 1e-12);
  CHECK(r.residual <= 1e-12);

  // A complex root reached from a complex start.
  const SecularFn g = [](Complex z) { return z * z + Complex(1.0, 0.0); };
  const NewtonResult ri = newton_refine(g, Complex(0.1, 0.8));
  CHECK(ri.converged);
  CHECK(std::abs(ri.z - Complex(0.0, 1.0)) <= 1e-10);
}

TEST_CASE("grid seeding finds a basin for every root") {
  const SecularFn f = [](Complex z) {
    return (z - Complex(0.5, 0.2)) * (z + Complex(0.4, 0.6)) * (z - Complex(-0.7, -0.3));
  };
  SearchRegion r;
  r.re_lo = -1.2;
  r.re_hi = 1.2;
  r.im_lo = -1.2;
  r.im_hi = 1.2;
  const std::vector<Complex> seeds = grid_seed(f, r, 41, 41);
  REQUIRE_FALSE(seeds.empty());
  const std::vector<Complex> roots{Complex(0.5, 0.2), Complex(-0.4, -0.6), Complex(-0.7, -0.3)};
  for (const Complex root : roots) {
    bool hit = false;
    for (const Complex s : seeds)
      if (std::abs(s - root) < 0.15) hit = true;
    CHECK(hit);
  }
}

TEST_CASE("winding count obeys the argument principle") {
  SearchRegion r;
  r.re_lo = -1.0;
  r.re_hi = 1.0;
  r.im_lo = -1.0;
  r.im_hi = 1.0;

  const SecularFn two_zeros = [](Complex z) {
    return (z - Complex(0.5, 0.0)) * (z - Complex(0.0, -0.5));
  };
  CHECK(winding_count(two_zeros, r) == 2);

  const SecularFn pole = [](Complex z) { return Complex(1.0, 0.0) / (z - Complex(0.3, 0.0)); };
  CHECK(winding_count(pole, r) == -1);

  const SecularFn cubic = [](Complex z) { return z * z * z; };
  CHECK(winding_count(cubic, r) == 3);

  const SecularFn outside = [](Complex z) { return z - Complex(5.0, 0.0); };
  CHECK(winding_count(outside, r) == 0);
}

TEST_CASE("real scan rejects poles and polishes even-order roots") {
  RealScanOptions opts;

  // Simple poles must not masquerade as sign-change roots.
  const auto with_pole = [](double x) { return (x - 1.0) * (x - 2.0) / (x - 1.5); };
  const std::vector<double> r1 = real_roots(with_pole, 0.0, 3.0, opts);
  REQUIRE(r1.size() == 2);
  CHECK(std::abs(r1[0] - 1.0) <= 1e-10);
  CHECK(std::abs(r1[1] - 2.0) <= 1e-10);

  // A double root never changes sign; the slope-bisection polish should
  // still pin it far beyond the sqrt(eps) limit of the magnitude alone.
  const auto square = [](double x) { return (x - 1.0) * (x - 1.0); };
  const std::vector<double> r2 = real_roots(square, 0.0, 3.0, opts);
  REQUIRE(r2.size() == 1);
  CHECK(std::abs(r2[0] - 1.0) <= 1e-9);

  // No roots in range -> empty, not noise.
  const auto positive = [](double x) { return 1.0 + x * x; };
  CHECK(real_roots(positive, -2.0, 2.0, opts).empty());
}

TEST_CASE("resolvent spectrum of the five-state chain matches closed form") {
  const double gamma = 0.5;
  const FiniteTridiagonal h = bose_hubbard(4, gamma);
  const CfOptions cf;
  const long anchor = default_anchor(as_source(h).window);
  const SecularFn f = [&](Complex z) { return secular_value(as_source(h), z, anchor, cf).value; };
  RootOptions opts;
  opts.winding_fn = [&](Complex z) { return determinant_cf(as_source(h), z, cf); };
  const SpectrumResult sr = locate_roots(f, gershgorin_region(h), opts);

  // Eigenvalues (N - 2n) sqrt(1 - gamma^2) for n = 0..4.
  const double s = std::sqrt(1.0 - gamma * gamma);
  std::vector<Complex> expect;
  for (int n = 0; n <= 4; ++n) expect.emplace_back((4.0 - 2.0 * n) * s, 0.0);

  REQUIRE(sr.roots.size() == 5);
  CHECK(sr.count_by_winding == 5);
  std::vector<Complex> found;
  for (const RootRecord& rec : sr.roots) found.push_back(rec.z);
  const RootMatch m = match_roots(found, expect);
  CHECK(m.complete);
  CHECK(m.max_distance <= 1e-10);
  for (const RootRecord& rec : sr.roots) CHECK(rec.multiplicity_hint == 1);
}

TEST_CASE("near-coincident roots trigger the cluster warning") {
  const SecularFn f = [](Complex z) {
    return (z - Complex(1e-4, 0.0)) * (z + Complex(1e-4, 0.0));
  };
  SearchRegion r;
  r.re_lo = -1.0;
  r.re_hi = 1.0;
  r.im_lo = -1.0;
  r.im_hi = 1.0;
  RootOptions opts;
  const SpectrumResult sr = locate_roots(f, r, opts);
  CHECK(sr.cluster_warning);
  CHECK(sr.min_pair_distance <= 3e-4);
  REQUIRE(sr.roots.size() == 2);
  CHECK(sr.count_by_winding == 2);
}

TEST_CASE("root matching pairs nearest neighbours and flags size mismatch") {
  const std::vector<Complex> a{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  const std::vector<Complex> b{{1.0, 1e-12}, {1e-13, 1.0}, {1e-12, -1e-12}};
  const RootMatch m = match_roots(a, b);
  CHECK(m.complete);
  CHECK(m.pairs.size() == 3);
  CHECK(m.max_distance <= 1e-11);

  const std::vector<Complex> c{{0.0, 0.0}};
  const RootMatch bad = match_roots(a, c);
  CHECK_FALSE(bad.complete);
  CHECK(std::isinf(bad.max_distance));
}
