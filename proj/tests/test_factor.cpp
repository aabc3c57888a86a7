#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cfgreen/dense.hpp"
#include "cfgreen/factor.hpp"
#include "cfgreen/models.hpp"
#include "cfgreen/oracle.hpp"
#include "cfgreen/types.hpp"
#include "doctest.h"

using namespace cfgreen;

namespace {

DenseMatrix shifted_dense(const FiniteTridiagonal& h, Complex z) {
  DenseMatrix m = to_dense(h);
  for (std::size_t i = 0; i < m.n; ++i) m.at(i, i) -= z;
  return m;
}

double reconstruction_error(const FiniteTridiagonal& h, const UflFactors& fac) {
  const DenseMatrix udl = multiply(multiply(outer_factor_dense(fac), pivot_factor_dense(fac)),
                                   inner_factor_dense(fac));
  const DenseMatrix ref = shifted_dense(h, fac.z);
  return max_abs(subtract(udl, ref)) / std::max(1.0, max_abs(ref));
}

FiniteTridiagonal random_tridiag(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  FiniteTridiagonal h;
  h.offset = -(static_cast<long>(n) / 2);
  h.diag.resize(n);
  h.upper.resize(n - 1);
  h.lower.resize(n - 1);
  for (auto& v : h.diag) v = Complex(u(rng), u(rng));
  for (auto& v : h.upper) v = Complex(u(rng), u(rng));
  for (auto& v : h.lower) v = Complex(u(rng), u(rng));
  return h;
}

}  // namespace

TEST_CASE("two-state factorization by hand") {
  const FiniteTridiagonal h = bose_hubbard(1, 0.5);  // rows -1, 0
  const CfOptions opts;

  // Anchor at the top row: the bottom row is eliminated upward.
  // f_{-1} = 1/(a_{-1}) = 1/(-i/2) = 2i and the anchor pivot is the secular
  // denominator a_0 - c_0 f_{-1} b_{-1} = i/2 - 2i = -3i/2.
  const UflFactors top = factorize(h, Complex(0.0, 0.0), 0, opts);
  REQUIRE(top.dim() == 2);
  CHECK(top.anchor == 0);
  CHECK(std::abs(top.f[0] - Complex(0.0, 2.0)) <= 1e-15);
  CHECK(std::abs(top.pivot[0] - Complex(0.0, -0.5)) <= 1e-15);
  CHECK(std::abs(top.pivot[1] - Complex(0.0, -1.5)) <= 1e-15);
  {
    const DenseMatrix u = outer_factor_dense(top);
    const DenseMatrix l = inner_factor_dense(top);
    CHECK(std::abs(u.at(0, 0) - Complex(1.0, 0.0)) == 0.0);
    CHECK(std::abs(u.at(1, 1) - Complex(1.0, 0.0)) == 0.0);
    CHECK(std::abs(u.at(1, 0) - Complex(0.0, 2.0)) <= 1e-15);  // c_0 f_{-1}
    CHECK(std::abs(l.at(0, 1) - Complex(0.0, 2.0)) <= 1e-15);  // f_{-1} b_{-1}
    CHECK(reconstruction_error(h, top) <= 1e-15);
    CHECK(std::abs(determinant(top) - Complex(-0.75, 0.0)) <= 1e-15);
  }

  // Default anchor is the bottom row; the top row is eliminated downward.
  // f_0 = 1/(i/2) = -2i, anchor pivot a_{-1} - b_{-1} f_0 c_0 = 3i/2.
  const UflFactors bot = factorize(h, Complex(0.0, 0.0), opts);
  CHECK(bot.anchor == -1);
  CHECK(std::abs(bot.f[1] - Complex(0.0, -2.0)) <= 1e-15);
  CHECK(std::abs(bot.pivot[0] - Complex(0.0, 1.5)) <= 1e-15);
  CHECK(std::abs(bot.pivot[1] - Complex(0.0, 0.5)) <= 1e-15);
  {
    const DenseMatrix u = outer_factor_dense(bot);
    const DenseMatrix l = inner_factor_dense(bot);
    CHECK(std::abs(u.at(0, 1) - Complex(0.0, -2.0)) <= 1e-15);  // b_{-1} f_0
    CHECK(std::abs(l.at(1, 0) - Complex(0.0, -2.0)) <= 1e-15);  // f_0 c_0
    CHECK(reconstruction_error(h, bot) <= 1e-15);
    CHECK(std::abs(determinant(bot) - Complex(-0.75, 0.0)) <= 1e-15);
  }
}

TEST_CASE("factor reconstruction and determinant on random operators") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial);
    const FiniteTridiagonal h = random_tridiag(n, rng);
    const Complex z(u(rng), u(rng));
    const long anchor = h.lo() + static_cast<long>(rng() % n);
    const CfOptions opts;
    const UflFactors fac = factorize(h, z, anchor, opts);
    CHECK(reconstruction_error(h, fac) <= 1e-13);

    const Complex ref = lu_det(shifted_dense(h, z));
    CHECK(std::abs(determinant(fac) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));

    // Both triangular factors have unit determinant, so the pivots alone
    // carry det(H - z).
    const Complex du = lu_det(outer_factor_dense(fac));
    const Complex dl = lu_det(inner_factor_dense(fac));
    CHECK(std::abs(du - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(dl - Complex(1.0, 0.0)) <= 1e-12);
  }
}

TEST_CASE("vanishing pivot away from the anchor throws a breakdown") {
  FiniteTridiagonal h;
  h.offset = 0;
  h.diag = {Complex(1.0, 0.0), Complex(1.0, 0.0)};
  h.upper = {Complex(1.0, 0.0)};
  h.lower = {Complex(1.0, 0.0)};
  const CfOptions opts;
  // z = 1 makes the row-0 denominator vanish while the anchor sits at row 1.
  CHECK_THROWS_AS(factorize(h, Complex(1.0, 0.0), 1, opts), BreakdownError);
  // With the anchor at row 0 itself the pivot may vanish legally.
  const UflFactors fac = factorize(h, Complex(0.0, 0.0), 0, opts);
  CHECK(reconstruction_error(h, fac) <= 1e-14);
}

TEST_CASE("null vector of the three-state chain in closed form") {
  const double gamma = 0.5;
  const FiniteTridiagonal h = bose_hubbard(2, gamma);
  const CfOptions opts;
  const WavefunctionResult w = wavefunction(h, Complex(0.0, 0.0), 0, opts);
  REQUIRE(w.psi.size() == 3);
  CHECK(w.lo == -1);
  const double s = 1.0 / (std::sqrt(2.0) * gamma);
  CHECK(std::abs(w.psi[0] - Complex(0.0, -s)) <= 1e-14);
  CHECK(std::abs(w.psi[1] - Complex(1.0, 0.0)) == 0.0);
  CHECK(std::abs(w.psi[2] - Complex(0.0, s)) <= 1e-14);
  CHECK(w.residual <= 1e-14);
}

TEST_CASE("wavefunctions for oracle eigenvalues have small residuals") {
  const FiniteTridiagonal h = non_bh_k5(0.4);
  const CfOptions opts;
  const std::vector<Complex> eigs = det_scan_spectrum(h);
  REQUIRE(eigs.size() == 5);
  for (const Complex e : eigs) {
    const WavefunctionResult w = wavefunction(h, e, opts);
    CHECK(w.residual <= 1e-9);
  }
}

TEST_CASE("left null vectors annihilate from the left") {
  // Asymmetric couplings so left and right vectors genuinely differ.
  FiniteTridiagonal h;
  h.offset = 0;
  h.diag = {Complex(0.3, 0.1), Complex(-0.2, 0.0), Complex(0.5, -0.3)};
  h.upper = {Complex(2.0, 0.0), Complex(0.0, 1.0)};
  h.lower = {Complex(0.5, 0.0), Complex(1.0, 0.0)};
  const CfOptions opts;
  for (const Complex e : det_scan_spectrum(h)) {
    const WavefunctionResult right = wavefunction(h, e, opts);
    const WavefunctionResult left = left_wavefunction(h, e, 1, opts);
    CHECK(right.residual <= 1e-10);
    CHECK(left.residual <= 1e-10);

    // phi (H - E) = 0 checked directly against the untransposed operator.
    const std::vector<Complex> lhs = apply_shifted(transpose(h), e, left.psi);
    double norm = 0.0, err = 0.0;
    for (const Complex v : left.psi) norm += std::norm(v);
    for (const Complex v : lhs) err += std::norm(v);
    CHECK(std::sqrt(err) <= 1e-10 * std::sqrt(norm));

    // The right vector generally does not annihilate the transpose.
    if (std::abs(e) > 0.1) {
      const std::vector<Complex> wrong = apply_shifted(transpose(h), e, right.psi);
      double werr = 0.0;
      for (const Complex v : wrong) werr += std::norm(v);
      CHECK(std::sqrt(werr) > 1e-6);
    }
  }
}

TEST_CASE("anchor choice and reindexing only rescale the null vector") {
  const FiniteTridiagonal h = bose_hubbard(3, 0.6);
  const CfOptions opts;
  const std::vector<Complex> eigs = det_scan_spectrum(h);
  REQUIRE(eigs.size() == 4);
  const Complex e = eigs[1];

  const WavefunctionResult mid = wavefunction(h, e, opts);             // two-sided
  const WavefunctionResult end = wavefunction(h, e, h.lo(), opts);     // one-sided
  REQUIRE(mid.psi.size() == end.psi.size());
  // Normalize both at the entry where |psi| peaks and compare.
  std::size_t peak = 0;
  for (std::size_t i = 0; i < mid.psi.size(); ++i)
    if (std::abs(mid.psi[i]) > std::abs(mid.psi[peak])) peak = i;
  const Complex ra = mid.psi[peak], rb = end.psi[peak];
  REQUIRE(std::abs(rb) > 0.0);
  for (std::size_t i = 0; i < mid.psi.size(); ++i)
    CHECK(std::abs(mid.psi[i] / ra - end.psi[i] / rb) <= 1e-10);

  // Relabelling rows must not change the values at all.
  const FiniteTridiagonal shifted = reindexed(h, 40);
  const WavefunctionResult moved = wavefunction(shifted, e, 40 + (0 - h.lo()), opts);
  const WavefunctionResult base = wavefunction(h, e, 0, opts);
  REQUIRE(moved.psi.size() == base.psi.size());
  for (std::size_t i = 0; i < base.psi.size(); ++i)
    CHECK(std::abs(moved.psi[i] - base.psi[i]) == 0.0);
}
