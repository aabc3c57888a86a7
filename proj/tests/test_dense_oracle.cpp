#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "cfgreen/dense.hpp"
#include "cfgreen/models.hpp"
#include "cfgreen/oracle.hpp"
#include "doctest.h"

using namespace cfgreen;

namespace {

Complex det3_cofactor(const DenseMatrix& m) {
  REQUIRE(m.n == 3);
  return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
         m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
         m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
}

DenseMatrix random_hermitian(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = Complex(u(rng), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      m.at(i, j) = Complex(u(rng), u(rng));
      m.at(j, i) = std::conj(m.at(i, j));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("lu determinant agrees with cofactor expansion") {
  DenseMatrix a(2);
  a.at(0, 0) = Complex(1.0, 2.0);
  a.at(0, 1) = Complex(-3.0, 0.5);
  a.at(1, 0) = Complex(0.0, 1.0);
  a.at(1, 1) = Complex(4.0, -1.0);
  const Complex ref2 = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
  CHECK(std::abs(lu_det(a) - ref2) <= 1e-14 * std::abs(ref2));

  DenseMatrix b(3);
  const Complex vals[9] = {{2, 1},  {0, -1}, {3, 0},  {1, 1},  {-2, 0},
                           {0, 2},  {0, 0},  {5, -3}, {1, -1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) b.at(i, j) = vals[3 * i + j];
  const Complex ref3 = det3_cofactor(b);
  CHECK(std::abs(lu_det(b) - ref3) <= 1e-13 * std::abs(ref3));
}

TEST_CASE("lu determinant of a singular matrix is zero") {
  DenseMatrix m(3);
  // Row 2 = row 0 + row 1.
  m.at(0, 0) = Complex(1.0, 0.0);
  m.at(0, 1) = Complex(2.0, 1.0);
  m.at(0, 2) = Complex(0.0, -1.0);
  m.at(1, 0) = Complex(0.0, 3.0);
  m.at(1, 1) = Complex(1.0, 0.0);
  m.at(1, 2) = Complex(2.0, 2.0);
  for (std::size_t j = 0; j < 3; ++j) m.at(2, j) = m.at(0, j) + m.at(1, j);
  CHECK(std::abs(lu_det(m)) <= 1e-13);
}

TEST_CASE("jacobi eigenvalues of a 2x2 Hermitian matrix") {
  DenseMatrix m(2);
  m.at(0, 0) = Complex(1.25, 0.0);
  m.at(0, 1) = Complex(0.0, 1.0);
  m.at(1, 0) = Complex(0.0, -1.0);
  m.at(1, 1) = Complex(1.25, 0.0);
  const std::vector<double> e = jacobi_eigen(m);  // exact: 1.25 -+ 1
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(e[1] == doctest::Approx(2.25).epsilon(1e-13));
}

TEST_CASE("jacobi eigenvalues satisfy trace, determinant and characteristic identities") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial);
    const DenseMatrix m = random_hermitian(n, rng);
    const std::vector<double> e = jacobi_eigen(m);
    REQUIRE(e.size() == n);
    CHECK(std::is_sorted(e.begin(), e.end()));

    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += m.at(i, i).real();
    double esum = 0.0;
    Complex eprod(1.0, 0.0);
    for (double v : e) {
      esum += v;
      eprod *= v;
    }
    CHECK(esum == doctest::Approx(trace).epsilon(1e-12));
    const Complex d = lu_det(m);
    CHECK(std::abs(d - eprod) <= 1e-11 * std::max(1.0, std::abs(d)));

    // Each eigenvalue annihilates the characteristic polynomial computed by
    // the unrelated LU path.
    const double scale = std::pow(max_abs(m) * static_cast<double>(n), n);
    for (double v : e) {
      DenseMatrix shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) -= v;
      CHECK(std::abs(lu_det(shifted)) <= 1e-11 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("jacobi rejects a non-Hermitian input") {
  DenseMatrix m(2);
  m.at(0, 1) = Complex(1.0, 0.0);
  m.at(1, 0) = Complex(2.0, 0.0);
  CHECK_THROWS_AS(jacobi_eigen(m), std::invalid_argument);
}

TEST_CASE("singular values of the two-state imaginary-diagonal chain") {
  const FiniteTridiagonal h = bose_hubbard(1, 0.5);
  const std::vector<double> s = svd_oracle(to_dense(h));
  REQUIRE(s.size() == 2);
  // H^dagger H = [[5/4, i], [-i, 5/4]] has eigenvalues (1 +- 1/2)^2.
  CHECK(s[0] == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(s[1] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("singular values are descending and square-sum to the Frobenius norm") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  DenseMatrix m(5);
  for (Complex& v : m.data) v = Complex(u(rng), u(rng));
  const std::vector<double> s = svd_oracle(m);
  REQUIRE(s.size() == 5);
  CHECK(std::is_sorted(s.rbegin(), s.rend()));
  double sq = 0.0;
  for (double v : s) sq += v * v;
  const double f = frobenius(m);
  CHECK(sq == doctest::Approx(f * f).epsilon(1e-12));
}

TEST_CASE("oracles refuse dimensions beyond the trust cap") {
  DenseMatrix big(kOracleMaxDim + 1);
  for (std::size_t i = 0; i < big.n; ++i) big.at(i, i) = 1.0;
  CHECK_THROWS_AS(lu_det(big), std::invalid_argument);
  CHECK_THROWS_AS(jacobi_eigen(big), std::invalid_argument);
  CHECK_THROWS_AS(svd_oracle(big), std::invalid_argument);
}

TEST_CASE("determinant-scan spectrum finds non-Hermitian eigenvalues") {
  // [[0, 1], [-1, 0]] rotated into tridiagonal storage: eigenvalues are +-i.
  FiniteTridiagonal h;
  h.offset = 0;
  h.diag = {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  h.upper = {Complex(1.0, 0.0)};
  h.lower = {Complex(-1.0, 0.0)};
  const std::vector<Complex> eigs = det_scan_spectrum(h);
  REQUIRE(eigs.size() == 2);
  CHECK(std::abs(eigs[0] - Complex(0.0, -1.0)) <= 1e-10);
  CHECK(std::abs(eigs[1] - Complex(0.0, 1.0)) <= 1e-10);
}
