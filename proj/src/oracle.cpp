#include "cfgreen/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfgreen {

namespace {

void check_dim(std::size_t n, const char* who) {
  if (n > kOracleMaxDim)
    throw std::invalid_argument(std::string(who) + ": dimension exceeds the oracle cap");
}

double off_diag_frobenius(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

}  // namespace

Complex lu_det(const DenseMatrix& m) {
  check_dim(m.n, "lu_det");
  const std::size_t n = m.n;
  std::vector<Complex> a = m.data;
  const auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };

  Complex det(1.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(at(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(at(i, k));
      if (cand > best) {
        best = cand;
        p = i;
      }
    }
    if (best == 0.0) return Complex(0.0, 0.0);
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(p, j));
      det = -det;
    }
    det *= at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = at(i, k) / at(k, k);
      if (factor == Complex(0.0, 0.0)) continue;
      for (std::size_t j = k; j < n; ++j) at(i, j) -= factor * at(k, j);
    }
  }
  return det;
}

namespace {

// Cyclic complex Jacobi sweeps on a Hermitian matrix; no dimension cap so the
// singular-value oracle can run it on the doubled self-adjoint embedding.
std::vector<double> jacobi_core(DenseMatrix a) {
  const std::size_t n = a.n;
  // Symmetrize exactly so rounding in the input cannot drift the sweeps.
  for (std::size_t i = 0; i < n; ++i) {
    a.at(i, i) = Complex(a.at(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) a.at(j, i) = std::conj(a.at(i, j));
  }

  const double target = 1e-13 * std::max(frobenius(a), 1e-300);
  for (int sweep = 0; sweep < 100 && off_diag_frobenius(a) > target; ++sweep) {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const double phi = std::arg(apq);
        const double alpha = a.at(p, p).real();
        const double beta = a.at(q, q).real();
        const double tau = (beta - alpha) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex e_minus(std::cos(phi), -std::sin(phi));
        const Complex e_plus = std::conj(e_minus);

        // A <- J^dagger A J with J acting on the (p, q) plane:
        // J_pp = c, J_pq = s, J_qp = -s e^{-i phi}, J_qq = c e^{-i phi}.
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a.at(i, p), aiq = a.at(i, q);
          a.at(i, p) = c * aip - s * e_minus * aiq;
          a.at(i, q) = s * aip + c * e_minus * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a.at(p, j), aqj = a.at(q, j);
          a.at(p, j) = c * apj - s * e_plus * aqj;
          a.at(q, j) = s * apj + c * e_plus * aqj;
        }
        a.at(p, q) = Complex(0.0, 0.0);
        a.at(q, p) = Complex(0.0, 0.0);
        a.at(p, p) = Complex(a.at(p, p).real(), 0.0);
        a.at(q, q) = Complex(a.at(q, q).real(), 0.0);
      }
  }
  if (off_diag_frobenius(a) > target)
    throw std::runtime_error("jacobi_eigen: sweeps did not converge");

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace

std::vector<double> jacobi_eigen(const DenseMatrix& m) {
  check_dim(m.n, "jacobi_eigen");
  const std::size_t n = m.n;
  const double scale = max_abs(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > 1e-12 * (1.0 + scale))
        throw std::invalid_argument("jacobi_eigen: matrix is not Hermitian");
  return jacobi_core(m);
}

std::vector<double> svd_oracle(const DenseMatrix& m) {
  check_dim(m.n, "svd_oracle");
  // Diagonalize the self-adjoint embedding [[0, M], [M^dagger, 0]] instead of
  // M^dagger M: its eigenvalues are +/- the singular values directly, so a
  // zero singular value is resolved to machine epsilon of ||M|| rather than
  // to sqrt(eps) of ||M||^2, which the squared (Gram) form cannot beat.
  const std::size_t n = m.n;
  DenseMatrix big(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      big.at(i, n + j) = m.at(i, j);
      big.at(n + j, i) = std::conj(m.at(i, j));
    }
  const std::vector<double> eig = jacobi_core(big);  // ascending, -s_n..+s_n
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = std::max(0.0, eig[2 * n - 1 - i]);
  return sigma;  // descending
}

std::vector<Complex> det_scan_spectrum(const FiniteTridiagonal& h, const SearchRegion& r,
                                       const RootOptions& opts) {
  check_dim(h.dim(), "det_scan_spectrum");
  const DenseMatrix base = to_dense(h);
  const SecularFn fn = [base](Complex z) {
    DenseMatrix shifted = base;
    for (std::size_t i = 0; i < shifted.n; ++i) shifted.at(i, i) -= z;
    return lu_det(shifted);
  };
  const SpectrumResult res = locate_roots(fn, r, opts);
  std::vector<Complex> out;
  out.reserve(res.roots.size());
  for (const RootRecord& rec : res.roots) out.push_back(rec.z);
  return out;
}

std::vector<Complex> det_scan_spectrum(const FiniteTridiagonal& h) {
  return det_scan_spectrum(h, gershgorin_region(h), RootOptions{});
}

}  // namespace cfgreen
