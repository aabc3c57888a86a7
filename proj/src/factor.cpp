#include "cfgreen/factor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cfgreen {

namespace {

constexpr Complex kZero{0.0, 0.0};

Complex safe_reciprocal(Complex denom) {
  const double mag = std::abs(denom);
  if (!std::isfinite(mag) || mag == 0.0) return Complex(1e300, 0.0);
  const Complex f = Complex(1.0, 0.0) / denom;
  if (!std::isfinite(std::abs(f))) return Complex(1e300, 0.0);
  return f;
}

double norm2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

UflFactors factorize(const FiniteTridiagonal& h, Complex z, long anchor, const CfOptions& opts,
                     PivotPolicy policy) {
  if (!h.contains(anchor)) throw std::out_of_range("factorize: anchor outside the matrix");
  const long lo = h.lo();
  const long hi = h.hi();
  const std::size_t n = h.dim();

  UflFactors fac;
  fac.lo = lo;
  fac.anchor = anchor;
  fac.z = z;
  fac.f.assign(n, kZero);
  fac.pivot.assign(n, kZero);

  const auto store = [&](long row, Complex denom) {
    if (policy == PivotPolicy::Strict && row != anchor &&
        std::abs(denom) < opts.breakdown_eps)
      throw BreakdownError(z, row, "factorize: vanishing pivot off the anchor row");
    const std::size_t i = h.row_of(row);
    fac.pivot[i] = denom;
    fac.f[i] = safe_reciprocal(denom);
  };

  for (long j = hi; j > anchor; --j) {
    const std::size_t i = h.row_of(j);
    Complex denom = h.diag[i] - z;
    if (j < hi) {
      const Complex coupling = h.upper[i] * h.lower[i];
      if (coupling != kZero) denom -= coupling * fac.f[i + 1];
    }
    store(j, denom);
  }
  for (long j = lo; j < anchor; ++j) {
    const std::size_t i = h.row_of(j);
    Complex denom = h.diag[i] - z;
    if (j > lo) {
      const Complex coupling = h.lower[i - 1] * h.upper[i - 1];
      if (coupling != kZero) denom -= coupling * fac.f[i - 1];
    }
    store(j, denom);
  }
  {
    const std::size_t ia = h.row_of(anchor);
    Complex denom = h.diag[ia] - z;
    if (anchor < hi) {
      const Complex coupling = h.upper[ia] * h.lower[ia];
      if (coupling != kZero) denom -= coupling * fac.f[ia + 1];
    }
    if (anchor > lo) {
      const Complex coupling = h.lower[ia - 1] * h.upper[ia - 1];
      if (coupling != kZero) denom -= coupling * fac.f[ia - 1];
    }
    store(anchor, denom);
  }

  if (n > 1) {
    fac.u_pair.assign(n - 1, kZero);
    fac.l_pair.assign(n - 1, kZero);
    for (long p = lo; p < hi; ++p) {
      const std::size_t i = h.row_of(p);
      if (p >= anchor) {
        fac.u_pair[i] = h.upper[i] * fac.f[i + 1];  // U(p, p+1) = b_p f_{p+1}
        fac.l_pair[i] = fac.f[i + 1] * h.lower[i];  // L(p+1, p) = f_{p+1} c_{p+1}
      } else {
        fac.u_pair[i] = h.lower[i] * fac.f[i];  // U(p+1, p) = c_{p+1} f_p
        fac.l_pair[i] = fac.f[i] * h.upper[i];  // L(p, p+1) = f_p b_p
      }
    }
  }
  return fac;
}

UflFactors factorize(const FiniteTridiagonal& h, Complex z, const CfOptions& opts) {
  return factorize(h, z, h.lo(), opts);
}

DenseMatrix outer_factor_dense(const UflFactors& fac) {
  DenseMatrix u = DenseMatrix::identity(fac.dim());
  for (std::size_t i = 0; i + 1 < fac.dim(); ++i) {
    const long p = fac.lo + static_cast<long>(i);
    if (p >= fac.anchor)
      u.at(i, i + 1) = fac.u_pair[i];
    else
      u.at(i + 1, i) = fac.u_pair[i];
  }
  return u;
}

DenseMatrix pivot_factor_dense(const UflFactors& fac) {
  DenseMatrix d(fac.dim());
  for (std::size_t i = 0; i < fac.dim(); ++i) d.at(i, i) = fac.pivot[i];
  return d;
}

DenseMatrix inner_factor_dense(const UflFactors& fac) {
  DenseMatrix l = DenseMatrix::identity(fac.dim());
  for (std::size_t i = 0; i + 1 < fac.dim(); ++i) {
    const long p = fac.lo + static_cast<long>(i);
    if (p >= fac.anchor)
      l.at(i + 1, i) = fac.l_pair[i];
    else
      l.at(i, i + 1) = fac.l_pair[i];
  }
  return l;
}

Complex determinant(const UflFactors& fac) {
  Complex det(1.0, 0.0);
  for (const Complex& p : fac.pivot) det *= p;
  return det;
}

WavefunctionResult wavefunction(const FiniteTridiagonal& h, Complex energy, long anchor,
                                const CfOptions& opts) {
  // Permissive pivots: a trailing-minor resonance exactly at E must not
  // abort the back-substitution -- the huge-reciprocal stand-ins compose to
  // the correct finite limit one row later, and the returned residual still
  // certifies (or refutes) the result.
  const UflFactors fac = factorize(h, energy, anchor, opts, PivotPolicy::Permissive);
  const std::size_t n = h.dim();
  const std::size_t ia = h.row_of(anchor);

  WavefunctionResult out;
  out.lo = h.lo();
  out.psi.assign(n, kZero);
  out.psi[ia] = Complex(1.0, 0.0);
  // psi_k = -f_k c_k psi_{k-1} marching up from the anchor,
  // psi_k = -f_k b_k psi_{k+1} marching down; numerator-first keeps
  // decoupled chains (c or b exactly zero) from polluting psi with 0*huge.
  for (std::size_t i = ia + 1; i < n; ++i) {
    const Complex num = -h.lower[i - 1] * out.psi[i - 1];
    out.psi[i] = (num == kZero) ? kZero : num * fac.f[i];
  }
  for (std::size_t i = ia; i-- > 0;) {
    const Complex num = -h.upper[i] * out.psi[i + 1];
    out.psi[i] = (num == kZero) ? kZero : num * fac.f[i];
  }

  const std::vector<Complex> r = apply_shifted(h, energy, out.psi);
  const double psi_norm = norm2(out.psi);
  out.residual = psi_norm > 0.0 ? norm2(r) / psi_norm : std::numeric_limits<double>::infinity();
  return out;
}

WavefunctionResult wavefunction(const FiniteTridiagonal& h, Complex energy,
                                const CfOptions& opts) {
  return wavefunction(h, energy, h.lo(), opts);
}

WavefunctionResult left_wavefunction(const FiniteTridiagonal& h, Complex energy, long anchor,
                                     const CfOptions& opts) {
  // phi (H - E) = 0  <=>  (H - E)^T phi^T = 0, and transposing a
  // tridiagonal matrix just swaps the coupling arrays.
  return wavefunction(transpose(h), energy, anchor, opts);
}

}  // namespace cfgreen
