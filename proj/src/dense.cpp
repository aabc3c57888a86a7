#include "cfgreen/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace cfgreen {

DenseMatrix to_dense(const FiniteTridiagonal& h) {
  const std::size_t n = static_cast<std::size_t>(h.dim());
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = h.diag[i];
    if (i + 1 < n) {
      m.at(i, i + 1) = h.upper[i];
      m.at(i + 1, i) = h.lower[i];
    }
  }
  return m;
}

DenseMatrix adjoint(const DenseMatrix& m) {
  DenseMatrix r(m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) r.at(j, i) = std::conj(m.at(i, j));
  return r;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n != b.n) throw std::invalid_argument("multiply: dimension mismatch");
  DenseMatrix r(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t k = 0; k < a.n; ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < a.n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n != b.n) throw std::invalid_argument("subtract: dimension mismatch");
  DenseMatrix r(a.n);
  for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] - b.data[i];
  return r;
}

std::vector<Complex> matvec(const DenseMatrix& m, const std::vector<Complex>& x) {
  if (x.size() != m.n) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<Complex> y(m.n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) y[i] += m.at(i, j) * x[j];
  return y;
}

double max_abs(const DenseMatrix& m) {
  double r = 0.0;
  for (const Complex& v : m.data) r = std::max(r, std::abs(v));
  return r;
}

double frobenius(const DenseMatrix& m) {
  double s = 0.0;
  for (const Complex& v : m.data) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace cfgreen
