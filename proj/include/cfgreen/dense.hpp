#pragma once

#include <cstddef>
#include <vector>

#include "cfgreen/types.hpp"

namespace cfgreen {

/// Row-major square complex matrix used by the dense reference algorithms
/// and the factor-reassembly checks.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<Complex> data;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : n(dim), data(dim * dim, Complex(0.0, 0.0)) {}

  Complex& at(std::size_t i, std::size_t j) { return data[i * n + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return data[i * n + j]; }

  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

DenseMatrix to_dense(const FiniteTridiagonal& h);
DenseMatrix adjoint(const DenseMatrix& m);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
std::vector<Complex> matvec(const DenseMatrix& m, const std::vector<Complex>& x);
double max_abs(const DenseMatrix& m);
double frobenius(const DenseMatrix& m);

}  // namespace cfgreen
