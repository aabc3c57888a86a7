#pragma once

#include <vector>

#include "cfgreen/dense.hpp"
#include "cfgreen/roots.hpp"
#include "cfgreen/types.hpp"

namespace cfgreen {

/// Independent dense reference algorithms used to cross-check the
/// continued-fraction pipeline.  They deliberately share no code with it
/// (generic root-finding utilities aside) and are capped at small dimensions
/// to stay trivially trustworthy.
inline constexpr std::size_t kOracleMaxDim = 64;

/// Determinant by partial-pivot LU on a copy.  Exactly-zero pivots yield 0.
Complex lu_det(const DenseMatrix& m);

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// ascending.  Throws if m is not Hermitian to 1e-12 (relative).
std::vector<double> jacobi_eigen(const DenseMatrix& m);

/// Singular values, descending, as the nonnegative eigenvalues of the
/// self-adjoint embedding [[0, m], [m^dagger, 0]].  (The Gram-matrix route
/// sqrt(eig(m^dagger m)) only resolves small singular values to sqrt(eps);
/// the embedding resolves them to eps.)
std::vector<double> svd_oracle(const DenseMatrix& m);

/// Spectrum of a general tridiagonal by rooting z -> lu_det(H - z) with the
/// generic grid-seed + Newton machinery; sorted by (Re, Im).
std::vector<Complex> det_scan_spectrum(const FiniteTridiagonal& h, const SearchRegion& r,
                                       const RootOptions& opts);
std::vector<Complex> det_scan_spectrum(const FiniteTridiagonal& h);

}  // namespace cfgreen
