#pragma once

#include <vector>

#include "cfgreen/cfrac.hpp"
#include "cfgreen/dense.hpp"
#include "cfgreen/types.hpp"

namespace cfgreen {

/// Triangular-times-diagonal-times-triangular splitting of H - z built from
/// continued-fraction values: H - z = U * diag(pivot) * L with det U =
/// det L = 1, so det(H - z) is the plain product of the pivots.
///
/// Both bidiagonal factors point "outward" from the anchor row: above the
/// anchor U carries the superdiagonal and L the subdiagonal (the classic
/// one-sided picture), below the anchor the roles mirror.  With anchor ==
/// lowest row this degenerates to the familiar UL factorization.
struct UflFactors {
  long lo = 0;
  long anchor = 0;
  Complex z{0.0, 0.0};
  std::vector<Complex> f;       ///< f[k-lo]: continued-fraction value at row k
  std::vector<Complex> pivot;   ///< pivot[k-lo] = 1/f_k computed directly as the denominator
  std::vector<Complex> u_pair;  ///< entry of U on row pair (p, p+1), p = lo..hi-1
  std::vector<Complex> l_pair;  ///< entry of L on the same pair

  long hi() const { return lo + static_cast<long>(f.size()) - 1; }
  std::size_t dim() const { return f.size(); }
};

/// Strict: a vanishing pivot away from the anchor throws BreakdownError --
/// the right choice when the factors themselves (U, L entries) are the
/// product, since they blow up there.  Permissive: vanishing pivots get a
/// huge finite reciprocal stand-in instead; consecutive factor values then
/// compose to the correct limits (f_{k} f_{k+1} stays finite), which is what
/// null-vector back-substitution needs when an eigenvalue coincides with an
/// eigenvalue of a trailing minor (e.g. a zero-diagonal chain at E = 0).
enum class PivotPolicy { Strict, Permissive };

/// Builds the factorization anchored at `anchor` (defaults to the lowest
/// row).  Under PivotPolicy::Strict (the default), throws BreakdownError
/// when a non-anchor pivot falls below opts.breakdown_eps; the anchor pivot
/// may vanish (z equal to an eigenvalue) and then diag(pivot) is exactly
/// singular.
UflFactors factorize(const FiniteTridiagonal& h, Complex z, long anchor, const CfOptions& opts,
                     PivotPolicy policy = PivotPolicy::Strict);
UflFactors factorize(const FiniteTridiagonal& h, Complex z, const CfOptions& opts);

DenseMatrix outer_factor_dense(const UflFactors& fac);  ///< U
DenseMatrix pivot_factor_dense(const UflFactors& fac);  ///< diag(pivot)
DenseMatrix inner_factor_dense(const UflFactors& fac);  ///< L
Complex determinant(const UflFactors& fac);             ///< product of pivots

struct WavefunctionResult {
  long lo = 0;                ///< operator index of psi[0]
  std::vector<Complex> psi;   ///< unnormalized, anchor entry = 1
  double residual = 0.0;      ///< ||(H - E) psi||_2 / ||psi||_2
};

/// Right null vector of H - E assembled from the factor entries by
/// back-substitution away from the anchor:
///   psi_k   = -f_k c_k psi_{k-1}   above the anchor,
///   psi_k   = -f_k b_k psi_{k+1}   below the anchor.
/// E should be (close to) an eigenvalue; the residual reports how close.
WavefunctionResult wavefunction(const FiniteTridiagonal& h, Complex energy, long anchor,
                                const CfOptions& opts);
WavefunctionResult wavefunction(const FiniteTridiagonal& h, Complex energy, const CfOptions& opts);

/// Left null vector, phi (H - E) = 0, via the transposed operator.
WavefunctionResult left_wavefunction(const FiniteTridiagonal& h, Complex energy, long anchor,
                                     const CfOptions& opts);

}  // namespace cfgreen
