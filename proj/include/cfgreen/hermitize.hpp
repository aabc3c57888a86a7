#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cfgreen/cfrac.hpp"
#include "cfgreen/dense.hpp"
#include "cfgreen/mat2.hpp"
#include "cfgreen/types.hpp"

namespace cfgreen {

/// The Hermitian companion [[0, H], [H^dagger, 0]] of a general square H.
/// Its spectrum is the plus/minus pairs of the singular values of H.
DenseMatrix hermitian_dilation(const DenseMatrix& h);

/// Index order that interleaves the two blocks of the dilation:
/// perm[2i] = i, perm[2i+1] = dim + i.  Conjugating the dilation by this
/// permutation makes it block-tridiagonal with 2x2 blocks.
std::vector<std::size_t> interleave_permutation(std::size_t dim);
DenseMatrix permutation_matrix(const std::vector<std::size_t>& perm);
DenseMatrix permute_symmetric(const DenseMatrix& m, const std::vector<std::size_t>& perm);

/// Block-tridiagonal operator with 2x2 blocks, indexed like
/// FiniteTridiagonal: b[k] couples block row k to k+1, c[k] couples k+1 to k.
struct BlockTridiagonal {
  long offset = 0;
  std::vector<Mat2> a;
  std::vector<Mat2> b;
  std::vector<Mat2> c;

  std::size_t dim() const { return a.size(); }
  long lo() const { return offset; }
  long hi() const { return offset + static_cast<long>(dim()) - 1; }
};

/// Blocks of the interleaved dilation of a tridiagonal H:
///   A_k = [[0, a_k], [conj(a_k), 0]],
///   B_k = [[0, b_k], [conj(c_{k+1}), 0]],   C_{k+1} = B_k^dagger.
/// The result is Hermitian as a block matrix.
BlockTridiagonal block_form(const FiniteTridiagonal& h);

/// 2*dim x 2*dim dense assembly of a block-tridiagonal operator.
DenseMatrix block_to_dense(const BlockTridiagonal& bt);

struct BlockSecularEval {
  Mat2 s;                  ///< S(sigma) at the anchor block row
  Complex det_s{0.0, 0.0};
  long depth_down = 0;
  long depth_up = 0;
  bool breakdown = false;
};

/// 2x2 matrix continued fraction for the block secular function:
///   F_k = (A_k - sigma I - B_k F_{k+1} C_{k+1})^{-1} descending,
///   F_k = (A_k - sigma I - C_k F_{k-1} B_{k-1})^{-1} ascending,
///   S   = A_r - sigma I - C_r F_{r-1} B_{r-1} - B_r F_{r+1} C_{r+1}.
/// For real sigma S is Hermitian, so det S is real up to rounding.  Note
/// det S = det(full - sigma) / det(minor - sigma) with the anchor block
/// deleted from the minor, so a root that the minor shares with the full
/// operator cancels out of det S; root scans must use block_determinant,
/// which has no such cancellations.
BlockSecularEval block_secular(const BlockTridiagonal& bt, double sigma, long anchor,
                               const CfOptions& opts);

/// det(blocks - sigma I) accumulated in log form via the division-free
/// three-term recurrence on trailing-minor determinants
///   D_k = det(A_k - s) D_{k+1} - tr(adj(A_k - s) B_k P_{k+1} C_{k+1})
///         + det(B_k) det(C_{k+1}) D_{k+2},
/// where P_k is the adjugate of the Schur pivot scaled by D_{k+1} (itself a
/// polynomial in sigma).  Unlike the pivot-product form this never inverts a
/// block, so a trailing minor passing through zero near a genuine root cannot
/// wreck the evaluation.  The result is a polynomial in sigma, real for real
/// sigma when the blocks are Hermitian; its nonnegative roots are exactly the
/// singular values.
struct BlockLogDet {
  Complex phase{1.0, 0.0};  ///< det / |det|; 0 when the determinant vanishes exactly
  double log_abs = 0.0;     ///< ln |det|; -inf when the determinant vanishes
  bool breakdown = false;   ///< non-finite arithmetic was hit

  /// phase * exp(log_abs); can overflow to inf for large operators, which
  /// is why the scan works with the log form directly.
  Complex value() const;
};
BlockLogDet block_determinant(const BlockTridiagonal& bt, double sigma);

/// Pivot-product form of the same determinant: forward block elimination
/// Phi_0 = A_0 - sigma, Phi_k = (A_k - sigma) - C_{k-1}^H Phi_{k-1}^{-1} B_{k-1},
/// det = prod_k det(Phi_k), accumulated in log form.  Each factor is
/// O(1)-conditioned, so the result keeps *relative* accuracy even when the
/// determinant is hundreds of orders below its envelope -- exactly where the
/// division-free recurrence's additive cancellation floors out at
/// eps * (term size) with a random sign.  The price is a division per step:
/// when a mid-chain pivot determinant nearly vanishes (sigma hits an
/// eigenvalue of a leading sub-pencil) the elimination is abandoned and
/// nullopt is returned; callers fall back to block_determinant, which has no
/// poles.  A vanishing *final* pivot is a genuine zero of the determinant and
/// is reported as such, not as a breakdown.
std::optional<BlockLogDet> block_determinant_pivot(const BlockTridiagonal& bt, double sigma);

struct SingularOptions {
  CfOptions cf;
  long samples = 4001;       ///< scan resolution on [0, sigma_max]
  double sigma_max = 0.0;    ///< 0 -> max of the induced 1-/inf-norm bounds, padded 10%
  double bisect_tol = 1e-13;
  double accept_rel = 1e-12;  ///< |det S| threshold (relative to the scan median)
                              ///< for roots found as minima rather than sign changes
  double dedup_rel = 1e-9;    ///< merge radius relative to sigma_max
  double cluster_rel = 1e-2;  ///< closer pairs than this (relative) raise a warning
};

struct SingularValueResult {
  std::vector<double> sigma;  ///< descending
  double sigma_max = 0.0;     ///< scan bound actually used
  bool cluster_warning = false;
  std::vector<std::string> warnings;
};

/// Full pipeline: block form, a calibration pass fixing the magnitude
/// normalization, then a block-determinant scan over [0, sigma_max] with
/// bisection on sign changes, minima polishing for even-multiplicity roots,
/// an explicit sigma = 0 endpoint test, and dedup.
SingularValueResult singular_values(const FiniteTridiagonal& h, const SingularOptions& opts);

}  // namespace cfgreen
