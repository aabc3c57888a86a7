#include "cfgreen/hermitize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cfgreen/grid.hpp"
#include "cfgreen/roots.hpp"

namespace cfgreen {

DenseMatrix hermitian_dilation(const DenseMatrix& h) {
  const std::size_t n = h.n;
  DenseMatrix d(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d.at(i, n + j) = h.at(i, j);
      d.at(n + j, i) = std::conj(h.at(i, j));
    }
  return d;
}

std::vector<std::size_t> interleave_permutation(std::size_t dim) {
  std::vector<std::size_t> perm(2 * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    perm[2 * i] = i;
    perm[2 * i + 1] = dim + i;
  }
  return perm;
}

DenseMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  DenseMatrix p(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) p.at(k, perm[k]) = 1.0;
  return p;
}

DenseMatrix permute_symmetric(const DenseMatrix& m, const std::vector<std::size_t>& perm) {
  if (perm.size() != m.n) throw std::invalid_argument("permute_symmetric: size mismatch");
  DenseMatrix r(m.n);
  for (std::size_t k = 0; k < m.n; ++k)
    for (std::size_t l = 0; l < m.n; ++l) r.at(k, l) = m.at(perm[k], perm[l]);
  return r;
}

BlockTridiagonal block_form(const FiniteTridiagonal& h) {
  const std::size_t n = h.dim();
  BlockTridiagonal bt;
  bt.offset = h.offset;
  bt.a.resize(n);
  if (n > 1) {
    bt.b.resize(n - 1);
    bt.c.resize(n - 1);
  }
  for (std::size_t k = 0; k < n; ++k)
    bt.a[k] = Mat2{Complex(0.0, 0.0), h.diag[k], std::conj(h.diag[k]), Complex(0.0, 0.0)};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    bt.b[k] = Mat2{Complex(0.0, 0.0), h.upper[k], std::conj(h.lower[k]), Complex(0.0, 0.0)};
    bt.c[k] = bt.b[k].adjoint();
  }
  return bt;
}

DenseMatrix block_to_dense(const BlockTridiagonal& bt) {
  const std::size_t n = bt.dim();
  DenseMatrix m(2 * n);
  const auto put = [&](std::size_t bi, std::size_t bj, const Mat2& blk) {
    m.at(2 * bi, 2 * bj) = blk.m00;
    m.at(2 * bi, 2 * bj + 1) = blk.m01;
    m.at(2 * bi + 1, 2 * bj) = blk.m10;
    m.at(2 * bi + 1, 2 * bj + 1) = blk.m11;
  };
  for (std::size_t k = 0; k < n; ++k) put(k, k, bt.a[k]);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    put(k, k + 1, bt.b[k]);
    put(k + 1, k, bt.c[k]);
  }
  return m;
}

BlockSecularEval block_secular(const BlockTridiagonal& bt, double sigma, long anchor,
                               const CfOptions& opts) {
  const long lo = bt.lo();
  const long hi = bt.hi();
  if (anchor < lo || anchor > hi)
    throw std::out_of_range("block_secular: anchor outside the window");

  const Mat2 shift = Mat2::identity() * Complex(sigma, 0.0);
  BlockSecularEval ev;
  ev.depth_down = hi - anchor;
  ev.depth_up = anchor - lo;

  // F_k = (A_k - sigma I - B_k F_{k+1} C_{k+1})^{-1} from the top wall down.
  Mat2 f_down = Mat2::zero();
  for (long k = hi; k > anchor; --k) {
    const std::size_t i = static_cast<std::size_t>(k - lo);
    Mat2 m = bt.a[i] - shift;
    if (k < hi) m = m - bt.b[i] * f_down * bt.c[i];
    f_down = m.inverse(opts.breakdown_eps, &ev.breakdown);
  }
  // F_k = (A_k - sigma I - C_k F_{k-1} B_{k-1})^{-1} from the bottom wall up.
  Mat2 f_up = Mat2::zero();
  for (long k = lo; k < anchor; ++k) {
    const std::size_t i = static_cast<std::size_t>(k - lo);
    Mat2 m = bt.a[i] - shift;
    if (k > lo) m = m - bt.c[i - 1] * f_up * bt.b[i - 1];
    f_up = m.inverse(opts.breakdown_eps, &ev.breakdown);
  }

  const std::size_t ia = static_cast<std::size_t>(anchor - lo);
  Mat2 s = bt.a[ia] - shift;
  if (anchor < hi) s = s - bt.b[ia] * f_down * bt.c[ia];
  if (anchor > lo) s = s - bt.c[ia - 1] * f_up * bt.b[ia - 1];
  ev.s = s;
  ev.det_s = s.det();
  return ev;
}

Complex BlockLogDet::value() const { return phase * std::exp(log_abs); }

BlockLogDet block_determinant(const BlockTridiagonal& bt, double sigma) {
  const long lo = bt.lo();
  const long hi = bt.hi();
  const Mat2 shift = Mat2::identity() * Complex(sigma, 0.0);

  // Trailing-minor determinants D_k = det(blocks k..hi - sigma I) and the
  // scaled adjugate pivots P_k obey, for 2x2 blocks,
  //   Phi_k = (A_k - s) D_{k+1} - B_k P_{k+1} C_{k+1},    P_k = adj(Phi_k),
  //   D_k   = det(A_k - s) D_{k+1}
  //           - tr(adj(A_k - s) B_k P_{k+1} C_{k+1})
  //           + det(B_k) det(C_{k+1}) D_{k+2},
  // using det(X - Y) = det X - tr(adj(X) Y) + det Y.  Every quantity is a
  // polynomial in sigma; the triple (P, D, D') is jointly homogeneous, so a
  // common rescale each step prevents overflow while a running log tracks
  // the true magnitude.
  BlockLogDet out;
  Complex d_next(1.0, 0.0);  // D_{k+1}
  Complex d_next2(0.0, 0.0); // D_{k+2}; unused while k == hi
  Mat2 p_next = Mat2::zero();
  double scale_log = 0.0;

  for (long k = hi; k >= lo; --k) {
    const std::size_t i = static_cast<std::size_t>(k - lo);
    const Mat2 x = bt.a[i] - shift;
    Complex d_cur;
    Mat2 phi;
    if (k < hi) {
      const Mat2 bpc = bt.b[i] * p_next * bt.c[i];
      phi = x * d_next - bpc;
      d_cur = x.det() * d_next - (x.adjugate() * bpc).trace() +
              bt.b[i].det() * bt.c[i].det() * d_next2;
    } else {
      phi = x;
      d_cur = x.det();
    }
    const Mat2 p_cur = phi.adjugate();

    if (!std::isfinite(std::abs(d_cur)) || !std::isfinite(p_cur.max_abs())) {
      out.phase = Complex(0.0, 0.0);
      out.log_abs = std::numeric_limits<double>::quiet_NaN();
      out.breakdown = true;
      return out;
    }

    const double m = std::max({std::abs(d_cur), std::abs(d_next), p_cur.max_abs()});
    if (m == 0.0) {  // the whole trailing polynomial vanished: det is exactly 0
      out.phase = Complex(0.0, 0.0);
      out.log_abs = -std::numeric_limits<double>::infinity();
      return out;
    }
    const Complex inv_m(1.0 / m, 0.0);
    d_next2 = d_next * inv_m;
    d_next = d_cur * inv_m;
    p_next = p_cur * inv_m;
    scale_log += std::log(m);
  }

  const double mag = std::abs(d_next);  // scaled D_lo
  if (mag == 0.0) {
    out.phase = Complex(0.0, 0.0);
    out.log_abs = -std::numeric_limits<double>::infinity();
    return out;
  }
  out.phase = d_next / mag;
  out.log_abs = std::log(mag) + scale_log;
  return out;
}

std::optional<BlockLogDet> block_determinant_pivot(const BlockTridiagonal& bt, double sigma) {
  const std::size_t n = bt.dim();
  BlockLogDet out;
  if (n == 0) return out;  // empty product: det = 1
  const Mat2 shift = Mat2::identity() * Complex(sigma, 0.0);

  Complex phase(1.0, 0.0);
  double log_abs = 0.0;
  Mat2 phi = bt.a[0] - shift;
  for (std::size_t i = 0;; ++i) {
    const Complex det = phi.det();
    const double mag = std::abs(det);
    if (!std::isfinite(mag)) return std::nullopt;
    if (i + 1 == n) {
      if (mag == 0.0) {
        out.phase = Complex(0.0, 0.0);
        out.log_abs = -std::numeric_limits<double>::infinity();
        return out;
      }
      out.phase = phase * (det / mag);
      out.log_abs = log_abs + std::log(mag);
      return out;
    }
    // A mid-chain pivot determinant well below its block's natural det scale
    // poisons later factors through the division: when sigma sits near an
    // eigenvalue of both a leading sub-pencil and the full pencil, the noise
    // eps/delta crosses the signal ~delta while delta is still ~1e-9.  Trip
    // to the division-free fallback long before that point.  (A small det
    // that *is* the block's scale -- e.g. an all-tiny block -- divides out
    // exactly and is not a breakdown.)
    const double block_scale = phi.max_abs();
    if (!(mag > 1e-6 * block_scale * block_scale)) return std::nullopt;
    phase *= det / mag;
    log_abs += std::log(mag);
    const Mat2 inv = phi.adjugate() * (Complex(1.0, 0.0) / det);
    phi = (bt.a[i + 1] - shift) - bt.c[i] * inv * bt.b[i];
  }
}

SingularValueResult singular_values(const FiniteTridiagonal& h, const SingularOptions& opts) {
  const std::size_t n = h.dim();
  const BlockTridiagonal bt = block_form(h);

  double sigma_max = opts.sigma_max;
  if (sigma_max <= 0.0) {
    // ||H||_2 <= max(||H||_1, ||H||_inf); rows resp. columns of a
    // tridiagonal touch at most three entries.
    double norm_inf = 0.0, norm_one = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = std::abs(h.diag[i]), col = std::abs(h.diag[i]);
      if (i > 0) {
        row += std::abs(h.lower[i - 1]);
        col += std::abs(h.upper[i - 1]);
      }
      if (i + 1 < n) {
        row += std::abs(h.upper[i]);
        col += std::abs(h.lower[i]);
      }
      norm_inf = std::max(norm_inf, row);
      norm_one = std::max(norm_one, col);
    }
    sigma_max = 1.1 * std::max(norm_inf, norm_one);
    if (sigma_max <= 0.0) sigma_max = 1.0;  // zero matrix: any positive scan range
  }

  // Calibration pass: the determinant spans hundreds of orders of magnitude,
  // so pick a reference log-magnitude and evaluate the scan function as
  // sign * exp(log|det| - ref).  A sigma-independent reference keeps
  // magnitude comparisons between scan points meaningful.
  const std::vector<double> logs = sample_real(
      [&](double sigma) { return block_determinant(bt, sigma).log_abs; }, 0.0,
      sigma_max, std::max<long>(64, opts.samples / 8));
  std::vector<double> finite_logs;
  for (double l : logs)
    if (std::isfinite(l)) finite_logs.push_back(l);
  double ref = 0.0;
  if (!finite_logs.empty()) {
    const std::size_t mid = finite_logs.size() / 2;
    std::nth_element(finite_logs.begin(), finite_logs.begin() + mid, finite_logs.end());
    ref = finite_logs[mid];
  }

  const auto g = [&, ref](double sigma) {
    // Pivot-product evaluation keeps a reliable sign deep inside determinant
    // dips (relative accuracy); the division-free recurrence is the pole-free
    // fallback for the rare sigma where a leading sub-pencil is singular.
    const std::optional<BlockLogDet> piv = block_determinant_pivot(bt, sigma);
    const BlockLogDet d = piv ? *piv : block_determinant(bt, sigma);
    if (d.phase == Complex(0.0, 0.0))
      return std::isnan(d.log_abs) ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    const double e = std::clamp(d.log_abs - ref, -700.0, 700.0);
    return d.phase.real() * std::exp(e);
  };

  RealScanOptions scan;
  scan.samples = opts.samples;
  scan.bisect_tol = opts.bisect_tol;
  scan.accept_rel = opts.accept_rel;
  std::vector<double> found = real_roots(g, 0.0, sigma_max, scan);

  // Dedup on the sigma axis, then largest-first (conventional SVD order).
  std::sort(found.begin(), found.end());
  const double dedup = opts.dedup_rel * sigma_max;
  SingularValueResult out;
  out.sigma_max = sigma_max;
  for (double v : found) {
    if (!out.sigma.empty() && v - out.sigma.back() < dedup) continue;
    out.sigma.push_back(v);
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < out.sigma.size(); ++i)
    min_gap = std::min(min_gap, out.sigma[i] - out.sigma[i - 1]);
  if (min_gap < opts.cluster_rel * sigma_max) {
    out.cluster_warning = true;
    out.warnings.push_back("singular values closer than the cluster threshold; "
                           "treat nearby pairs as possibly degenerate");
  }
  std::reverse(out.sigma.begin(), out.sigma.end());
  return out;
}

}  // namespace cfgreen
