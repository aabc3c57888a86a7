#pragma once

#include <optional>

#include "cfgreen/types.hpp"

namespace cfgreen {

enum class DepthPolicy {
  Adaptive,  // double the truncation depth until the value stabilizes
  Fixed,     // always truncate at fixed_depth rows past the anchor
};

struct CfOptions {
  double tol_tail = 1e-13;       // relative stabilization threshold between depth doublings
  double breakdown_eps = 1e-14;  // |denominator| below this flags a breakdown
  long max_depth = 1000000;      // adaptive depth cap for unbounded windows
  DepthPolicy policy = DepthPolicy::Adaptive;
  long initial_depth = 32;
  long fixed_depth = 256;  // only read when policy == Fixed
};

struct SecularEvaluation {
  Complex value{0.0, 0.0};
  long depth_down = 0;          // rows consumed above the anchor
  long depth_up = 0;            // rows consumed below the anchor
  double tail_delta = 0.0;      // |f(depth) - f(depth/2)| at the last doubling
  bool breakdown = false;       // some denominator fell under breakdown_eps
  bool converged = true;        // false when an unbounded tail never stabilized

  bool usable() const { return converged && !breakdown; }
};

/// f_row obtained by recursing down from the top of the window (rows > row
/// feed in); f_j = 1 / (a_j - z - b_j f_{j+1} c_{j+1}), truncated tail = 0.
SecularEvaluation continued_fraction_down(const CoefficientSource& s, Complex z, long row,
                                          const CfOptions& opts);

/// Mirror image climbing up from the bottom of the window:
/// f_j = 1 / (a_j - z - c_j f_{j-1} b_{j-1}).
SecularEvaluation continued_fraction_up(const CoefficientSource& s, Complex z, long row,
                                        const CfOptions& opts);

/// Secular function anchored at `anchor`:
///   S(z) = a_r - z - c_r f_{r-1} b_{r-1} - b_r f_{r+1} c_{r+1},
/// with either branch dropped when the window ends at the anchor.  Roots of
/// S are eigenvalues of the operator restricted to the window; S = 1/f_r.
SecularEvaluation secular_value(const CoefficientSource& s, Complex z, long anchor,
                                const CfOptions& opts);

/// Diagonal resolvent entry G_rr(z) = 1/S_r(z).  The breakdown flag is also
/// set when S itself is tiny (z sitting on an eigenvalue).
SecularEvaluation green_diagonal(const CoefficientSource& s, Complex z, long row,
                                 const CfOptions& opts);

/// det(H - z) as the product of the inverse continued-fraction values over a
/// bounded window (single downward sweep).
Complex determinant_cf(const CoefficientSource& s, Complex z, const CfOptions& opts);

/// Smallest K <= kmax with |c_{K+1}| <= eps and |b_K c_{K+1}| <= eps^2: the
/// chain decouples after row K and the leading K-row block carries exact
/// eigenvalues.  Window must reach past kmax.
std::optional<long> detect_termination(const CoefficientSource& s, long kmax, double eps = 1e-14);

/// Anchor used when the caller does not pick one: the center of a bounded
/// window, else the bounded end.
long default_anchor(const Window& w);

}  // namespace cfgreen
