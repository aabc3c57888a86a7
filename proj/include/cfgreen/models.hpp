#pragma once

#include <utility>
#include <vector>

#include "cfgreen/types.hpp"

namespace cfgreen {

/// Bose-Hubbard-like chain with n_bosons + 1 states, centered so the middle
/// site sits at (or next to) index 0.  Diagonal is purely imaginary,
/// couplings are the real symmetric sqrt((k+1)(n-k)) ladder.
/// interaction != 0 adds the real diagonal (interaction/2)*(n-2k)^2.
FiniteTridiagonal bose_hubbard(long n_bosons, double gamma, double interaction = 0.0);

/// Five-state chain that is not of Bose-Hubbard form: equidistant imaginary
/// diagonal with mixed real/imaginary couplings.  Kept as a stress case for
/// root finding away from the solvable family.
FiniteTridiagonal non_bh_k5(double gamma);

enum class PotentialKind {
  DoubleWell,      // x^2 (x-1)^2 - x + 1/2
  ComplexQuartic,  // -(x - i eta)^4 / 4 + (x - i eta)^2 / 4
  HarmonicTest,    // x^2, used for discretization sanity checks
  Custom,          // linear interpolation through (x, value) samples
};

struct PotentialSpec {
  PotentialKind kind = PotentialKind::DoubleWell;
  double eta = 1.0;  // only ComplexQuartic reads this; must be > 0 there
  std::vector<std::pair<double, Complex>> table;  // only Custom; sorted by x

  Complex operator()(double x) const;
};

/// Central-difference discretization of -psi'' + V(x) psi on the lattice
/// x_k = k*h, k in [-m, n].  The matrix stores V(x_k) on the diagonal and
/// -1/h^2 off it; the constant 2/h^2 is returned separately so callers can
/// shift eigenvalues back to the physical energy scale.
struct DiscretizedOperator {
  FiniteTridiagonal matrix;
  double shift = 0.0;
};

DiscretizedOperator discrete_schrodinger(const PotentialSpec& v, double h, long m, long n);

/// Semi-infinite synthetic recurrence with rapidly growing, strongly
/// asymmetric couplings: a_n = n, b_n = 4 n^2, c_{n+1} = -n on [1, inf).
/// The negative subdiagonal keeps the continued-fraction tail convergent
/// (see the note in the implementation); used to exercise adaptive depth.
CoefficientSource growing_tail_source();

}  // namespace cfgreen
