#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cfgreen {

using Complex = std::complex<double>;

/// Thrown when a factorization step divides by a vanishing pivot.
struct BreakdownError : std::runtime_error {
  Complex z;
  long row;
  BreakdownError(Complex z_, long row_, const std::string& what_)
      : std::runtime_error(what_), z(z_), row(row_) {}
};

/// Inclusive index range of a tridiagonal coefficient family.  Either side
/// may be unbounded, in which case the corresponding bound is ignored.
struct Window {
  long lo = 0;
  long hi = 0;
  bool unbounded_below = false;
  bool unbounded_above = false;

  bool contains(long j) const {
    return (unbounded_below || j >= lo) && (unbounded_above || j <= hi);
  }
  bool bounded() const { return !unbounded_below && !unbounded_above; }
  long size() const {
    if (!bounded()) throw std::logic_error("Window::size: unbounded window");
    return hi - lo + 1;
  }
};

/// Lazily evaluated tridiagonal coefficient triple (a_j, b_j, c_j) on an
/// index window.  b_j couples j -> j+1 and is defined for lo <= j < hi;
/// c_j couples j -> j-1 and is defined for lo < j <= hi.  Out-of-window
/// queries are a contract violation and throw.
///
/// Coefficient callables must be pure and reentrant: concurrent queries
/// return identical values with no shared mutable state.
struct CoefficientSource {
  Window window;
  std::function<Complex(long)> a;
  std::function<Complex(long)> b;
  std::function<Complex(long)> c;
  bool grows_down = false;  ///< |a_j| -> inf as j -> -inf
  bool grows_up = false;    ///< |a_j| -> inf as j -> +inf

  Complex diag_at(long j) const;
  Complex super_at(long j) const;
  Complex sub_at(long j) const;
};

/// Dense snapshot of a truncated tridiagonal operator.  Row i of the arrays
/// carries operator index offset + i.
struct FiniteTridiagonal {
  long offset = 0;
  std::vector<Complex> diag;   ///< dim entries
  std::vector<Complex> upper;  ///< dim-1 entries, upper[i] couples row i -> i+1
  std::vector<Complex> lower;  ///< dim-1 entries, lower[i] couples row i+1 -> i

  std::size_t dim() const { return diag.size(); }
  long lo() const { return offset; }
  long hi() const { return offset + static_cast<long>(dim()) - 1; }
  bool contains(long j) const { return j >= lo() && j <= hi(); }
  std::size_t row_of(long j) const { return static_cast<std::size_t>(j - offset); }
};

/// Exact copy of the coefficients on [-m, n] intersected with the source
/// window.  Throws if the intersection is empty.
FiniteTridiagonal truncate(const CoefficientSource& source, long m, long n);

/// Same operator with rows relabelled to start at new_offset.
FiniteTridiagonal reindexed(FiniteTridiagonal h, long new_offset);

/// b and c arrays swapped.
FiniteTridiagonal transpose(FiniteTridiagonal h);

/// Wraps a snapshot of h as a coefficient source (shares an immutable copy).
CoefficientSource as_source(const FiniteTridiagonal& h);

/// Largest entry magnitude.
double max_abs(const FiniteTridiagonal& h);

/// y = (H - shift) x for a tridiagonal H.
std::vector<Complex> apply_shifted(const FiniteTridiagonal& h, Complex shift,
                                   const std::vector<Complex>& x);

}  // namespace cfgreen
