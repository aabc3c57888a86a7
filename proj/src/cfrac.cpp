#include "cfgreen/cfrac.hpp"

#include <cmath>
#include <stdexcept>

namespace cfgreen {

namespace {

constexpr Complex kZero{0.0, 0.0};

// Division that never emits inf/nan: vanishing denominators produce a huge
// but finite stand-in so downstream magnitude tests keep working.  Callers
// flag such points via the breakdown flag.
Complex safe_reciprocal(Complex denom) {
  const double mag = std::abs(denom);
  if (!std::isfinite(mag) || mag == 0.0) return Complex(1e300, 0.0);
  const Complex f = Complex(1.0, 0.0) / denom;
  if (!std::isfinite(std::abs(f))) return Complex(1e300, 0.0);
  return f;
}

// Single downward sweep: truncate the tail to zero above `top`, recurse
// f_j = 1/(a_j - z - b_j f_{j+1} c_{j+1}) down to `row`.
Complex sweep_down(const CoefficientSource& s, Complex z, long row, long top, double eps,
                   bool* breakdown) {
  Complex f = kZero;
  for (long j = top; j >= row; --j) {
    Complex denom = s.diag_at(j) - z;
    if (j < top) {
      const Complex coupling = s.super_at(j) * s.sub_at(j + 1);
      if (coupling != kZero) denom -= coupling * f;
    }
    if (std::abs(denom) < eps) *breakdown = true;
    f = safe_reciprocal(denom);
  }
  return f;
}

// Mirror image: f_j = 1/(a_j - z - c_j f_{j-1} b_{j-1}) climbing from
// `bottom` up to `row`.
Complex sweep_up(const CoefficientSource& s, Complex z, long row, long bottom, double eps,
                 bool* breakdown) {
  Complex f = kZero;
  for (long j = bottom; j <= row; ++j) {
    Complex denom = s.diag_at(j) - z;
    if (j > bottom) {
      const Complex coupling = s.sub_at(j) * s.super_at(j - 1);
      if (coupling != kZero) denom -= coupling * f;
    }
    if (std::abs(denom) < eps) *breakdown = true;
    f = safe_reciprocal(denom);
  }
  return f;
}

using Sweep = Complex (*)(const CoefficientSource&, Complex, long, long, double, bool*);

SecularEvaluation run_tail(const CoefficientSource& s, Complex z, long row, bool downward,
                           const CfOptions& opts) {
  if (!s.window.contains(row))
    throw std::out_of_range("continued fraction: row outside the window");
  const bool bounded_side = downward ? !s.window.unbounded_above : !s.window.unbounded_below;
  const Sweep sweep = downward ? sweep_down : sweep_up;
  const auto wall_at = [&](long depth) { return downward ? row + depth : row - depth; };

  SecularEvaluation ev;
  long& depth_field = downward ? ev.depth_down : ev.depth_up;

  if (bounded_side) {
    const long wall = downward ? s.window.hi : s.window.lo;
    bool bd = false;
    ev.value = sweep(s, z, row, wall, opts.breakdown_eps, &bd);
    depth_field = downward ? wall - row : row - wall;
    ev.breakdown = bd;
    return ev;
  }

  if (opts.policy == DepthPolicy::Fixed) {
    bool bd = false;
    ev.value = sweep(s, z, row, wall_at(opts.fixed_depth), opts.breakdown_eps, &bd);
    depth_field = opts.fixed_depth;
    ev.breakdown = bd;
    return ev;
  }

  long depth = std::max<long>(1, opts.initial_depth);
  bool bd = false;
  Complex prev = sweep(s, z, row, wall_at(depth), opts.breakdown_eps, &bd);
  ev.converged = false;
  while (true) {
    const long next = 2 * depth;
    if (next > opts.max_depth) {
      ev.value = prev;
      depth_field = depth;
      ev.breakdown = bd;
      break;
    }
    bd = false;
    const Complex cur = sweep(s, z, row, wall_at(next), opts.breakdown_eps, &bd);
    ev.tail_delta = std::abs(cur - prev);
    depth = next;
    if (ev.tail_delta <= opts.tol_tail * std::max(1.0, std::abs(cur))) {
      ev.value = cur;
      depth_field = depth;
      ev.breakdown = bd;
      ev.converged = true;
      break;
    }
    prev = cur;
  }
  return ev;
}

}  // namespace

SecularEvaluation continued_fraction_down(const CoefficientSource& s, Complex z, long row,
                                          const CfOptions& opts) {
  return run_tail(s, z, row, true, opts);
}

SecularEvaluation continued_fraction_up(const CoefficientSource& s, Complex z, long row,
                                        const CfOptions& opts) {
  return run_tail(s, z, row, false, opts);
}

SecularEvaluation secular_value(const CoefficientSource& s, Complex z, long anchor,
                                const CfOptions& opts) {
  if (!s.window.contains(anchor))
    throw std::out_of_range("secular_value: anchor outside the window");
  SecularEvaluation ev;
  Complex value = s.diag_at(anchor) - z;

  if (s.window.unbounded_above || anchor < s.window.hi) {
    const SecularEvaluation down = continued_fraction_down(s, z, anchor + 1, opts);
    const Complex coupling = s.super_at(anchor) * s.sub_at(anchor + 1);
    if (coupling != kZero) value -= coupling * down.value;
    ev.depth_down = down.depth_down + 1;
    ev.tail_delta = std::max(ev.tail_delta, down.tail_delta);
    ev.breakdown = ev.breakdown || down.breakdown;
    ev.converged = ev.converged && down.converged;
  }
  if (s.window.unbounded_below || anchor > s.window.lo) {
    const SecularEvaluation up = continued_fraction_up(s, z, anchor - 1, opts);
    const Complex coupling = s.sub_at(anchor) * s.super_at(anchor - 1);
    if (coupling != kZero) value -= coupling * up.value;
    ev.depth_up = up.depth_up + 1;
    ev.tail_delta = std::max(ev.tail_delta, up.tail_delta);
    ev.breakdown = ev.breakdown || up.breakdown;
    ev.converged = ev.converged && up.converged;
  }
  if (!std::isfinite(std::abs(value))) {
    value = Complex(1e300, 0.0);
    ev.breakdown = true;
  }
  ev.value = value;
  return ev;
}

SecularEvaluation green_diagonal(const CoefficientSource& s, Complex z, long row,
                                 const CfOptions& opts) {
  SecularEvaluation ev = secular_value(s, z, row, opts);
  if (std::abs(ev.value) < opts.breakdown_eps) ev.breakdown = true;
  ev.value = safe_reciprocal(ev.value);
  return ev;
}

Complex determinant_cf(const CoefficientSource& s, Complex z, const CfOptions& opts) {
  if (!s.window.bounded())
    throw std::logic_error("determinant_cf: needs a bounded window");
  Complex det(1.0, 0.0);
  Complex f = kZero;
  for (long j = s.window.hi; j >= s.window.lo; --j) {
    Complex denom = s.diag_at(j) - z;
    if (j < s.window.hi) {
      const Complex coupling = s.super_at(j) * s.sub_at(j + 1);
      if (coupling != kZero) denom -= coupling * f;
    }
    det *= denom;
    f = safe_reciprocal(denom);
  }
  return det;
}

std::optional<long> detect_termination(const CoefficientSource& s, long kmax, double eps) {
  if (s.window.unbounded_below)
    throw std::logic_error("detect_termination: needs a window bounded below");
  const long last = s.window.unbounded_above ? kmax : std::min(kmax, s.window.hi - 1);
  for (long k = s.window.lo; k <= last; ++k) {
    const double c_next = std::abs(s.sub_at(k + 1));
    if (c_next > eps) continue;
    const double prod = std::abs(s.super_at(k) * s.sub_at(k + 1));
    if (prod <= eps * eps) return k;
  }
  return std::nullopt;
}

long default_anchor(const Window& w) {
  if (w.bounded()) return w.lo + w.size() / 2;
  if (!w.unbounded_below) return w.lo;
  if (!w.unbounded_above) return w.hi;
  return 0;
}

}  // namespace cfgreen
