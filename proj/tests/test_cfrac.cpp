#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "cfgreen/cfrac.hpp"
#include "cfgreen/dense.hpp"
#include "cfgreen/models.hpp"
#include "cfgreen/oracle.hpp"
#include "cfgreen/types.hpp"
#include "doctest.h"

using namespace cfgreen;

namespace {

// Two-level toy chain with hand-computable fractions.
CoefficientSource two_level() {
  CoefficientSource s;
  s.window = Window{1, 2, false, false};
  s.a = [](long j) { return j == 1 ? Complex(0.0, -0.5) : Complex(0.0, 0.5); };
  s.b = [](long) { return Complex(1.0, 0.0); };
  s.c = [](long) { return Complex(1.0, 0.0); };
  return s;
}

}  // namespace

TEST_CASE("downward and upward fractions on a two-level chain") {
  const CoefficientSource s = two_level();
  const CfOptions opts;
  const Complex z(0.0, 0.0);

  // f_2 = 1/(a_2 - z) with a zero tail above the window.
  const SecularEvaluation f2 = continued_fraction_down(s, z, 2, opts);
  CHECK(std::abs(f2.value - Complex(0.0, -2.0)) <= 1e-15);
  CHECK(f2.usable());

  // f_1 = 1/(a_1 - z - b_1 f_2 c_2) = 1/(1.5 i).
  const SecularEvaluation f1 = continued_fraction_down(s, z, 1, opts);
  CHECK(std::abs(f1.value - Complex(0.0, -2.0 / 3.0)) <= 1e-15);

  // Climbing up instead: f_1 = 1/(a_1 - z), f_2 = 1/(a_2 - z - c_2 f_1 b_1).
  const SecularEvaluation u1 = continued_fraction_up(s, z, 1, opts);
  CHECK(std::abs(u1.value - Complex(0.0, 2.0)) <= 1e-15);
  const SecularEvaluation u2 = continued_fraction_up(s, z, 2, opts);
  CHECK(std::abs(u2.value - Complex(0.0, 2.0 / 3.0)) <= 1e-15);
}

TEST_CASE("secular value is the reciprocal of the anchored fraction") {
  const CoefficientSource s = two_level();
  const CfOptions opts;
  const Complex z(0.0, 0.0);

  const SecularEvaluation s1 = secular_value(s, z, 1, opts);
  CHECK(std::abs(s1.value - Complex(0.0, 1.5)) <= 1e-15);
  const SecularEvaluation s2 = secular_value(s, z, 2, opts);
  CHECK(std::abs(s2.value - Complex(0.0, -1.5)) <= 1e-15);

  const SecularEvaluation g1 = green_diagonal(s, z, 1, opts);
  CHECK(std::abs(g1.value - Complex(1.0, 0.0) / s1.value) <= 1e-15);
}

TEST_CASE("upward fraction at the bottom of the imaginary-ladder chain") {
  const double gamma = 0.73;
  const FiniteTridiagonal h = bose_hubbard(2, gamma);
  const CoefficientSource s = as_source(h);
  const CfOptions opts;
  // Bottom row carries a = -2 i gamma, so f = 1/(a - 0) = i/(2 gamma).
  const SecularEvaluation f = continued_fraction_up(s, Complex(0.0, 0.0), h.lo(), opts);
  CHECK(std::abs(f.value - Complex(0.0, 0.5 / gamma)) <= 1e-15);
}

TEST_CASE("secular value matches the dense determinant ratio") {
  FiniteTridiagonal h;
  h.offset = 0;
  h.diag = {Complex(1, 0.3), Complex(-0.5, 1), Complex(0, -2), Complex(2, 0), Complex(0.7, -0.4)};
  h.upper = {Complex(1, 0), Complex(0, 1.5), Complex(-2, 0.5), Complex(0.3, 0)};
  h.lower = {Complex(2, -1), Complex(1, 0), Complex(0, -0.7), Complex(1.1, 0.2)};
  const CoefficientSource s = as_source(h);
  const CfOptions opts;

  for (const Complex z : {Complex(0.3, -0.7), Complex(-1.0, 0.2)}) {
    for (long anchor = 0; anchor <= 4; ++anchor) {
      const SecularEvaluation se = secular_value(s, z, anchor, opts);

      DenseMatrix full = to_dense(h);
      for (std::size_t i = 0; i < full.n; ++i) full.at(i, i) -= z;
      // Deleting the anchor row and column splits a tridiagonal into two
      // decoupled blocks; the minor determinant is the product.
      Complex minor(1.0, 0.0);
      const auto block_det = [&](long from, long to) {
        if (from > to) return Complex(1.0, 0.0);
        const std::size_t bn = static_cast<std::size_t>(to - from + 1);
        DenseMatrix blk(bn);
        for (std::size_t i = 0; i < bn; ++i) {
          const std::size_t r = static_cast<std::size_t>(from) + i;
          blk.at(i, i) = h.diag[r] - z;
          if (i + 1 < bn) {
            blk.at(i, i + 1) = h.upper[r];
            blk.at(i + 1, i) = h.lower[r];
          }
        }
        return lu_det(blk);
      };
      minor = block_det(0, anchor - 1) * block_det(anchor + 1, 4);
      const Complex ref = lu_det(full) / minor;
      CHECK(std::abs(se.value - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("continued-fraction determinant equals the LU determinant") {
  const CfOptions opts;
  {
    const FiniteTridiagonal h = bose_hubbard(2, 0.3);
    const Complex z(0.4, -0.9);
    DenseMatrix m = to_dense(h);
    for (std::size_t i = 0; i < m.n; ++i) m.at(i, i) -= z;
    const Complex ref = lu_det(m);
    const Complex cf = determinant_cf(as_source(h), z, opts);
    CHECK(std::abs(cf - ref) <= 1e-12 * std::abs(ref));
  }
  {
    const FiniteTridiagonal h = non_bh_k5(0.7);
    const Complex z(1.0, 0.5);
    DenseMatrix m = to_dense(h);
    for (std::size_t i = 0; i < m.n; ++i) m.at(i, i) -= z;
    const Complex ref = lu_det(m);
    const Complex cf = determinant_cf(as_source(h), z, opts);
    CHECK(std::abs(cf - ref) <= 1e-12 * std::abs(ref));
  }
  // Unbounded windows have no finite determinant.
  CHECK_THROWS_AS(determinant_cf(growing_tail_source(), Complex(0.0, 0.0), opts),
                  std::logic_error);
}

TEST_CASE("termination detection finds an exactly decoupled leading block") {
  CoefficientSource s;
  s.window = Window{0, 9, false, false};
  s.a = [](long j) { return Complex(static_cast<double>(j), 0.0); };
  s.b = [](long) { return Complex(1.0, 0.0); };
  s.c = [](long j) { return j == 3 ? Complex(0.0, 0.0) : Complex(1.0, 0.0); };
  // Coupling from row 3 back to row 2 vanishes: rows 0..2 decouple.
  const std::optional<long> k = detect_termination(s, 9);
  REQUIRE(k.has_value());
  CHECK(*k == 2);

  CoefficientSource dense_chain = s;
  dense_chain.c = [](long) { return Complex(1.0, 0.0); };
  CHECK_FALSE(detect_termination(dense_chain, 9).has_value());

  CoefficientSource below;
  below.window = Window{0, 0, true, false};
  below.a = [](long) { return Complex(0.0, 0.0); };
  below.b = [](long) { return Complex(1.0, 0.0); };
  below.c = [](long) { return Complex(1.0, 0.0); };
  CHECK_THROWS_AS(detect_termination(below, 5), std::logic_error);
}

TEST_CASE("default anchor sits mid-window or at the bounded end") {
  CHECK(default_anchor(Window{0, 4, false, false}) == 2);
  CHECK(default_anchor(Window{-1, 0, false, false}) == 0);
  CHECK(default_anchor(Window{3, 0, false, true}) == 3);
  CHECK(default_anchor(Window{0, 5, true, false}) == 5);
  CHECK(default_anchor(Window{0, 0, true, true}) == 0);
}

TEST_CASE("adaptive tail stabilizes on the growing asymmetric recurrence") {
  const CoefficientSource s = growing_tail_source();
  const Complex z(0.5, 0.0);

  CfOptions adaptive;
  const SecularEvaluation a = continued_fraction_down(s, z, 1, adaptive);
  CHECK(a.converged);
  CHECK_FALSE(a.breakdown);
  CHECK(a.tail_delta <= adaptive.tol_tail * std::max(1.0, std::abs(a.value)));
  // Frozen from a depth-doubling run: the limit of f_1 at z = 1/2.
  CHECK(std::abs(a.value - Complex(0.7540813778968708, 0.0)) <= 1e-12);

  CfOptions fixed;
  fixed.policy = DepthPolicy::Fixed;
  fixed.fixed_depth = 8192;
  const SecularEvaluation f = continued_fraction_down(s, z, 1, fixed);
  CHECK(std::abs(a.value - f.value) <= 1e-12 * std::max(1.0, std::abs(f.value)));
}

TEST_CASE("non-decaying tails are reported as unconverged, never truncated silently") {
  // Free chain: constant couplings, z inside the band -> no decaying tail.
  CoefficientSource s;
  s.window = Window{0, 0, false, true};
  s.a = [](long) { return Complex(0.0, 0.0); };
  s.b = [](long) { return Complex(1.0, 0.0); };
  s.c = [](long) { return Complex(1.0, 0.0); };
  CfOptions opts;
  opts.max_depth = 20000;
  const SecularEvaluation e = continued_fraction_down(s, Complex(0.5, 0.0), 0, opts);
  CHECK_FALSE(e.converged);
  CHECK_FALSE(e.usable());

  // Same growth as the asymmetric recurrence but with the coupling sign that
  // makes the approximants oscillate: divergence must also be reported.
  CoefficientSource osc = growing_tail_source();
  osc.c = [](long j) { return Complex(static_cast<double>(j - 1), 0.0); };
  CfOptions short_leash;
  short_leash.max_depth = 1 << 16;
  const SecularEvaluation o = continued_fraction_down(osc, Complex(0.5, 0.0), 1, short_leash);
  CHECK_FALSE(o.converged);
}

TEST_CASE("vanishing denominator sets the breakdown flag with a finite stand-in") {
  CoefficientSource s;
  s.window = Window{0, 0, false, false};
  s.a = [](long) { return Complex(1.0, 0.0); };
  s.b = [](long) { return Complex(0.0, 0.0); };
  s.c = [](long) { return Complex(0.0, 0.0); };
  const CfOptions opts;
  const SecularEvaluation f = continued_fraction_down(s, Complex(1.0, 0.0), 0, opts);
  CHECK(f.breakdown);
  CHECK(std::isfinite(std::abs(f.value)));
  CHECK(std::abs(f.value) >= 1e290);  // the huge stand-in, not inf/NaN

  const SecularEvaluation g = green_diagonal(s, Complex(1.0, 0.0), 0, opts);
  CHECK(g.breakdown);
}
