#include "cfgreen/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfgreen {

FiniteTridiagonal bose_hubbard(long n_bosons, double gamma, double interaction) {
  if (n_bosons < 1) throw std::invalid_argument("bose_hubbard: need n_bosons >= 1");
  const long dim = n_bosons + 1;
  FiniteTridiagonal h;
  h.offset = -((n_bosons + 1) / 2);
  h.diag.resize(dim);
  h.upper.resize(dim - 1);
  h.lower.resize(dim - 1);
  for (long k = 0; k < dim; ++k) {
    const double level = static_cast<double>(n_bosons - 2 * k);
    h.diag[k] = Complex(0.5 * interaction * level * level, -gamma * level);
  }
  for (long k = 0; k + 1 < dim; ++k) {
    const double w = std::sqrt(static_cast<double>((k + 1) * (n_bosons - k)));
    h.upper[k] = w;
    h.lower[k] = w;
  }
  return h;
}

FiniteTridiagonal non_bh_k5(double gamma) {
  FiniteTridiagonal h;
  h.offset = -2;
  h.diag = {Complex(0.0, -4.0 * gamma), Complex(0.0, -2.0 * gamma), Complex(0.0, 0.0),
            Complex(0.0, 2.0 * gamma), Complex(0.0, 4.0 * gamma)};
  const Complex mid(0.0, std::sqrt(54.0));
  h.upper = {Complex(8.0, 0.0), mid, mid, Complex(8.0, 0.0)};
  h.lower = h.upper;
  return h;
}

Complex PotentialSpec::operator()(double x) const {
  switch (kind) {
    case PotentialKind::DoubleWell: {
      const double v = x * x * (x - 1.0) * (x - 1.0) - x + 0.5;
      return Complex(v, 0.0);
    }
    case PotentialKind::ComplexQuartic: {
      if (!(eta > 0.0)) throw std::invalid_argument("PotentialSpec: eta must be > 0");
      const Complex y(x, -eta);
      const Complex y2 = y * y;
      return -0.25 * y2 * y2 + 0.25 * y2;
    }
    case PotentialKind::HarmonicTest:
      return Complex(x * x, 0.0);
    case PotentialKind::Custom: {
      if (table.size() < 2) throw std::invalid_argument("PotentialSpec: custom table needs >= 2 points");
      if (x <= table.front().first) return table.front().second;
      if (x >= table.back().first) return table.back().second;
      auto it = std::upper_bound(table.begin(), table.end(), x,
                                 [](double v, const std::pair<double, Complex>& p) { return v < p.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double t = (x - lo.first) / (hi.first - lo.first);
      return lo.second + t * (hi.second - lo.second);
    }
  }
  throw std::logic_error("PotentialSpec: unknown kind");
}

DiscretizedOperator discrete_schrodinger(const PotentialSpec& v, double h, long m, long n) {
  if (!(h > 0.0)) throw std::invalid_argument("discrete_schrodinger: need h > 0");
  if (m < 0 || n < 0 || m + n < 1) throw std::invalid_argument("discrete_schrodinger: bad window");
  const long dim = m + n + 1;
  const double inv_h2 = 1.0 / (h * h);
  DiscretizedOperator out;
  out.shift = 2.0 * inv_h2;
  out.matrix.offset = -m;
  out.matrix.diag.resize(dim);
  out.matrix.upper.assign(dim - 1, Complex(-inv_h2, 0.0));
  out.matrix.lower.assign(dim - 1, Complex(-inv_h2, 0.0));
  for (long k = 0; k < dim; ++k) out.matrix.diag[k] = v(static_cast<double>(k - m) * h);
  return out;
}

CoefficientSource growing_tail_source() {
  CoefficientSource s;
  s.window.lo = 1;
  s.window.unbounded_below = false;
  s.window.unbounded_above = true;
  s.grows_down = false;
  s.grows_up = true;
  s.a = [](long j) { return Complex(static_cast<double>(j), 0.0); };
  s.b = [](long j) { return Complex(4.0 * static_cast<double>(j) * static_cast<double>(j), 0.0); };
  // The coupling sign matters: with c_{n+1} = +n the partial numerators
  // b_n c_{n+1} ~ 4n^3 dominate the ~n^2 denominator products and the
  // fraction diverges by oscillation (the tail fixed-point equation
  // A^2 = -1/4 has no real solution).  With c_{n+1} = -n every term of the
  // tail is positive for real z below the spectrum, the approximants are
  // monotone and bounded, and the fraction converges -- same growth rate,
  // opposite sign.
  s.c = [](long j) { return Complex(-static_cast<double>(j - 1), 0.0); };
  return s;
}

}  // namespace cfgreen
