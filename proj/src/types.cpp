#include "cfgreen/types.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace cfgreen {

namespace {
[[noreturn]] void out_of_window(const char* what, long j) {
  throw std::out_of_range(std::string(what) + " queried outside window at index " +
                          std::to_string(j));
}
}  // namespace

Complex CoefficientSource::diag_at(long j) const {
  if (!window.contains(j)) out_of_window("a", j);
  return a(j);
}

Complex CoefficientSource::super_at(long j) const {
  if (!window.contains(j) || (!window.unbounded_above && j >= window.hi))
    out_of_window("b", j);
  return b(j);
}

Complex CoefficientSource::sub_at(long j) const {
  if (!window.contains(j) || (!window.unbounded_below && j <= window.lo))
    out_of_window("c", j);
  return c(j);
}

FiniteTridiagonal truncate(const CoefficientSource& source, long m, long n) {
  if (m < 0 || n < 0) throw std::invalid_argument("truncate: m and n must be nonnegative");
  const Window& w = source.window;
  long lo = w.unbounded_below ? -m : std::max(-m, w.lo);
  long hi = w.unbounded_above ? n : std::min(n, w.hi);
  if (lo > hi) throw std::invalid_argument("truncate: empty intersection with source window");

  FiniteTridiagonal h;
  h.offset = lo;
  const std::size_t dim = static_cast<std::size_t>(hi - lo + 1);
  h.diag.resize(dim);
  h.upper.resize(dim - 1);
  h.lower.resize(dim - 1);
  for (long j = lo; j <= hi; ++j) {
    h.diag[static_cast<std::size_t>(j - lo)] = source.diag_at(j);
    if (j < hi) {
      h.upper[static_cast<std::size_t>(j - lo)] = source.super_at(j);
      h.lower[static_cast<std::size_t>(j - lo)] = source.sub_at(j + 1);
    }
  }
  return h;
}

FiniteTridiagonal reindexed(FiniteTridiagonal h, long new_offset) {
  h.offset = new_offset;
  return h;
}

FiniteTridiagonal transpose(FiniteTridiagonal h) {
  std::swap(h.upper, h.lower);
  return h;
}

CoefficientSource as_source(const FiniteTridiagonal& h) {
  auto snapshot = std::make_shared<const FiniteTridiagonal>(h);
  CoefficientSource s;
  s.window.lo = snapshot->lo();
  s.window.hi = snapshot->hi();
  s.a = [snapshot](long j) { return snapshot->diag[snapshot->row_of(j)]; };
  s.b = [snapshot](long j) { return snapshot->upper[snapshot->row_of(j)]; };
  s.c = [snapshot](long j) { return snapshot->lower[snapshot->row_of(j) - 1]; };
  return s;
}

double max_abs(const FiniteTridiagonal& h) {
  double m = 0.0;
  for (const Complex& v : h.diag) m = std::max(m, std::abs(v));
  for (const Complex& v : h.upper) m = std::max(m, std::abs(v));
  for (const Complex& v : h.lower) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Complex> apply_shifted(const FiniteTridiagonal& h, Complex shift,
                                   const std::vector<Complex>& x) {
  const std::size_t n = h.dim();
  if (x.size() != n) throw std::invalid_argument("apply_shifted: size mismatch");
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex v = (h.diag[i] - shift) * x[i];
    if (i > 0) v += h.lower[i - 1] * x[i - 1];
    if (i + 1 < n) v += h.upper[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

}  // namespace cfgreen
