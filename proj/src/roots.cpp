#include "cfgreen/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "cfgreen/grid.hpp"

namespace cfgreen {

namespace {

constexpr double kPi = 3.14159265358979323846;

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  return v[mid];
}

// Winding number of f along a closed polyline (last->first edge implied).
// nullopt when some argument step exceeds pi/2: sampling too coarse to
// trust.  Throws when f vanishes (or is not finite) at a contour point.
std::optional<long> polyline_winding(const SecularFn& f, const std::vector<Complex>& pts,
                                     double breakdown_eps) {
  std::vector<Complex> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = f(pts[i]);
    const double m = std::abs(vals[i]);
    if (!std::isfinite(m) || m < breakdown_eps)
      throw std::runtime_error("winding: function vanishes or blows up on the contour");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = std::arg(vals[(i + 1) % pts.size()] / vals[i]);
    if (std::abs(d) > 0.5 * kPi) return std::nullopt;
    total += d;
  }
  return std::lround(total / (2.0 * kPi));
}

std::vector<Complex> rectangle_points(const SearchRegion& r, long n) {
  std::vector<Complex> pts;
  pts.reserve(4 * n);
  const double w = r.re_hi - r.re_lo;
  const double h = r.im_hi - r.im_lo;
  for (long i = 0; i < n; ++i) pts.emplace_back(r.re_lo + w * i / n, r.im_lo);
  for (long i = 0; i < n; ++i) pts.emplace_back(r.re_hi, r.im_lo + h * i / n);
  for (long i = 0; i < n; ++i) pts.emplace_back(r.re_hi - w * i / n, r.im_hi);
  for (long i = 0; i < n; ++i) pts.emplace_back(r.re_lo, r.im_hi - h * i / n);
  return pts;
}

std::vector<Complex> circle_points(Complex center, double radius, long n) {
  std::vector<Complex> pts;
  pts.reserve(n);
  for (long i = 0; i < n; ++i) {
    const double ang = 2.0 * kPi * i / n;
    pts.push_back(center + radius * Complex(std::cos(ang), std::sin(ang)));
  }
  return pts;
}

// Doubles the sampling until the count repeats twice in a row.
template <typename MakePoints>
std::optional<long> stable_winding(const SecularFn& f, const MakePoints& make_points, long n0,
                                   long cap, double breakdown_eps) {
  std::optional<long> prev;
  int agreements = 0;
  for (long n = n0; n <= cap; n *= 2) {
    const std::optional<long> w = polyline_winding(f, make_points(n), breakdown_eps);
    if (w && prev && *w == *prev) {
      if (++agreements >= 2) return w;
    } else {
      agreements = 0;
    }
    prev = w;
  }
  return std::nullopt;
}

}  // namespace

SearchRegion SearchRegion::inflated(double factor) const {
  const double cx = 0.5 * (re_lo + re_hi);
  const double cy = 0.5 * (im_lo + im_hi);
  const double hx = 0.5 * (re_hi - re_lo) * factor;
  const double hy = 0.5 * (im_hi - im_lo) * factor;
  return {cx - hx, cx + hx, cy - hy, cy + hy};
}

SearchRegion gershgorin_region(const FiniteTridiagonal& h, double pad_fraction) {
  const std::size_t n = h.dim();
  double re_lo = std::numeric_limits<double>::infinity(), re_hi = -re_lo;
  double im_lo = re_lo, im_hi = -re_lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(h.lower[i - 1]);
    if (i + 1 < n) radius += std::abs(h.upper[i]);
    re_lo = std::min(re_lo, h.diag[i].real() - radius);
    re_hi = std::max(re_hi, h.diag[i].real() + radius);
    im_lo = std::min(im_lo, h.diag[i].imag() - radius);
    im_hi = std::max(im_hi, h.diag[i].imag() + radius);
  }
  double pad_re = pad_fraction * (re_hi - re_lo);
  double pad_im = pad_fraction * (im_hi - im_lo);
  const double floor = 1e-3 * (1.0 + max_abs(h));
  if (pad_re <= 0.0) pad_re = floor;
  if (pad_im <= 0.0) pad_im = floor;
  return {re_lo - pad_re, re_hi + pad_re, im_lo - pad_im, im_hi + pad_im};
}

NewtonResult newton_refine(const SecularFn& f, Complex z0, double tol, int max_iter) {
  NewtonResult r;
  r.z = z0;
  for (int it = 1; it <= max_iter; ++it) {
    r.iterations = it;
    const double step = std::max(1e-7, 1e-7 * std::abs(r.z));
    const Complex fv = f(r.z);
    if (!std::isfinite(std::abs(fv))) break;
    if (std::abs(fv) == 0.0) {
      r.converged = true;
      break;
    }
    const Complex fp = (f(r.z + step) - f(r.z - step)) / (2.0 * step);
    if (!std::isfinite(std::abs(fp))) break;
    if (std::abs(fp) == 0.0) {
      // Stationary point of f (e.g. a seed exactly midway between two roots
      // of a symmetric spectrum).  A deterministic diagonal nudge breaks the
      // symmetry and the next iteration proceeds normally.
      r.z += Complex(step, step);
      continue;
    }
    const Complex dz = -fv / fp;
    if (!std::isfinite(std::abs(dz))) break;
    r.z += dz;
    if (std::abs(dz) <= tol * (1.0 + std::abs(r.z))) {
      r.converged = true;
      break;
    }
  }
  r.residual = std::abs(f(r.z));
  if (!std::isfinite(r.residual)) {
    r.residual = std::numeric_limits<double>::infinity();
    r.converged = false;
  }
  return r;
}

std::vector<Complex> grid_seed(const SecularFn& f, const SearchRegion& r, long nx, long ny) {
  const GridSpec g{r, nx, ny};
  const std::vector<Complex> vals = eval_grid(f, g);
  std::vector<double> mag(vals.size());
  std::vector<double> finite;
  finite.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    mag[i] = std::abs(vals[i]);
    if (std::isfinite(mag[i])) finite.push_back(mag[i]);
  }
  if (finite.empty()) return {};
  const double median = median_of(std::move(finite));

  std::vector<Complex> seeds;
  for (long iy = 0; iy < ny; ++iy)
    for (long ix = 0; ix < nx; ++ix) {
      const double m = mag[iy * nx + ix];
      if (!std::isfinite(m) || m >= median) continue;
      bool is_min = true;
      for (long dy = -1; dy <= 1 && is_min; ++dy)
        for (long dx = -1; dx <= 1 && is_min; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const long jx = ix + dx, jy = iy + dy;
          if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
          if (mag[jy * nx + jx] < m) is_min = false;
        }
      if (is_min) seeds.push_back(g.point(ix, iy));
    }
  return seeds;
}

long winding_count(const SecularFn& f, const SearchRegion& r, long min_edge_samples,
                   double breakdown_eps) {
  const auto make = [&](long n) { return rectangle_points(r, n); };
  const std::optional<long> w =
      stable_winding(f, make, std::max<long>(4, min_edge_samples), 1L << 16, breakdown_eps);
  if (!w) throw std::runtime_error("winding_count: edge sampling did not stabilize");
  return *w;
}

namespace {

std::vector<double> real_roots_impl(const std::function<double(double)>& g, double lo, double hi,
                                    const RealScanOptions& opts, int depth) {
  if (!(hi > lo)) throw std::invalid_argument("real_roots: empty interval");
  const long n = std::max<long>(3, opts.samples);
  const std::vector<double> ys = sample_real(g, lo, hi, n);
  const auto x_at = [&](long i) { return real_sample_point(lo, hi, n, i); };
  const auto abs_g = [&](double x) {
    const double v = g(x);
    return std::isfinite(v) ? std::abs(v) : std::numeric_limits<double>::infinity();
  };

  std::vector<double> finite;
  finite.reserve(ys.size());
  for (double y : ys)
    if (std::isfinite(y)) finite.push_back(std::abs(y));
  if (finite.empty()) return {};
  const double scale = std::max(median_of(std::move(finite)), 1e-300);
  const double accept = opts.accept_rel * scale;

  // A root is accepted either on the absolute scale (|g| below accept_rel of
  // the scan median) or relative to its local envelope: at an even root the
  // refined minimum sits on the rounding floor, many orders below the
  // bracketing samples, whereas a smooth non-root dip stays comparable to
  // its shoulders.  The relative gate matters when the envelope varies over
  // many orders of magnitude across the scan (log-scaled determinants).
  constexpr double kDepthRel = 1e-5;
  const auto accepted = [&](double mag, double shoulder) {
    return mag <= accept || mag <= kDepthRel * shoulder;
  };

  std::vector<double> roots;
  if (ys.size() >= 2 && std::isfinite(ys.front()) &&
      accepted(std::abs(ys.front()), std::isfinite(ys[1]) ? std::abs(ys[1]) : 0.0))
    roots.push_back(lo);
  if (ys.size() >= 2 && std::isfinite(ys.back()) &&
      accepted(std::abs(ys.back()), std::isfinite(ys[n - 2]) ? std::abs(ys[n - 2]) : 0.0))
    roots.push_back(hi);

  for (long i = 0; i + 1 < n; ++i) {
    const double ya = ys[i], yb = ys[i + 1];
    if (!std::isfinite(ya) || !std::isfinite(yb)) continue;
    if (ya == 0.0) {
      roots.push_back(x_at(i));
      continue;
    }
    if (!(ya * yb < 0.0)) continue;
    double a = x_at(i), b = x_at(i + 1), fa = ya;
    bool ok = true;
    while (b - a > opts.bisect_tol) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;  // hit the floating-point resolution of the bracket
      const double fm = g(m);
      if (!std::isfinite(fm)) {
        ok = false;
        break;
      }
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if ((fa < 0.0) != (fm < 0.0)) {
        b = m;
      } else {
        a = m;
        fa = fm;
      }
    }
    if (!ok) continue;
    const double x = 0.5 * (a + b);
    // Pole rejection: across a genuine root |g| shrinks toward the
    // crossing; across a pole it explodes there.
    const double gx = abs_g(x);
    if (gx < std::min(std::abs(ya), std::abs(yb))) roots.push_back(x);
  }

  // Even-multiplicity roots touch zero without a sign change: polish
  // interior minima of |g| and accept the tiny ones.
  constexpr double kInvPhi = 0.6180339887498949;
  for (long i = 1; i + 1 < n; ++i) {
    const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
    if (!std::isfinite(y0) || !std::isfinite(y1) || !std::isfinite(y2)) continue;
    if (y0 * y1 < 0.0 || y1 * y2 < 0.0) continue;  // the bisection pass owns these
    const double m0 = std::abs(y0), m1 = std::abs(y1), m2 = std::abs(y2);
    if (!(m1 <= m0 && m1 <= m2)) continue;
    if (depth == 0 && m1 < 0.5 * std::min(m0, m2)) {
      // A pronounced dip can hide a close pair of simple roots whose two sign
      // changes fall inside one grid cell (the cell endpoints then carry equal
      // signs, so the bisection pass never sees them).  A fine sub-scan of the
      // bracket resolves the pair into two ordinary crossings; if it accepts
      // nothing, fall through and judge the dip locally as usual.
      RealScanOptions sub = opts;
      sub.samples = 129;
      const std::vector<double> split =
          real_roots_impl(g, x_at(i - 1), x_at(i + 1), sub, depth + 1);
      if (!split.empty()) {
        roots.insert(roots.end(), split.begin(), split.end());
        continue;
      }
    }
    double a = x_at(i - 1), b = x_at(i + 1);
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = abs_g(c), fd = abs_g(d);
    for (int iter = 0; iter < 200 && b - a > opts.bisect_tol; ++iter) {
      if (!(a < c && c < d && d < b)) break;
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = abs_g(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = abs_g(d);
      }
    }
    double x = 0.5 * (a + b);
    const double shoulder = std::min(m0, m2);
    if (!accepted(abs_g(x), shoulder)) continue;
    // The magnitude localizes a smooth minimum only to ~sqrt(machine eps):
    // below that, |g| sits on a flat rounding floor.  A central difference
    // still changes sign exactly at the minimum (for any even multiplicity),
    // so one sign-change bisection on it recovers the remaining digits.  The
    // noise band of that crossing scales as (rounding floor)/(curvature * h),
    // so the step is taken as large as the bracket allows, with one Richardson
    // step cancelling the O(h^2) bias a wide difference would introduce.
    // The difference window must stay clear of neighboring roots.  At the top
    // level the bracket is the isolation scale; inside a sub-scan the whole
    // (sub-)interval covers a single parent dip, so it bounds the window
    // instead of the much narrower local bracket.
    const double iso = depth == 0 ? (x_at(i + 1) - x_at(i - 1)) / 16.0 : (hi - lo) / 8.0;
    const double h = std::min(1e-4 * std::max(1.0, std::abs(x)), iso);
    double da = x - 4.0 * h, db = x + 4.0 * h;
    const auto slope = [&](double t) {
      return 8.0 * (g(t + 0.5 * h) - g(t - 0.5 * h)) - (g(t + h) - g(t - h));
    };
    double sa = slope(da), sb = slope(db);
    if (std::isfinite(sa) && std::isfinite(sb) && sa * sb < 0.0) {
      while (db - da > opts.bisect_tol) {
        const double m = 0.5 * (da + db);
        if (m <= da || m >= db) break;
        const double sm = slope(m);
        if (!std::isfinite(sm)) break;
        if (sm == 0.0) {
          da = db = m;
          break;
        }
        if ((sa < 0.0) != (sm < 0.0)) {
          db = m;
        } else {
          da = m;
          sa = sm;
        }
      }
      const double polished = 0.5 * (da + db);
      if (accepted(abs_g(polished), shoulder)) x = polished;
    }
    // Pair check: an unresolved pair of simple roots polishes to the point
    // between them where g peaks with the sign opposite to both shoulders
    // (an even-multiplicity root keeps the shoulders' sign).  When that
    // signature shows, recover each member by ordinary bisection.
    const double gmid = g(x);
    if (std::isfinite(gmid) && gmid != 0.0 && y0 * gmid < 0.0 && y2 * gmid < 0.0) {
      const auto cross = [&](double xa, double fa, double xb) {
        double fa_cur = fa;
        while (xb - xa > opts.bisect_tol) {
          const double m = 0.5 * (xa + xb);
          if (m <= xa || m >= xb) break;
          const double fm = g(m);
          if (!std::isfinite(fm)) return;
          if (fm == 0.0) {
            roots.push_back(m);
            return;
          }
          if ((fa_cur < 0.0) != (fm < 0.0)) {
            xb = m;
          } else {
            xa = m;
            fa_cur = fm;
          }
        }
        roots.push_back(0.5 * (xa + xb));
      };
      cross(x_at(i - 1), y0, x);
      cross(x, gmid, x_at(i + 1));
      continue;
    }
    roots.push_back(x);
  }

  std::sort(roots.begin(), roots.end());
  // Merge radius is interval-relative: the same root can surface through two
  // detectors (endpoint rule plus a rounding-noise sign crossing beside it,
  // or the sub-scan plus the local handler) with offsets well above the
  // bisection tolerance but far below any resolvable root spacing.
  const double dedup = std::max(8.0 * opts.bisect_tol, 1e-8 * (hi - lo));
  std::vector<double> keep;
  for (double x : roots)
    if (keep.empty() || x - keep.back() > dedup) keep.push_back(x);
  return keep;
}

}  // namespace

std::vector<double> real_roots(const std::function<double(double)>& g, double lo, double hi,
                               const RealScanOptions& opts) {
  return real_roots_impl(g, lo, hi, opts, 0);
}

SpectrumResult locate_roots(const SecularFn& f, const SearchRegion& r, const RootOptions& opts) {
  SpectrumResult out;
  out.region = r;
  const double diam = std::max(r.diameter(), 1e-300);
  const double dedup_abs = std::max(opts.dedup_rel * diam, 1e-300);

  std::vector<RootRecord> recs;
  const auto absorb = [&](const std::vector<NewtonResult>& refined) {
    for (const NewtonResult& nr : refined) {
      if (!nr.converged) continue;
      if (!r.contains(nr.z, 1e-6 * diam)) continue;
      recs.push_back({nr.z, nr.residual, nr.iterations, 1});
    }
  };
  const auto dedup = [&]() {
    std::sort(recs.begin(), recs.end(), [](const RootRecord& x, const RootRecord& y) {
      if (x.z.real() != y.z.real()) return x.z.real() < y.z.real();
      return x.z.imag() < y.z.imag();
    });
    std::vector<RootRecord> keep;
    for (const RootRecord& rec : recs) {
      bool merged = false;
      for (RootRecord& k : keep) {
        if (std::abs(k.z - rec.z) <= dedup_abs) {
          if (rec.residual < k.residual) k = rec;
          merged = true;
          break;
        }
      }
      if (!merged) keep.push_back(rec);
    }
    recs = std::move(keep);
  };

  const std::vector<Complex> seeds = grid_seed(f, r, opts.grid_nx, opts.grid_ny);
  absorb(refine_all(f, seeds, opts.newton_tol, opts.newton_max_iter));
  dedup();

  const SecularFn& wf = opts.winding_fn ? opts.winding_fn : f;
  if (opts.do_winding) {
    try {
      out.count_by_winding = winding_count(wf, r, 64, 1e-14);
    } catch (const std::exception&) {
      out.count_by_winding = -1;
    }
  }

  // The contour count says we are short: clustered roots landed in one grid
  // cell, or every seed's iteration stalled (a seed can sit exactly on a
  // stationary point midway between roots of a symmetric spectrum).  Re-seed
  // on shrinking rings around what was found -- or around the raw seeds when
  // nothing was.
  const double cell = std::hypot((r.re_hi - r.re_lo) / std::max<long>(1, opts.grid_nx - 1),
                                 (r.im_hi - r.im_lo) / std::max<long>(1, opts.grid_ny - 1));
  double ring_radius = 0.5 * cell;
  for (int round = 0;
       round < 4 && out.count_by_winding > static_cast<long>(recs.size()); ++round) {
    std::vector<Complex> centers;
    for (const RootRecord& rec : recs) centers.push_back(rec.z);
    if (centers.empty()) centers = seeds;
    if (centers.empty()) break;
    std::vector<Complex> ring;
    for (const Complex c : centers)
      for (int j = 0; j < 12; ++j) {
        const double ang = 2.0 * kPi * j / 12.0;
        ring.push_back(c + ring_radius * Complex(std::cos(ang), std::sin(ang)));
      }
    absorb(refine_all(f, ring, opts.newton_tol, opts.newton_max_iter));
    dedup();
    ring_radius *= 0.25;
  }

  // Ring reseeding handles clusters; an isolated root whose whole grid basin
  // drains into a neighbor needs the captor removed instead.  Newton on
  // f(z)/prod(z - r_j) flattens the basins of the roots already found and
  // redirects the same seeds toward the absentees.  Candidates are then
  // re-polished on f itself so stored residuals refer to the original
  // function (a deflated root is a root of f: the divisor is finite and
  // nonzero away from the r_j).
  for (int round = 0; round < 2 && out.count_by_winding > static_cast<long>(recs.size()) &&
                      !recs.empty() && !seeds.empty();
       ++round) {
    std::vector<Complex> held;
    held.reserve(recs.size());
    for (const RootRecord& rec : recs) held.push_back(rec.z);
    const SecularFn deflated = [&f, held](Complex z) {
      Complex v = f(z);
      for (const Complex& r0 : held) {
        const Complex d = z - r0;
        const double m = std::abs(d);
        v = (m > 1e-300) ? v / d : v * 1e300;
      }
      return v;
    };
    std::vector<Complex> candidates;
    for (const NewtonResult& nr :
         refine_all(deflated, seeds, opts.newton_tol, opts.newton_max_iter))
      if (nr.converged) candidates.push_back(nr.z);
    if (candidates.empty()) break;
    absorb(refine_all(f, candidates, opts.newton_tol, opts.newton_max_iter));
    dedup();
  }

  for (std::size_t i = 0; i < recs.size(); ++i)
    for (std::size_t j = i + 1; j < recs.size(); ++j)
      out.min_pair_distance = std::min(out.min_pair_distance, std::abs(recs[i].z - recs[j].z));
  out.cluster_warning = out.min_pair_distance < opts.cluster_rel * diam;

  if (opts.multiplicity_probe) {
    for (RootRecord& rec : recs) {
      double radius = std::max(2.0 * dedup_abs, 1e-9 * (1.0 + std::abs(rec.z)));
      if (std::isfinite(out.min_pair_distance)) radius = std::min(radius, 0.2 * out.min_pair_distance);
      if (radius < 1e-13 * (1.0 + std::abs(rec.z))) continue;  // too tight to resolve
      const auto make = [&](long m) { return circle_points(rec.z, radius, m); };
      try {
        const std::optional<long> w = stable_winding(wf, make, 32, 4096, 1e-14);
        if (w && *w >= 1) rec.multiplicity_hint = static_cast<int>(*w);
      } catch (const std::exception&) {
        // zero on the probe circle or unreadable landscape: keep the default
      }
    }
  }

  out.roots = std::move(recs);
  return out;
}

RootMatch match_roots(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  RootMatch m;
  const std::size_t count = std::min(a.size(), b.size());
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  double worst = 0.0;
  for (std::size_t round = 0; round < count; ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (used_a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (used_b[j]) continue;
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    m.pairs.emplace_back(bi, bj);
    worst = std::max(worst, best);
  }
  m.complete = a.size() == b.size();
  m.max_distance = m.complete ? worst : std::numeric_limits<double>::infinity();
  return m;
}

}  // namespace cfgreen
