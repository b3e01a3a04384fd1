#include "qpmid/roots.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace qpmid {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Collision {
  Complex where;
};

double collision_threshold(const AnalyticFn& fn, Complex z) {
  double s = fn.scale ? fn.scale(z) : 0.0;
  return 1e-13 * std::max(s, 1e-280);
}

Complex checked_eval(const AnalyticFn& fn, Complex z) {
  Complex v = fn.f(z);
  if (std::abs(v) < collision_threshold(fn, z)) throw Collision{z};
  return v;
}

// Accumulated argument change along the segment [za, zb]; subdivides until
// each step turns by less than pi/4, with a midpoint consistency probe.
double segment_phase(const AnalyticFn& fn, Complex za, Complex fa, Complex zb, Complex fb,
                     int depth) {
  if (depth > 64) throw Collision{0.5 * (za + zb)};
  Complex zm = 0.5 * (za + zb);
  Complex fm = checked_eval(fn, zm);
  double p1 = std::arg(fm / fa);
  double p2 = std::arg(fb / fm);
  if (std::abs(p1) <= kPi / 4.0 && std::abs(p2) <= kPi / 4.0) return p1 + p2;
  return segment_phase(fn, za, fa, zm, fm, depth + 1) +
         segment_phase(fn, zm, fm, zb, fb, depth + 1);
}

// Total phase around a closed polyline, divided by 2*pi.
int winding_along(const AnalyticFn& fn, const std::vector<Complex>& pts) {
  std::vector<Complex> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = checked_eval(fn, pts[i]);
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::size_t j = (i + 1) % pts.size();
    total += segment_phase(fn, pts[i], vals[i], pts[j], vals[j], 0);
  }
  double w = total / kTwoPi;
  long rounded = std::lround(w);
  if (std::abs(w - static_cast<double>(rounded)) > 0.25)
    throw Collision{pts.front()};  // phase did not close up; boundary too hot
  return static_cast<int>(rounded);
}

std::vector<Complex> box_corners(const SearchBox& b) {
  return {{b.re_min, b.im_min}, {b.re_max, b.im_min}, {b.re_max, b.im_max}, {b.re_min, b.im_max}};
}

int winding_box_raw(const AnalyticFn& fn, const SearchBox& box) {
  return winding_along(fn, box_corners(box));
}

// Outer-boundary version with the documented deterministic retry: expand all
// sides outward by 1e-6, doubling, at most 3 times.
int winding_box_perturbed(const AnalyticFn& fn, const SearchBox& box) {
  double delta = 0.0;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    try {
      SearchBox b(box.re_min - delta, box.re_max + delta, box.im_min - delta, box.im_max + delta);
      return winding_box_raw(fn, b);
    } catch (const Collision&) {
      delta = delta == 0.0 ? 1e-6 : 2.0 * delta;
    }
  }
  throw BoundaryCollisionError(
      "winding: root kept colliding with the contour after 3 outward perturbations");
}

int winding_circle(const AnalyticFn& fn, Complex center, double radius) {
  const int kSides = 64;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    std::vector<Complex> pts(kSides);
    for (int i = 0; i < kSides; ++i) {
      double t = kTwoPi * i / kSides;
      pts[static_cast<std::size_t>(i)] = center + radius * Complex(std::cos(t), std::sin(t));
    }
    try {
      return winding_along(fn, pts);
    } catch (const Collision&) {
      radius *= 1.17;  // deterministic nudge off the colliding circle
    }
  }
  return -1;  // caller treats as "unknown"
}

struct Cell {
  SearchBox box;
  int winding;
};

// Split one coordinate, retrying the split position if a root sits on the
// new internal edge; children always tile the parent exactly.
void split_coord(double lo, double hi, double& out, int attempt) {
  double base = 0.5 * (lo + hi);
  out = attempt == 0 ? base : base + (hi - lo) * 1e-4 * static_cast<double>(1 << (attempt - 1));
}

std::vector<Cell> quadrisect(const AnalyticFn& fn, const Cell& parent) {
  for (int attempt = 0; attempt < 6; ++attempt) {
    double xs, ys;
    split_coord(parent.box.re_min, parent.box.re_max, xs, attempt);
    split_coord(parent.box.im_min, parent.box.im_max, ys, attempt);
    std::vector<Cell> kids;
    try {
      const SearchBox& b = parent.box;
      for (const SearchBox& sub :
           {SearchBox(b.re_min, xs, b.im_min, ys), SearchBox(xs, b.re_max, b.im_min, ys),
            SearchBox(b.re_min, xs, ys, b.im_max), SearchBox(xs, b.re_max, ys, b.im_max)}) {
        kids.push_back({sub, winding_box_raw(fn, sub)});
      }
    } catch (const Collision&) {
      continue;
    }
    int sum = 0;
    for (const Cell& k : kids) sum += k.winding;
    if (sum == parent.winding) return kids;
    // Conservation failed: a root straddles an internal edge; move it.
  }
  throw BoundaryCollisionError("subdivision could not separate roots from internal edges");
}

RootRecord polish(const AnalyticFn& fn, const Cell& cell, double tol) {
  Complex z(0.5 * (cell.box.re_min + cell.box.re_max), 0.5 * (cell.box.im_min + cell.box.im_max));
  double diam = std::hypot(cell.box.width(), cell.box.height());
  int mult = std::max(cell.winding, 1);

  RootRecord rec;
  rec.multiplicity = cell.winding;
  bool converged = false;
  Complex zc = z;
  for (int it = 0; it < 80; ++it) {
    std::vector<Complex> d = fn.derivs(zc, 1);
    if (std::abs(d[1]) == 0.0) break;
    Complex step = -static_cast<double>(mult) * d[0] / d[1];
    if (std::abs(step) > 2.0 * diam) step *= 2.0 * diam / std::abs(step);
    zc += step;
    if (std::abs(zc - z) > 4.0 * diam) break;  // wandered off; give up
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(zc))) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    // Multiplicity-accelerated steps can limit-cycle very close to the
    // root; accept if the residual already sits at the noise floor.
    converged = std::abs(fn.f(zc)) <= 10.0 * collision_threshold(fn, zc);
  }
  if (converged) {
    // Reject escapes into a neighboring cell; the escaped root belongs to
    // that cell's own count.
    double mx = 0.25 * cell.box.width() + 1e-12, my = 0.25 * cell.box.height() + 1e-12;
    if (zc.real() < cell.box.re_min - mx || zc.real() > cell.box.re_max + mx ||
        zc.imag() < cell.box.im_min - my || zc.imag() > cell.box.im_max + my)
      converged = false;
  }
  if (converged) {
    z = zc;
    // A multiplicity-k root is a simple root of the (k-1)-th derivative;
    // sharpening there restores full accuracy of the location.
    if (mult >= 2 && fn.derivs) {
      Complex zs = z;
      bool ok = true;
      for (int it = 0; it < 60; ++it) {
        std::vector<Complex> d = fn.derivs(zs, mult);
        if (std::abs(d[static_cast<std::size_t>(mult)]) == 0.0) {
          ok = false;
          break;
        }
        Complex step = -d[static_cast<std::size_t>(mult - 1)] / d[static_cast<std::size_t>(mult)];
        zs += step;
        if (std::abs(zs - z) > std::max(100.0 * tol, 1e-3 * (1.0 + std::abs(z)))) {
          ok = false;
          break;
        }
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(zs))) break;
      }
      if (ok) z = zs;
    }
    rec.location = z;
    rec.residual = std::abs(fn.f(z));
    rec.warned = false;
  } else {
    rec.location = z;
    rec.residual = std::abs(fn.f(z));
    rec.warned = true;
  }
  return rec;
}

void collect(const AnalyticFn& fn, const Cell& cell, double tol, std::vector<RootRecord>& out) {
  if (cell.winding == 0) return;
  double diam = std::hypot(cell.box.width(), cell.box.height());
  if (diam < tol && cell.winding > 12)
    throw Error("winding above the multiplicity cap 12 in a terminal cell");
  if (cell.winding <= 1 || diam < tol) {
    RootRecord rec = polish(fn, cell, tol);
    if (rec.warned && diam >= 2.0 * tol) {
      // Shrink the cell around the root before accepting a center guess.
      for (const Cell& kid : quadrisect(fn, cell)) collect(fn, kid, tol, out);
      return;
    }
    out.push_back(rec);
    return;
  }
  for (const Cell& kid : quadrisect(fn, cell)) collect(fn, kid, tol, out);
}

bool record_order(const RootRecord& a, const RootRecord& b) {
  if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
  return a.location.imag() < b.location.imag();
}

}  // namespace

AnalyticFn quasipoly_fn(const Quasipolynomial& q) {
  AnalyticFn fn;
  fn.f = [q](Complex z) { return q.eval(z); };
  fn.derivs = [q](Complex z, int k) { return eval_derivatives(q, z, k); };
  fn.scale = [q](Complex z) { return q.eval_scale(z); };
  return fn;
}

namespace {

struct DeflatedEval {
  Quasipolynomial q;
  double lambda0;
  int k;
  std::vector<Complex> taylor;      // Taylor coefficients of G around lambda0
  std::vector<double> taylor_mag;   // |coefficients|, for the scale
  double radius;                    // switch radius between Taylor and direct form

  static constexpr int kTail = 48;

  DeflatedEval(const Quasipolynomial& q_, double l0, int k_) : q(q_), lambda0(l0), k(k_) {
    std::vector<Complex> d = eval_derivatives(q, Complex(lambda0), k + kTail);
    double fact = 1.0;
    for (int j = 1; j <= k; ++j) fact *= j;
    taylor.resize(kTail + 1);
    taylor_mag.resize(kTail + 1);
    for (int j = 0; j <= kTail; ++j) {
      if (j > 0) fact *= static_cast<double>(k + j);
      taylor[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(k + j)] / fact;
      taylor_mag[static_cast<std::size_t>(j)] = std::abs(taylor[static_cast<std::size_t>(j)]);
    }
    radius = 0.6 / std::max(1.0, q.tau());
  }

  bool near(Complex z) const { return std::abs(z - lambda0) <= radius; }

  Complex eval(Complex z) const {
    Complex h = z - lambda0;
    if (near(z)) {
      Complex acc(0.0);
      for (int j = kTail; j >= 0; --j) acc = acc * h + taylor[static_cast<std::size_t>(j)];
      return acc;
    }
    return q.eval(z) / std::pow(h, k);
  }

  std::vector<Complex> derivs(Complex z, int kmax) const {
    std::vector<Complex> out(static_cast<std::size_t>(kmax) + 1);
    Complex h = z - lambda0;
    if (near(z)) {
      for (int p = 0; p <= kmax; ++p) {
        Complex acc(0.0);
        for (int j = kTail; j >= p; --j) {
          double fall = 1.0;
          for (int i = 0; i < p; ++i) fall *= static_cast<double>(j - i);
          acc = acc * h + fall * taylor[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(p)] = acc;
      }
      return out;
    }
    // Leibniz on q = h^k G, solved downward for the derivatives of G.
    std::vector<Complex> dq = eval_derivatives(q, z, kmax);
    Complex hk = std::pow(h, k);
    for (int p = 0; p <= kmax; ++p) {
      Complex acc = dq[static_cast<std::size_t>(p)];
      double binom = 1.0;
      double fall = 1.0;
      for (int i = 1; i <= std::min(p, k); ++i) {
        binom = binom * (p - i + 1) / i;
        fall *= static_cast<double>(k - i + 1);
        acc -= binom * fall * std::pow(h, k - i) * out[static_cast<std::size_t>(p - i)];
      }
      out[static_cast<std::size_t>(p)] = acc / hk;
    }
    return out;
  }

  double scale(Complex z) const {
    Complex h = z - lambda0;
    if (near(z)) {
      double acc = 0.0, hw = 1.0, ah = std::abs(h);
      for (int j = 0; j <= kTail; ++j) {
        acc += taylor_mag[static_cast<std::size_t>(j)] * hw;
        hw *= ah;
      }
      return acc;
    }
    return q.eval_scale(z) / std::pow(std::abs(h), k);
  }
};

}  // namespace

AnalyticFn deflated_quasipoly_fn(const Quasipolynomial& q, double lambda0, int k) {
  if (k < 0) throw DomainError("deflation order must be >= 0");
  if (k == 0) return quasipoly_fn(q);
  auto shared = std::make_shared<DeflatedEval>(q, lambda0, k);
  AnalyticFn fn;
  fn.f = [shared](Complex z) { return shared->eval(z); };
  fn.derivs = [shared](Complex z, int kmax) { return shared->derivs(z, kmax); };
  fn.scale = [shared](Complex z) { return shared->scale(z); };
  return fn;
}

int winding_count(const AnalyticFn& fn, const SearchBox& box) {
  if (box.degenerate()) throw DomainError("winding_count needs a box of positive measure");
  return winding_box_perturbed(fn, box);
}

int winding_count(const Quasipolynomial& q, const SearchBox& box) {
  return winding_count(quasipoly_fn(q), box);
}

std::vector<RootRecord> find_zeros(const AnalyticFn& fn, const SearchBox& box, double tol) {
  if (box.degenerate()) throw DomainError("find_zeros needs a box of positive measure");
  if (!(tol > 0.0)) throw DomainError("find_zeros needs a positive tolerance");
  Cell top{box, winding_box_perturbed(fn, box)};
  std::vector<RootRecord> raw;
  collect(fn, top, tol, raw);

  // Cells tile the box, so multiplicities (cell windings) already sum to the
  // total; merge polished locations that landed on the same point.
  std::sort(raw.begin(), raw.end(), record_order);
  std::vector<RootRecord> merged;
  for (const RootRecord& r : raw) {
    if (!merged.empty() && std::abs(merged.back().location - r.location) <= std::max(tol, 1e-12)) {
      merged.back().multiplicity += r.multiplicity;
      if (r.residual < merged.back().residual) {
        merged.back().location = r.location;
        merged.back().residual = r.residual;
      }
      merged.back().warned = merged.back().warned || r.warned;
    } else {
      merged.push_back(r);
    }
  }
  // Cross-check multiplicities by winding on a small circle around each
  // polished location; a disagreement flags the record without touching the
  // conserved cell counts.
  for (RootRecord& r : merged) {
    if (r.warned) continue;
    int circle = winding_circle(fn, r.location, 10.0 * tol);
    if (circle >= 0 && circle != r.multiplicity) r.warned = true;
  }
  return merged;
}

SpectrumReport find_roots(const Quasipolynomial& q, const SearchBox& box, double tol) {
  AnalyticFn fn = quasipoly_fn(q);
  SpectrumReport rep{box, {}, 0, std::nullopt, 0.0};
  rep.roots = find_zeros(fn, box, tol);
  rep.total_winding = 0;
  for (const RootRecord& r : rep.roots) rep.total_winding += r.multiplicity;
  for (const RootRecord& r : rep.roots) {
    if (!rep.dominant || r.location.real() > rep.dominant->location.real()) rep.dominant = r;
  }
  if (rep.dominant) {
    double gap = 0.0;
    bool found = false;
    for (const RootRecord& r : rep.roots) {
      if (r.location.real() < rep.dominant->location.real() - 1e-12) {
        double g = rep.dominant->location.real() - r.location.real();
        if (!found || g < gap) gap = g;
        found = true;
      }
    }
    rep.margin = found ? gap : 0.0;
  }
  return rep;
}

DominanceCheck verify_dominance_numeric(const Quasipolynomial& q, double lambda0, double im_cap,
                                        const DominanceOptions& opts) {
  if (im_cap < kPi / q.tau() - 1e-12)
    throw DomainError("verify_dominance_numeric: im_cap must cover the band pi/tau");
  int mult = multiplicity_at(q, lambda0, q.degree());
  AnalyticFn fn = deflated_quasipoly_fn(q, lambda0, mult);

  double right = opts.re_max ? *opts.re_max
                             : envelope_rightmost(companion(q)) + 0.5;
  right = std::max(right, lambda0 + opts.re_offset + 1e-6);
  SearchBox box(lambda0 + opts.re_offset, right, -im_cap, im_cap);

  DominanceCheck check{false, 0.0, 0, box};
  check.winding_right = winding_count(fn, box);
  check.ok = check.winding_right == 0;

  if (opts.compute_margin) {
    double width = std::max(1.0, 2.0 / q.tau());
    SearchBox wide(lambda0 - width, right, -im_cap, im_cap);
    std::vector<RootRecord> recs = find_zeros(fn, wide, opts.margin_tol);
    double margin = width;
    for (const RootRecord& r : recs) margin = std::min(margin, std::abs(r.location - lambda0));
    check.margin = margin;
  }
  return check;
}

}  // namespace qpmid
