#pragma once

// Argument-principle root localization for retarded quasipolynomials:
// adaptive phase tracking along box boundaries, quadrisection down to
// winding <= 1 cells, Newton polishing with multiplicity-aware sharpening.
// Works on any AnalyticFn so other function families (e.g. Kummer-type
// combinations) can reuse the machinery.

#include <optional>
#include <vector>

#include "qpmid/analytic.hpp"
#include "qpmid/quasipoly.hpp"

namespace qpmid {

AnalyticFn quasipoly_fn(const Quasipolynomial& q);

// q with a known root at lambda0 of multiplicity k divided out:
// G(z) = q(z)/(z - lambda0)^k. Near lambda0 the value comes from the Taylor
// tail of the derivative jet, so the removed factor never cancels
// numerically; this is what lets boxes pass within 1e-8 of a multiple root.
AnalyticFn deflated_quasipoly_fn(const Quasipolynomial& q, double lambda0, int k);

struct RootRecord {
  Complex location;
  int multiplicity = 1;
  double residual = 0.0;
  bool warned = false;  // Newton did not converge cleanly
};

struct SpectrumReport {
  SearchBox box;
  std::vector<RootRecord> roots;  // sorted by (Re, Im)
  int total_winding = 0;
  std::optional<RootRecord> dominant;
  double margin = 0.0;  // real-part gap between dominant and next root
};

// Number of roots inside, with multiplicity. Boundary-root collisions are
// retried with deterministic outward perturbations (+1e-6, doubling, 3
// attempts) before giving up.
int winding_count(const AnalyticFn& fn, const SearchBox& box);
int winding_count(const Quasipolynomial& q, const SearchBox& box);

std::vector<RootRecord> find_zeros(const AnalyticFn& fn, const SearchBox& box, double tol);
SpectrumReport find_roots(const Quasipolynomial& q, const SearchBox& box, double tol);

struct DominanceOptions {
  double re_offset = 1e-8;          // left edge sits at lambda0 + re_offset
  std::optional<double> re_max;     // right edge; default from the envelope bound
  bool compute_margin = true;
  double margin_tol = 1e-5;
};

struct DominanceCheck {
  bool ok = false;        // no root found with Re > lambda0 + re_offset
  double margin = 0.0;    // distance from lambda0 to the nearest other root
  int winding_right = 0;  // roots counted right of lambda0
  SearchBox box;
};

// Scans (lambda0 + re_offset, re_max] x [-im_cap, im_cap]; true iff the
// winding there is zero. im_cap must cover the frequency-bound band pi/tau.
DominanceCheck verify_dominance_numeric(const Quasipolynomial& q, double lambda0, double im_cap,
                                        const DominanceOptions& opts = {});

}  // namespace qpmid
