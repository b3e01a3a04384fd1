#pragma once

// Coefficient synthesis forcing a real root of multiplicity n+m, the
// Kummer-combination factorization of the resulting quasipolynomial, and
// the dominance certificate built from kernel positivity plus the
// right-half-plane frequency bound.

#include <optional>
#include <string>

#include "qpmid/quasipoly.hpp"
#include "qpmid/specfun.hpp"

namespace qpmid {

// integral over [0,1] of p(t) e^{-z t}; closed form by parts, with a
// term-wise series fallback for |z| < 1e-6.
Complex integral_poly_exp(const RealPolynomial& p, Complex z);

// t^{m-1} (1-t)^{n-1} (1 - A t): the synthesis kernel.
RealPolynomial design_kernel(int n, int m, double a_param);

// Parameter vector of the factorization: every multiplicity-(n+m) design
// satisfies  q(lambda) = tau^m (lambda-lambda0)^{n+m} F(-tau(lambda-lambda0))
// with F the two-term Kummer combination over these parameters.
CombinationParams factorization_params(int n, int m, double a_param);

// Full record of a multiplicity-(n+m) design.
struct MidDesign {
  int n, m;
  double tau;
  double lambda0;
  double a_param;
  Quasipolynomial quasi;
  CombinationParams combo;
  int achieved_multiplicity;
  bool tampered = false;  // quasi was overridden after synthesis
};

// Assembles the unique (up to the free parameter A) quasipolynomial with a
// root of multiplicity >= n+m at lambda0, from the endpoint derivatives of
// the synthesis kernel. Requires n >= 1, 1 <= m < n, n + m <= 20.
MidDesign force_multiplicity(int n, int m, double tau, double lambda0, double a_param);

// Same record but with the quasipolynomial replaced; used to feed hand-built
// (e.g. root-planted) instances through the certification pipeline. The
// achieved multiplicity is re-measured, not assumed.
MidDesign with_quasi_override(const MidDesign& d, Quasipolynomial quasi);

// Achieved multiplicity of lambda0, by counting numerically vanishing
// derivatives against a coefficient-magnitude scale (tol 1e-9).
int multiplicity_check(const Quasipolynomial& q, double lambda0, int k_max);

// q(lambda) - tau^m (lambda-lambda0)^{n+m} F(-tau(lambda-lambda0), combo).
Complex factorization_residual(const MidDesign& d, Complex lambda);

// Same residual divided by the evaluation magnitude of both sides.
double factorization_residual_relative(const MidDesign& d, Complex lambda);

// True iff the kernel keeps a strictly positive sign on (0,1), i.e. A <= 1.
bool kernel_positivity(int n, int m, double a_param);

struct HilleScan {
  bool nonnegative = false;     // Re[z G(t z)] >= -1e-12 at every sample
  Complex worst_z;              // minimizing sample (lexicographic tie-break)
  double worst_t = 0.0;
  double worst_value = 0.0;
  int skipped = 0;              // samples at singular equation points
  bool degenerate = false;      // zero-measure box: vacuously true
};

// Samples Re[z G(t z)] over a grid of z in a closed-left-half-plane box and
// t in (0,1). A true result is evidence on the sampled region only.
HilleScan hille_condition_scan(const CombinationParams& p, const SearchBox& box, int grid);

enum class Verdict { certified, not_certified_by_method, refuted };

struct Certificate {
  Verdict verdict = Verdict::not_certified_by_method;
  std::optional<double> freq_bound;
  bool kernel_positive = false;
  std::string notes;
};

// Pipeline: normalize at lambda0, bound right-half-plane frequencies,
// check kernel positivity; when the bound is <= pi and the kernel is
// positive, any root with Re >= lambda0 would make a strictly positive
// integral vanish, so the design is certified. The numeric root scan can
// only downgrade the verdict to refuted; the method being silent is a
// first-class outcome distinct from refutation.
Certificate certify_dominance(const MidDesign& d, int max_ord);

const char* verdict_name(Verdict v);

}  // namespace qpmid
