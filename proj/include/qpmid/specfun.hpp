#pragma once

// Kummer confluent hypergeometric functions, two-term Kummer combinations
// and their second-order equation data, Whittaker-type rescalings, the
// root-region classifier for real parameters, and the Green-Hille integral
// identity residual. Pure functions over immutable inputs.

#include <complex>
#include <utility>
#include <vector>

#include "qpmid/errors.hpp"

namespace qpmid {

using Complex = std::complex<double>;

// Lanczos approximation, g = 7 with 9 coefficients; ~1e-13 relative.
Complex gamma(Complex z);

// Ascending factorial (alpha)_k.
Complex pochhammer(Complex alpha, int k);

struct KummerParams {
  Complex a, b;
  KummerParams(Complex a_, Complex b_);
};

// Series evaluation of Phi(a, b, z). Summation runs in double-double
// arithmetic; for Re(z) < -1 the reflected form e^z Phi(b-a, b, -z) is used
// to avoid the alternating-series cancellation.
Complex kummer_phi(const KummerParams& p, Complex z);

// d^order/dz^order Phi(a, b, z) via the parameter-shift ladder.
Complex kummer_phi_derivative(const KummerParams& p, Complex z, int order);

// Euler integral form, valid for Re(b) > Re(a) > 0; 64-point Gauss-Legendre
// checked against 128-point.
Complex kummer_phi_integral(const KummerParams& p, Complex z);

// Residuals of the two three-term recurrences linking (a,b), (a+1,b),
// (a,b+1), (a+1,b+1); every value evaluated by an independent series run.
std::pair<Complex, Complex> contiguous_residuals(const KummerParams& p, Complex z);

struct CombinationParams {
  Complex a, b;
  double alpha, beta;
  CombinationParams(Complex a_, Complex b_, double alpha_, double beta_);
};

// F(z) = alpha Phi(a,b,z) + beta Phi(a,b+1,z).
Complex combo_F(const CombinationParams& p, Complex z);

struct ComboJet {
  Complex f, df, d2f;
};

// F and its first two derivatives, each from its own series.
ComboJet combo_jet(const CombinationParams& p, Complex z);

// Which first-order-eliminated form of the equation coefficient R to use.
// `corrected` is the project-wide choice: it is the unique form consistent
// with the single-Kummer reduction (beta = 0 must reproduce the Kummer
// equation coefficient -a/z) and is validated by the series residual tests.
// `printed` (-N/D, no 1/z) is kept only so tests can show it fails.
enum class RForm { printed, corrected };

struct OdeData {
  Complex q_val;  // first-order coefficient Q(z)
  Complex r_val;  // zero-order coefficient R(z)
  Complex n_val;  // numerator N(z)
  Complex d_val;  // denominator D(z), affine in z
  Complex g_val;  // G = R - Q^2/4 - Q'/2
};

// Coefficient data of F'' + Q F' + R F = 0 at z. Throws SingularPointError
// at z = 0 and at the zero of D.
OdeData ode_data(const CombinationParams& p, Complex z, RForm form = RForm::corrected);

// W(z) = e^{Q_prim(z)} F(z) with Q_prim = (1/2)(-z + (b+1) log z - log D(z)),
// principal logarithms; satisfies W'' + G W = 0 and vanishes exactly where
// F does (plus the z = 0 branch point).
Complex whittaker_W(const CombinationParams& p, Complex z);

// d/dz of whittaker_W, via W' = e^{Q_prim} (Q/2 F + F').
Complex whittaker_W_derivative(const CombinationParams& p, Complex z);

// Classical Whittaker function e^{-z/2} z^{1/2+l} Phi(1/2+l-k, 1+2l, z).
Complex whittaker_M(Complex k, Complex l, Complex z);

enum class RootRegion { axis, right_half, left_half };

struct RootRegionReport {
  RootRegion region;
  // For b != 2a, all nontrivial roots satisfy
  //   hyper_im2 * Im(z)^2 - hyper_re2 * Re(z)^2 > 0.
  double hyper_im2 = 0.0;
  double hyper_re2 = 0.0;
};

// Zero-region classifier for Phi(a, b, .) with real a, b and b >= 2:
// b = 2a -> purely imaginary roots; b > 2a -> Re > 0; b < 2a -> Re < 0.
RootRegionReport kummer_root_region(double a, double b);

// Numerical value of the three-term integral identity for W along the
// straight segment [0, z_end]; vanishes up to quadrature error. `samples`
// controls the composite panel count (>= 16).
Complex green_hille_residual(const CombinationParams& p, Complex z_end, int samples);

// Nodes/weights on [0, 1]; cached. Exposed for reuse by other modules.
struct QuadNode {
  double x, w;
};
const std::vector<QuadNode>& gauss_legendre_01(int n);

}  // namespace qpmid
