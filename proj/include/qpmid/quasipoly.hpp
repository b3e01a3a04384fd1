#pragma once

// Quasipolynomial p0(z) + ptau(z) e^{-tau z} of retarded type, with exact
// degree bookkeeping, derivative evaluation, normalization, companion form,
// and a-priori root-location bounds. All types here are immutable after
// construction and safe to share across threads.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qpmid/errors.hpp"
#include "qpmid/polynomial.hpp"

namespace qpmid {

using Complex = std::complex<double>;

class Quasipolynomial {
 public:
  // p0 must be monic of degree n >= 1; ptau of degree < n (the zero
  // polynomial is allowed and gives the delay-free reduction). deg ptau ==
  // deg p0 is the neutral type and is rejected.
  Quasipolynomial(RealPolynomial p0, RealPolynomial ptau, double tau);

  const RealPolynomial& p0() const { return p0_; }
  const RealPolynomial& ptau() const { return ptau_; }
  double tau() const { return tau_; }

  int n() const { return p0_.degree(); }
  // -1 when ptau is identically zero.
  int m() const { return ptau_.degree(); }

  // n + m + 1 for a genuine delay term, n for the delay-free reduction.
  int degree() const { return ptau_.is_zero() ? n() : n() + m() + 1; }

  Complex eval(Complex lambda) const;

  // Magnitude budget of an evaluation at lambda; |eval error| stays within
  // a few ulps of this. Used for root/boundary thresholds.
  double eval_scale(Complex lambda) const;

  double coeff_scale() const { return coeff_scale_; }

 private:
  RealPolynomial p0_;
  RealPolynomial ptau_;
  double tau_;
  double coeff_scale_;
};

// Entry k is the k-th derivative of the quasipolynomial at lambda
// (Leibniz expansion of the delayed product term).
std::vector<Complex> eval_derivatives(const Quasipolynomial& q, Complex lambda, int k_max);

// Largest k such that the derivatives of order < k all vanish numerically
// at lambda0, capped at k_max + 1. The threshold is relative to the
// coefficient scale times max(1, |lambda0|)^n; absolute thresholds fail for
// large lambda0 or tau.
int multiplicity_at(const Quasipolynomial& q, double lambda0, int k_max, double tol = 1e-9);

// Normalized quasipolynomial tau^n q(lambda0 + z/tau) with delay 1; roots
// correspond bijectively via z = tau (lambda - lambda0).
Quasipolynomial normalize(const Quasipolynomial& q, double lambda0);

// Inverse of normalize.
Quasipolynomial denormalize(const Quasipolynomial& q_norm, double tau, double lambda0);

struct CompanionPair {
  Eigen::MatrixXd a0;
  Eigen::MatrixXd atau;
  Eigen::MatrixXd btau;  // identically zero for retarded systems
  double tau = 1.0;
};

// First-order form xi' = A0 xi + Atau xi(t - tau); the characteristic
// determinant det(lambda I - A0 - Atau e^{-lambda tau}) equals the
// quasipolynomial.
CompanionPair companion(const Quasipolynomial& q);

// Matrix 2-norm by power iteration on A^T A (200 iterations, 1e-12
// convergence threshold); n is small here.
double matrix_2norm(const Eigen::MatrixXd& a);

// ||A0||_2 + ||Atau||_2 e^{-tau x}: every characteristic root with
// Re(lambda) = x has |lambda| below this.
double envelope_bound(const CompanionPair& cp, double x);

// Rightmost possible real part: the fixed point of x = envelope_bound(x).
double envelope_rightmost(const CompanionPair& cp);

struct ImagAxisBound {
  bool crossing_possible = false;
  double bound = 0.0;  // any imaginary-axis root i w has |w| <= bound
};

// Bound on |w| for roots on the imaginary axis, from the real polynomial
// |p0(iw)|^2 - |ptau(iw)|^2 in w^2 and a Cauchy root bound. When that
// polynomial is positive for all w the axis is root-free and
// crossing_possible is false.
ImagAxisBound imag_axis_bound(const Quasipolynomial& q);

struct SearchBox {
  double re_min, re_max, im_min, im_max;

  SearchBox(double rmin, double rmax, double imin, double imax);
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  bool degenerate() const { return width() == 0.0 || height() == 0.0; }
};

}  // namespace qpmid
