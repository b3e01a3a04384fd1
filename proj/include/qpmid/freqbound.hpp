#pragma once

// Frequency bound for right-half-plane roots of a normalized (delay 1)
// quasipolynomial: for a root z = x + i w with x >= 0,
//   |ptau(x+iw)|^2 - |p0(x+iw)|^2 T(x) >= 0,
// where T is a Taylor truncation of e^{2x}. The polynomial above depends on
// w only through W = w^2; bounding its nonnegative real roots in W over
// x >= 0 bounds the imaginary parts. The expansion is templated on the
// scalar so exact rational coefficients are available next to the double
// pipeline.

#include <optional>
#include <utility>
#include <vector>

#include "qpmid/polynomial.hpp"
#include "qpmid/quasipoly.hpp"
#include "qpmid/rational.hpp"

namespace qpmid {

// Dense bivariate polynomial, coefficient grid over (x-power, W-power).
template <class Scalar>
class Bivariate {
 public:
  Bivariate() = default;
  Bivariate(int nx, int nw)
      : nx_(nx), nw_(nw), c_(static_cast<std::size_t>(nx) * nw, Scalar(0)) {}

  int x_size() const { return nx_; }
  int w_size() const { return nw_; }

  Scalar coeff(int i, int j) const {
    return i < nx_ && j < nw_ ? c_[static_cast<std::size_t>(i) * nw_ + j] : Scalar(0);
  }
  Scalar& at(int i, int j) { return c_[static_cast<std::size_t>(i) * nw_ + j]; }

  template <class X>
  X eval(const X& x, const X& w) const {
    X acc(0);
    for (int i = nx_ - 1; i >= 0; --i) {
      X row(0);
      for (int j = nw_ - 1; j >= 0; --j) row = row * w + X(coeff(i, j));
      acc = acc * x + row;
    }
    return acc;
  }

  // Coefficients in the second variable at a fixed numeric first variable.
  std::vector<double> w_coeffs_at(double x) const {
    std::vector<double> out(static_cast<std::size_t>(nw_), 0.0);
    for (int j = 0; j < nw_; ++j) {
      double acc = 0.0;
      for (int i = nx_ - 1; i >= 0; --i) acc = acc * x + to_double(coeff(i, j));
      out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
  }

  Bivariate trimmed() const {
    int mx = 0, mw = 0;
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < nw_; ++j)
        if (!(coeff(i, j) == Scalar(0))) {
          mx = std::max(mx, i + 1);
          mw = std::max(mw, j + 1);
        }
    Bivariate t(mx == 0 ? 1 : mx, mw == 0 ? 1 : mw);
    for (int i = 0; i < t.nx_; ++i)
      for (int j = 0; j < t.nw_; ++j) t.at(i, j) = coeff(i, j);
    return t;
  }

  friend Bivariate operator+(const Bivariate& a, const Bivariate& b) {
    Bivariate r(std::max(a.nx_, b.nx_), std::max(a.nw_, b.nw_));
    for (int i = 0; i < r.nx_; ++i)
      for (int j = 0; j < r.nw_; ++j) r.at(i, j) = a.coeff(i, j) + b.coeff(i, j);
    return r;
  }
  friend Bivariate operator-(const Bivariate& a, const Bivariate& b) {
    Bivariate r(std::max(a.nx_, b.nx_), std::max(a.nw_, b.nw_));
    for (int i = 0; i < r.nx_; ++i)
      for (int j = 0; j < r.nw_; ++j) r.at(i, j) = a.coeff(i, j) - b.coeff(i, j);
    return r;
  }
  friend Bivariate operator*(const Bivariate& a, const Bivariate& b) {
    Bivariate r(a.nx_ + b.nx_ - 1, a.nw_ + b.nw_ - 1);
    for (int i = 0; i < a.nx_; ++i)
      for (int j = 0; j < a.nw_; ++j) {
        if (a.coeff(i, j) == Scalar(0)) continue;
        for (int k = 0; k < b.nx_; ++k)
          for (int l = 0; l < b.nw_; ++l) r.at(i + k, j + l) += a.coeff(i, j) * b.coeff(k, l);
      }
    return r;
  }

  friend bool operator==(const Bivariate& a, const Bivariate& b) {
    int nx = std::max(a.nx_, b.nx_), nw = std::max(a.nw_, b.nw_);
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < nw; ++j)
        if (!(a.coeff(i, j) == b.coeff(i, j))) return false;
    return true;
  }

 private:
  static double to_double(double v) { return v; }
  static double to_double(const Rational& v) { return v.to_double(); }

  int nx_ = 1;
  int nw_ = 1;
  std::vector<Scalar> c_{Scalar(0)};
};

using BivariatePoly = Bivariate<double>;
using BivariateExact = Bivariate<Rational>;

// Exact expansion of |ptau(x+iw)|^2 - |p0(x+iw)|^2 T_ord(x) with w^2 -> W,
// in whichever scalar the inputs carry. T_ord(x) = sum_{k<=ord} (2x)^k/k!.
BivariateExact build_h_exact(const Polynomial<Rational>& p0, const Polynomial<Rational>& ptau,
                             int ord);

// Same expansion on a normalized (delay 1) quasipolynomial in doubles.
BivariatePoly build_H(const Quasipolynomial& q_norm, int ord);

struct SupScan {
  std::optional<double> sup;    // sup over sampled x of the largest real root W >= 0
  std::optional<double> arg_x;  // x attaining it
  std::vector<std::pair<double, double>> curve;  // (x, max W) where roots exist
};

// Adaptive scan over x in [0, x_max]: 512 initial samples, local maxima
// refined to 1e-4 x-resolution; per sample the real roots in W >= 0 come
// from derivative-chain bracketing and bisection.
SupScan sup_frequency(const BivariatePoly& h, double x_max);

struct FreqBoundReport {
  int order_used = 0;
  std::optional<double> omega_bound;  // none when no sample admits a root
  bool dominance_flag = false;
  std::vector<std::pair<double, double>> sup_curve;
  std::optional<double> sup_value;
  double x_max = 0.0;  // scan truncation actually used (recorded in reports)
};

// Raises the truncation order from 0 until the scanned sup drops to pi^2 or
// max_ord is exhausted. dominance_flag true means every root of the
// normalized quasipolynomial with nonnegative real part has |Im| <= pi.
FreqBoundReport frequency_bound(const Quasipolynomial& q_norm, int max_ord);

}  // namespace qpmid
