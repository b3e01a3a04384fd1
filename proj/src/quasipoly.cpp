#include "qpmid/quasipoly.hpp"

#include <cmath>

#include "qpmid/realroots.hpp"

namespace qpmid {

Quasipolynomial::Quasipolynomial(RealPolynomial p0, RealPolynomial ptau, double tau)
    : p0_(std::move(p0)), ptau_(std::move(ptau)), tau_(tau) {
  if (p0_.degree() < 1) throw DomainError("quasipolynomial: p0 must have degree >= 1");
  if (std::abs(p0_.leading() - 1.0) > 1e-12)
    throw DomainError("quasipolynomial: p0 must be monic");
  if (!(tau_ > 0.0)) throw DomainError("quasipolynomial: delay must be positive");
  if (!ptau_.is_zero() && ptau_.degree() >= p0_.degree())
    throw NeutralTypeError(
        "quasipolynomial: deg ptau >= deg p0 is of neutral type; only retarded type "
        "(deg ptau < deg p0) is supported -- the neutral right-half-plane root count "
        "is an unimplemented branch");
  coeff_scale_ = 0.0;
  for (int k = 0; k <= p0_.degree(); ++k)
    coeff_scale_ = std::max(coeff_scale_, std::abs(p0_.coeff(k)));
  for (int k = 0; k <= ptau_.degree(); ++k)
    coeff_scale_ = std::max(coeff_scale_, std::abs(ptau_.coeff(k)));
}

Complex Quasipolynomial::eval(Complex lambda) const {
  Complex v = p0_.eval(lambda);
  if (!ptau_.is_zero()) v += ptau_.eval(lambda) * std::exp(-lambda * tau_);
  return v;
}

double Quasipolynomial::eval_scale(Complex lambda) const {
  double r = std::abs(lambda);
  double s = 0.0, pw = 1.0;
  for (int k = 0; k <= p0_.degree(); ++k) {
    s += std::abs(p0_.coeff(k)) * pw;
    pw *= r;
  }
  double e = std::exp(-lambda.real() * tau_);
  pw = 1.0;
  for (int k = 0; k <= ptau_.degree(); ++k) {
    s += std::abs(ptau_.coeff(k)) * pw * e;
    pw *= r;
  }
  return s;
}

std::vector<Complex> eval_derivatives(const Quasipolynomial& q, Complex lambda, int k_max) {
  if (k_max < 0) throw DomainError("eval_derivatives: k_max must be >= 0");
  std::vector<Complex> out(static_cast<std::size_t>(k_max) + 1, Complex(0.0));

  RealPolynomial d0 = q.p0();
  for (int k = 0; k <= k_max; ++k) {
    out[static_cast<std::size_t>(k)] = d0.eval(lambda);
    d0 = d0.derivative();
  }
  if (q.ptau().is_zero()) return out;

  // d^k/dl^k [ptau(l) e^{-tau l}] = e^{-tau l} sum_i C(k,i) (-tau)^{k-i} ptau^(i)(l)
  std::vector<Complex> pt_derivs;
  RealPolynomial dt = q.ptau();
  for (int k = 0; k <= k_max; ++k) {
    pt_derivs.push_back(dt.eval(lambda));
    dt = dt.derivative();
  }
  Complex expf = std::exp(-lambda * q.tau());
  for (int k = 0; k <= k_max; ++k) {
    Complex acc(0.0);
    double binom = 1.0;
    for (int i = k; i >= 0; --i) {
      acc += binom * std::pow(-q.tau(), k - i) * pt_derivs[static_cast<std::size_t>(i)];
      binom = binom * i / static_cast<double>(k - i + 1);
    }
    out[static_cast<std::size_t>(k)] += expf * acc;
  }
  return out;
}

int multiplicity_at(const Quasipolynomial& q, double lambda0, int k_max, double tol) {
  std::vector<Complex> d = eval_derivatives(q, Complex(lambda0), k_max);
  double scale = q.coeff_scale() * std::pow(std::max(1.0, std::abs(lambda0)), q.n());
  for (int k = 0; k <= k_max; ++k)
    if (std::abs(d[static_cast<std::size_t>(k)]) > tol * scale) return k;
  return k_max + 1;
}

Quasipolynomial normalize(const Quasipolynomial& q, double lambda0) {
  int n = q.n();
  double tau = q.tau();
  double tn = std::pow(tau, n);
  RealPolynomial p0n = tn * q.p0().compose_affine(1.0 / tau, lambda0);
  // Re-monicize: analytically the leading coefficient is exactly 1.
  std::vector<double> c = p0n.coeffs();
  double lead = c.back();
  for (auto& v : c) v /= lead;
  p0n = RealPolynomial(std::move(c));

  RealPolynomial ptn = (tn * std::exp(-lambda0 * tau)) * q.ptau().compose_affine(1.0 / tau, lambda0);
  return Quasipolynomial(p0n, ptn, 1.0);
}

Quasipolynomial denormalize(const Quasipolynomial& q_norm, double tau, double lambda0) {
  int n = q_norm.n();
  double tn = std::pow(tau, -n);
  RealPolynomial p0 = tn * q_norm.p0().compose_affine(tau, -tau * lambda0);
  std::vector<double> c = p0.coeffs();
  double lead = c.back();
  for (auto& v : c) v /= lead;
  p0 = RealPolynomial(std::move(c));

  RealPolynomial pt =
      (tn * std::exp(lambda0 * tau)) * q_norm.ptau().compose_affine(tau, -tau * lambda0);
  return Quasipolynomial(p0, pt, tau);
}

CompanionPair companion(const Quasipolynomial& q) {
  int n = q.n();
  CompanionPair cp;
  cp.tau = q.tau();
  cp.a0 = Eigen::MatrixXd::Zero(n, n);
  cp.atau = Eigen::MatrixXd::Zero(n, n);
  cp.btau = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) cp.a0(i, i + 1) = 1.0;
  for (int k = 0; k < n; ++k) cp.a0(n - 1, k) = -q.p0().coeff(static_cast<std::size_t>(k));
  for (int k = 0; k <= q.ptau().degree(); ++k)
    cp.atau(n - 1, k) = -q.ptau().coeff(static_cast<std::size_t>(k));
  return cp;
}

double matrix_2norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::MatrixXd b = a.transpose() * a;
  Eigen::VectorXd v(b.rows());
  for (int i = 0; i < v.size(); ++i) v(i) = 1.0 + 0.01 * i;
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd w = b * v;
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (std::abs(nw - lambda) <= 1e-12 * std::max(1.0, nw)) {
      lambda = nw;
      break;
    }
    lambda = nw;
  }
  return std::sqrt(lambda);
}

double envelope_bound(const CompanionPair& cp, double x) {
  if (!cp.btau.isZero(0.0)) throw DomainError("envelope_bound: btau must be zero");
  return matrix_2norm(cp.a0) + matrix_2norm(cp.atau) * std::exp(-cp.tau * x);
}

double envelope_rightmost(const CompanionPair& cp) {
  double n0 = matrix_2norm(cp.a0), nt = matrix_2norm(cp.atau);
  if (n0 + nt == 0.0) return 0.0;
  double lo = 0.0, hi = n0 + nt + 1.0;
  // f(x) = bound(x) - x is strictly decreasing; f(hi) <= -1.
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double f = n0 + nt * std::exp(-cp.tau * mid) - mid;
    (f > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

namespace {

// |p(i w)|^2 as a polynomial in u = w^2.
RealPolynomial modulus_squared_on_axis(const RealPolynomial& p) {
  if (p.is_zero()) return RealPolynomial();
  std::vector<double> re, im;  // coefficients in w
  for (int k = 0; k <= p.degree(); ++k) {
    double c = p.coeff(static_cast<std::size_t>(k));
    double s = (k / 2) % 2 == 0 ? 1.0 : -1.0;  // i^k sign pattern
    if (k % 2 == 0) {
      re.resize(std::max<std::size_t>(re.size(), k + 1), 0.0);
      re[static_cast<std::size_t>(k)] = s * c;
    } else {
      im.resize(std::max<std::size_t>(im.size(), k + 1), 0.0);
      im[static_cast<std::size_t>(k)] = s * c;
    }
  }
  RealPolynomial sq = RealPolynomial(re) * RealPolynomial(re) + RealPolynomial(im) * RealPolynomial(im);
  std::vector<double> u(static_cast<std::size_t>(sq.degree() / 2) + 1, 0.0);
  for (int k = 0; k <= sq.degree(); ++k) {
    if (k % 2 == 1) continue;  // odd powers vanish identically
    u[static_cast<std::size_t>(k / 2)] = sq.coeff(static_cast<std::size_t>(k));
  }
  return RealPolynomial(std::move(u));
}

}  // namespace

ImagAxisBound imag_axis_bound(const Quasipolynomial& q) {
  RealPolynomial f = modulus_squared_on_axis(q.p0()) - modulus_squared_on_axis(q.ptau());
  // Leading coefficient is +1 (from monic p0) for retarded type.
  double ub = cauchy_root_bound(f);
  std::vector<double> roots = real_roots_in(f, 0.0, ub + 1.0);
  if (roots.empty() && f.eval(0.0) > 0.0) return {false, 0.0};
  return {true, std::sqrt(ub)};
}

SearchBox::SearchBox(double rmin, double rmax, double imin, double imax)
    : re_min(rmin), re_max(rmax), im_min(imin), im_max(imax) {
  if (!(re_min <= re_max) || !(im_min <= im_max))
    throw DomainError("search box: min bounds must not exceed max bounds");
}

}  // namespace qpmid
