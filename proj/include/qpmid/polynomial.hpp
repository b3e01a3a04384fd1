#pragma once

// Dense univariate polynomial with ascending coefficients, templated on the
// scalar so the same code runs on double and on exact rationals. The zero
// polynomial is the empty coefficient sequence and reports degree() == -1.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

namespace qpmid {

template <class Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(Scalar v) { return Polynomial(std::vector<Scalar>{v}); }
  static Polynomial identity() { return Polynomial(std::vector<Scalar>{Scalar(0), Scalar(1)}); }

  bool is_zero() const { return c_.empty(); }
  // -1 is the zero-polynomial marker.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  Scalar coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(0); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  // Horner evaluation; the point type may be wider than the scalar
  // (e.g. complex points on a real polynomial).
  template <class X>
  X eval(const X& x) const {
    X acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + X(c_[i]);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Scalar(static_cast<int>(k));
    return Polynomial(std::move(d));
  }

  // Coefficients of p(x + shift); entry k equals p^(k)(shift)/k!.
  Polynomial taylor_shift(const Scalar& shift) const {
    std::vector<Scalar> s = c_;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      for (std::size_t j = s.size() - 1; j > i; --j) s[j - 1] += shift * s[j];
    return Polynomial(std::move(s));
  }

  // p(scale*x + shift).
  Polynomial compose_affine(const Scalar& scale, const Scalar& shift) const {
    Polynomial shifted = taylor_shift(shift);
    Scalar pw(1);
    for (std::size_t k = 0; k < shifted.c_.size(); ++k) {
      shifted.c_[k] *= pw;
      pw *= scale;
    }
    shifted.trim();
    return shifted;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) + b.coeff(k);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) - b.coeff(k);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Scalar& s, const Polynomial& p) {
    std::vector<Scalar> r = p.c_;
    for (auto& v : r) v = s * v;
    return Polynomial(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

using RealPolynomial = Polynomial<double>;

// 1 + max |c_k / c_d|; every root r satisfies |r| < bound.
inline double cauchy_root_bound(const RealPolynomial& p) {
  if (p.degree() < 1) return 0.0;
  double lead = std::abs(p.leading());
  double m = 0.0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p.coeff(k)) / lead);
  return 1.0 + m;
}

}  // namespace qpmid
