#include "qpmid/freqbound.hpp"

#include <cassert>
#include <cmath>

#include "qpmid/realroots.hpp"

namespace qpmid {

namespace {

constexpr double kPiSq = 9.869604401089358;  // pi^2

// Real/imaginary parts of P(x + i w) as bivariates in (x, w). The real part
// holds only even w-powers and the imaginary part only odd ones, exactly.
template <class Scalar>
std::pair<Bivariate<Scalar>, Bivariate<Scalar>> complex_parts(const Polynomial<Scalar>& p) {
  Bivariate<Scalar> re(1, 1), im(1, 1);
  for (int k = p.degree(); k >= 0; --k) {
    // (re, im) <- (re, im) * (x + i w) + c_k
    Bivariate<Scalar> x_mono(2, 1), w_mono(1, 2);
    x_mono.at(1, 0) = Scalar(1);
    w_mono.at(0, 1) = Scalar(1);
    Bivariate<Scalar> re2 = re * x_mono - im * w_mono;
    Bivariate<Scalar> im2 = re * w_mono + im * x_mono;
    re2.at(0, 0) += p.coeff(static_cast<std::size_t>(k));
    re = re2.trimmed();
    im = im2.trimmed();
  }
  return {re, im};
}

// w^2 -> W on a bivariate that carries only even w-powers.
template <class Scalar>
Bivariate<Scalar> substitute_w_squared(const Bivariate<Scalar>& b) {
  Bivariate<Scalar> out(b.x_size(), (b.w_size() + 1) / 2);
  for (int i = 0; i < b.x_size(); ++i)
    for (int j = 0; j < b.w_size(); ++j) {
      if (j % 2 == 1) {
        assert(b.coeff(i, j) == Scalar(0));
        continue;
      }
      out.at(i, j / 2) = b.coeff(i, j);
    }
  return out.trimmed();
}

template <class Scalar>
Bivariate<Scalar> modulus_squared(const Polynomial<Scalar>& p) {
  auto [re, im] = complex_parts(p);
  return substitute_w_squared(re * re + im * im);
}

template <class Scalar>
Bivariate<Scalar> taylor_exp2x(int ord, const Scalar& one) {
  Bivariate<Scalar> t(ord + 1, 1);
  Scalar term = one;  // (2x)^k / k! coefficient, k = 0
  t.at(0, 0) = term;
  for (int k = 1; k <= ord; ++k) {
    term = term * Scalar(2) / Scalar(k);
    t.at(k, 0) = term;
  }
  return t;
}

template <class Scalar>
Bivariate<Scalar> build_h_impl(const Polynomial<Scalar>& p0, const Polynomial<Scalar>& ptau,
                               int ord) {
  Bivariate<Scalar> h = modulus_squared(ptau) - modulus_squared(p0) * taylor_exp2x(ord, Scalar(1));
  return h.trimmed();
}

}  // namespace

BivariateExact build_h_exact(const Polynomial<Rational>& p0, const Polynomial<Rational>& ptau,
                             int ord) {
  if (ord < 0) throw DomainError("build_h: order must be >= 0");
  return build_h_impl(p0, ptau, ord);
}

BivariatePoly build_H(const Quasipolynomial& q_norm, int ord) {
  if (ord < 0) throw DomainError("build_H: order must be >= 0");
  if (std::abs(q_norm.tau() - 1.0) > 1e-12)
    throw DomainError("build_H expects a normalized quasipolynomial (delay 1)");
  return build_h_impl(q_norm.p0(), q_norm.ptau(), ord);
}

namespace {

// Largest real root W >= 0 of H(x, .), if any.
std::optional<double> max_root_at(const BivariatePoly& h, double x) {
  RealPolynomial pw{h.w_coeffs_at(x)};
  if (pw.degree() < 1) return std::nullopt;
  double ub = cauchy_root_bound(pw) + 1.0;
  std::vector<double> roots = real_roots_in(pw, 0.0, ub, 1e-10);
  if (roots.empty()) return std::nullopt;
  return roots.back();
}

}  // namespace

SupScan sup_frequency(const BivariatePoly& h, double x_max) {
  if (!(x_max > 0.0)) throw DomainError("sup_frequency: x_max must be positive");
  const int kInitial = 512;
  SupScan scan;
  std::vector<std::pair<double, bool>> vals(kInitial + 1);  // (value, has_root)
  for (int i = 0; i <= kInitial; ++i) {
    double x = x_max * i / kInitial;
    std::optional<double> r = max_root_at(h, x);
    vals[static_cast<std::size_t>(i)] = {r.value_or(0.0), r.has_value()};
    if (r) {
      scan.curve.emplace_back(x, *r);
      if (!scan.sup || *r > *scan.sup) {
        scan.sup = *r;
        scan.arg_x = x;
      }
    }
  }
  if (!scan.sup) return scan;

  // Refine around every sampled local maximum down to 1e-4 in x.
  auto value = [&](double x) { return max_root_at(h, x).value_or(-1.0); };
  for (int i = 0; i <= kInitial; ++i) {
    if (!vals[static_cast<std::size_t>(i)].second) continue;
    double v = vals[static_cast<std::size_t>(i)].first;
    bool left_ok = i == 0 || !vals[static_cast<std::size_t>(i - 1)].second ||
                   vals[static_cast<std::size_t>(i - 1)].first <= v;
    bool right_ok = i == kInitial || !vals[static_cast<std::size_t>(i + 1)].second ||
                    vals[static_cast<std::size_t>(i + 1)].first <= v;
    if (!left_ok || !right_ok) continue;
    double lo = x_max * std::max(0, i - 1) / kInitial;
    double hi = x_max * std::min(kInitial, i + 1) / kInitial;
    while (hi - lo > 1e-4) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (value(m1) < value(m2)) lo = m1; else hi = m2;
    }
    double xr = 0.5 * (lo + hi);
    double vr = value(xr);
    if (vr > *scan.sup) {
      scan.sup = vr;
      scan.arg_x = xr;
    }
  }
  return scan;
}

FreqBoundReport frequency_bound(const Quasipolynomial& q_norm, int max_ord) {
  if (std::abs(q_norm.tau() - 1.0) > 1e-12)
    throw DomainError("frequency_bound expects a normalized quasipolynomial (delay 1)");
  double x_env = envelope_rightmost(companion(q_norm));
  double x_max = x_env > 0.0 ? 2.0 * x_env : 50.0;

  FreqBoundReport rep;
  rep.x_max = x_max;
  for (int ord = 0; ord <= max_ord; ++ord) {
    SupScan scan = sup_frequency(build_H(q_norm, ord), x_max);
    rep.order_used = ord;
    rep.sup_curve = scan.curve;
    rep.sup_value = scan.sup;
    if (!scan.sup) {
      rep.omega_bound.reset();
      rep.dominance_flag = true;
      return rep;
    }
    if (*scan.sup <= kPiSq) {
      rep.omega_bound = std::sqrt(*scan.sup);
      rep.dominance_flag = true;
      return rep;
    }
  }
  rep.omega_bound.reset();
  rep.dominance_flag = false;
  return rep;
}

}  // namespace qpmid
