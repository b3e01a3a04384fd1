#include "qpmid/midcore.hpp"

#include <cmath>
#include <sstream>

#include "qpmid/freqbound.hpp"
#include "qpmid/roots.hpp"

namespace qpmid {

namespace {

constexpr double kPi = 3.14159265358979323846;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

Complex integral_poly_exp(const RealPolynomial& p, Complex z) {
  if (p.is_zero()) return Complex(0.0);
  if (std::abs(z) < 1e-6) {
    // sum_j (-z)^j/j! sum_k c_k/(k+j+1)
    Complex acc(0.0), zpow(1.0);
    for (int j = 0;; ++j) {
      double moment = 0.0;
      for (int k = 0; k <= p.degree(); ++k)
        moment += p.coeff(static_cast<std::size_t>(k)) / static_cast<double>(k + j + 1);
      Complex term = zpow * moment;
      acc += term;
      if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(acc)) && j > 2) return acc;
      zpow *= -z / static_cast<double>(j + 1);
    }
  }
  // integral = sum_k [p^(k)(0) - p^(k)(1) e^{-z}] / z^{k+1}
  RealPolynomial at1 = p.taylor_shift(1.0);
  Complex expz = std::exp(-z);
  Complex acc(0.0);
  Complex zk = z;
  double fact = 1.0;
  for (int k = 0; k <= p.degree(); ++k) {
    if (k > 0) fact *= k;
    double d0 = fact * p.coeff(static_cast<std::size_t>(k));
    double d1 = fact * at1.coeff(static_cast<std::size_t>(k));
    acc += (d0 - d1 * expz) / zk;
    zk *= z;
  }
  return acc;
}

RealPolynomial design_kernel(int n, int m, double a_param) {
  RealPolynomial t{std::vector<double>{0.0, 1.0}};
  RealPolynomial one_minus_t{std::vector<double>{1.0, -1.0}};
  RealPolynomial k = RealPolynomial::constant(1.0);
  for (int i = 0; i < m - 1; ++i) k = k * t;
  for (int i = 0; i < n - 1; ++i) k = k * one_minus_t;
  return k * RealPolynomial{std::vector<double>{1.0, -a_param}};
}

CombinationParams factorization_params(int n, int m, double a_param) {
  if (n < 1 || m < 1) throw DomainError("factorization parameters need n >= 1, m >= 1");
  double alpha = (1.0 - a_param) * factorial(n - 1) / factorial(n + m - 1);
  double beta = a_param * factorial(n) / factorial(n + m);
  return CombinationParams(Complex(static_cast<double>(m)), Complex(static_cast<double>(n + m)),
                           alpha, beta);
}

MidDesign force_multiplicity(int n, int m, double tau, double lambda0, double a_param) {
  if (n < 1) throw DomainError("force_multiplicity: n must be >= 1");
  if (m < 1 || m >= n) throw DomainError("force_multiplicity: need 1 <= m < n (retarded type)");
  if (n + m > 20) throw DomainError("force_multiplicity: n + m above the desk-scale cap 20");
  if (!(tau > 0.0)) throw DomainError("force_multiplicity: tau must be positive");

  RealPolynomial kernel = design_kernel(n, m, a_param);
  RealPolynomial at1 = kernel.taylor_shift(1.0);
  double mfact = factorial(m - 1);

  // Endpoint derivatives: kernel^(k)(0) = k! c_k, kernel^(k)(1) = k! shifted_k.
  auto deriv0 = [&](int k) { return factorial(k) * kernel.coeff(static_cast<std::size_t>(k)); };
  auto deriv1 = [&](int k) { return factorial(k) * at1.coeff(static_cast<std::size_t>(k)); };

  // Delay-free part in powers of (lambda - lambda0): monic degree n plus
  // tau^{j-n} kernel^(n+m-j-1)(0)/(m-1)! for j < n.
  std::vector<double> c0(static_cast<std::size_t>(n) + 1, 0.0);
  c0[static_cast<std::size_t>(n)] = 1.0;
  for (int j = 0; j < n; ++j)
    c0[static_cast<std::size_t>(j)] = std::pow(tau, j - n) * deriv0(n + m - j - 1) / mfact;

  // Delayed part in the same powers: -e^{tau lambda0} tau^{j-n}
  // kernel^(n+m-j-1)(1)/(m-1)! for j <= m.
  double efac = std::exp(tau * lambda0);
  std::vector<double> ct(static_cast<std::size_t>(m) + 1, 0.0);
  for (int j = 0; j <= m; ++j)
    ct[static_cast<std::size_t>(j)] = -efac * std::pow(tau, j - n) * deriv1(n + m - j - 1) / mfact;

  RealPolynomial p0 = RealPolynomial(std::move(c0)).taylor_shift(-lambda0);
  RealPolynomial pt = RealPolynomial(std::move(ct)).taylor_shift(-lambda0);
  Quasipolynomial quasi(p0, pt, tau);

  int achieved = multiplicity_check(quasi, lambda0, n + m + 1);
  if (achieved < n + m)
    throw Error("force_multiplicity: synthesized design failed its own multiplicity check");
  return MidDesign{n,    m,   tau,   lambda0, a_param,
                   quasi, factorization_params(n, m, a_param), achieved, false};
}

MidDesign with_quasi_override(const MidDesign& d, Quasipolynomial quasi) {
  MidDesign out = d;
  out.quasi = std::move(quasi);
  out.achieved_multiplicity = multiplicity_check(out.quasi, out.lambda0, out.n + out.m + 1);
  out.tampered = true;
  return out;
}

int multiplicity_check(const Quasipolynomial& q, double lambda0, int k_max) {
  if (k_max > q.degree() + 1)
    throw DomainError("multiplicity_check: k_max must be at most the quasipolynomial degree + 1");
  return multiplicity_at(q, lambda0, k_max, 1e-9);
}

Complex factorization_residual(const MidDesign& d, Complex lambda) {
  Complex shift = lambda - d.lambda0;
  if (std::abs(shift) == 0.0)
    throw DomainError("factorization_residual: lambda must differ from lambda0");
  Complex rhs = std::pow(d.tau, d.m) * std::pow(shift, d.n + d.m) *
                combo_F(d.combo, -d.tau * shift);
  return d.quasi.eval(lambda) - rhs;
}

double factorization_residual_relative(const MidDesign& d, Complex lambda) {
  Complex shift = lambda - d.lambda0;
  Complex rhs = std::pow(d.tau, d.m) * std::pow(shift, d.n + d.m) *
                combo_F(d.combo, -d.tau * shift);
  double denom = std::max(d.quasi.eval_scale(lambda), std::abs(rhs));
  return std::abs(d.quasi.eval(lambda) - rhs) / std::max(denom, 1e-300);
}

bool kernel_positivity(int /*n*/, int /*m*/, double a_param) {
  // t^{m-1}(1-t)^{n-1} > 0 on (0,1); the sign is decided by 1 - A t.
  return a_param <= 1.0;
}

HilleScan hille_condition_scan(const CombinationParams& p, const SearchBox& box, int grid) {
  if (box.re_max > 0.0)
    throw DomainError("hille_condition_scan: box must lie in the closed left half-plane");
  if (grid < 8) throw DomainError("hille_condition_scan: grid must be >= 8");

  HilleScan scan;
  if (box.degenerate()) {
    scan.degenerate = true;
    scan.nonnegative = true;
    return scan;
  }
  bool first = true;
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j <= grid; ++j) {
      Complex z(box.re_min + box.width() * i / grid, box.im_min + box.height() * j / grid);
      if (std::abs(z) < 1e-12) continue;
      for (int k = 0; k < grid; ++k) {
        double t = (k + 0.5) / grid;
        double value;
        try {
          value = (z * ode_data(p, t * z).g_val).real();
        } catch (const SingularPointError&) {
          ++scan.skipped;
          continue;
        }
        bool better = first || value < scan.worst_value;
        if (!first && value == scan.worst_value) {
          better = z.real() < scan.worst_z.real() ||
                   (z.real() == scan.worst_z.real() && z.imag() < scan.worst_z.imag());
        }
        if (better) {
          scan.worst_value = value;
          scan.worst_z = z;
          scan.worst_t = t;
          first = false;
        }
      }
    }
  }
  scan.nonnegative = first || scan.worst_value >= -1e-12;
  return scan;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::not_certified_by_method: return "not-certified-by-method";
    case Verdict::refuted: return "refuted";
  }
  return "unknown";
}

Certificate certify_dominance(const MidDesign& d, int max_ord) {
  Certificate cert;
  std::ostringstream notes;

  int need = d.n + d.m;
  bool route_ok = d.achieved_multiplicity >= need;
  notes << "multiplicity at lambda0: " << d.achieved_multiplicity << " (need >= " << need
        << " for the factorization route)\n";

  Quasipolynomial q_norm = normalize(d.quasi, d.lambda0);
  FreqBoundReport freq = frequency_bound(q_norm, max_ord);
  cert.freq_bound = freq.omega_bound;
  if (freq.dominance_flag) {
    notes << "frequency bound: any root right of lambda0 has |Im(z)| <= "
          << (freq.omega_bound ? *freq.omega_bound : 0.0)
          << " in normalized units (truncation order " << freq.order_used
          << ", scan truncated at x_max = " << freq.x_max << ")\n";
  } else {
    notes << "frequency bound: none found up to truncation order " << max_ord << "\n";
  }

  cert.kernel_positive = kernel_positivity(d.n, d.m, d.a_param);
  notes << "kernel 1 - A t with A = " << d.a_param
        << (cert.kernel_positive ? " keeps a strictly positive sign on (0,1)\n"
                                 : " changes sign on (0,1)\n");

  bool certified = route_ok && freq.dominance_flag && cert.kernel_positive;
  if (certified) {
    notes << "sine-integral contradiction: a root x + i w of the normalized form with x >= 0 "
             "would force the integral over (0,1) of kernel(t) e^{-t x} sin(w t) dt to vanish; "
             "with 0 < w <= pi the integrand is strictly positive (and for w = 0 the plain "
             "integral is positive), so no such root exists\n";
  } else if (!route_ok) {
    notes << "factorization route inapplicable: lambda0 is not a root of multiplicity n+m\n";
  }

  // Independent numeric scan; it can only downgrade the verdict.
  double im_cap = std::max(kPi / d.tau * 1.01, 4.0);
  DominanceOptions opts;
  opts.compute_margin = true;
  DominanceCheck num = verify_dominance_numeric(d.quasi, d.lambda0, im_cap, opts);
  notes << "numeric scan over (" << num.box.re_min << ", " << num.box.re_max << "] x [-" << im_cap
        << ", " << im_cap << "]: " << num.winding_right
        << " root(s) right of lambda0; nearest-root margin " << num.margin << "\n";
  notes << "numeric scans are sampled evidence on the stated boxes only\n";

  if (!num.ok) {
    cert.verdict = Verdict::refuted;
  } else if (certified) {
    cert.verdict = Verdict::certified;
  } else {
    cert.verdict = Verdict::not_certified_by_method;
  }
  cert.notes = notes.str();
  return cert;
}

}  // namespace qpmid
