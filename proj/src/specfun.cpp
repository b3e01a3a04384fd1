#include "qpmid/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "qpmid/dd.hpp"

namespace qpmid {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(Complex v) {
  if (std::abs(v.imag()) > 1e-12) return false;
  double r = v.real();
  return r < 0.5 && std::abs(r - std::round(r)) < 1e-12;
}

// Direct double-double series sum of Phi(a, b, z); caller handles the
// reflection for Re(z) < -1.
CDD kummer_series(Complex a, Complex b, Complex z) {
  CDD term(1.0, 0.0);
  CDD sum = term;
  CDD zz(z);
  int below = 0;
  for (int k = 0; k < 10000; ++k) {
    CDD ratio = CDD(a.real() + k, a.imag()) / CDD(b.real() + k, b.imag());
    term = term * ratio * zz;
    term = CDD{term.re / DD(static_cast<double>(k + 1)), term.im / DD(static_cast<double>(k + 1))};
    sum = sum + term;
    if (abs_estimate(term) < 1e-16 * std::max(abs_estimate(sum), 1e-300)) {
      if (++below >= 3) return sum;
    } else {
      below = 0;
    }
  }
  throw SeriesDivergence("kummer series did not converge within 10000 terms",
                         sum.to_complex());
}

}  // namespace

Complex gamma(Complex z) {
  // Lanczos, g = 7, 9 coefficients.
  static const double c[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection through sin to reach the right half-plane.
    return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  }
  z -= 1.0;
  Complex x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  Complex t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

Complex pochhammer(Complex alpha, int k) {
  if (k < 0) throw DomainError("pochhammer: k must be >= 0");
  Complex r(1.0);
  for (int i = 0; i < k; ++i) r *= alpha + static_cast<double>(i);
  return r;
}

KummerParams::KummerParams(Complex a_, Complex b_) : a(a_), b(b_) {
  if (is_nonpositive_integer(b)) throw DomainError("kummer: -b must not be a natural number");
}

Complex kummer_phi(const KummerParams& p, Complex z) {
  if (z.real() < -1.0) {
    // e^z Phi(b-a, b, -z); all-positive-real-part argument, no alternation.
    return std::exp(z) * kummer_series(p.b - p.a, p.b, -z).to_complex();
  }
  return kummer_series(p.a, p.b, z).to_complex();
}

Complex kummer_phi_derivative(const KummerParams& p, Complex z, int order) {
  if (order < 0) throw DomainError("kummer derivative: order must be >= 0");
  Complex factor = pochhammer(p.a, order) / pochhammer(p.b, order);
  return factor * kummer_phi(KummerParams(p.a + static_cast<double>(order),
                                          p.b + static_cast<double>(order)),
                             z);
}

Complex kummer_phi_integral(const KummerParams& p, Complex z) {
  if (!(p.b.real() > p.a.real() && p.a.real() > 0.0))
    throw DomainError("kummer integral form requires Re(b) > Re(a) > 0");
  auto integrate = [&](int npts) {
    Complex acc(0.0);
    for (const QuadNode& q : gauss_legendre_01(npts)) {
      Complex f = std::exp(z * q.x) * std::exp((p.a - 1.0) * std::log(q.x)) *
                  std::exp((p.b - p.a - 1.0) * std::log1p(-q.x));
      acc += q.w * f;
    }
    return acc;
  };
  Complex v64 = integrate(64);
  Complex v128 = integrate(128);
  if (std::abs(v64 - v128) > 1e-9 * std::max(1.0, std::abs(v128)))
    throw QuadratureError("kummer integral: 64/128-point quadratures disagree above 1e-9");
  return gamma(p.b) / (gamma(p.a) * gamma(p.b - p.a)) * v128;
}

std::pair<Complex, Complex> contiguous_residuals(const KummerParams& p, Complex z) {
  if (std::abs(p.a - p.b) < 1e-14) throw DomainError("contiguous relations need a != b");
  if (std::abs(z) < 1e-300) throw DomainError("contiguous relations need z != 0");
  Complex a = p.a, b = p.b;
  Complex f_ab = kummer_phi(p, z);
  Complex f_a1b = kummer_phi(KummerParams(a + 1.0, b), z);
  Complex f_ab1 = kummer_phi(KummerParams(a, b + 1.0), z);
  Complex f_a1b1 = kummer_phi(KummerParams(a + 1.0, b + 1.0), z);
  Complex r1 = f_ab1 - (-b * (a + z) * f_ab + a * b * f_a1b) / (z * (a - b));
  Complex r2 = f_a1b1 + (-b * f_a1b + b * f_ab) / z;
  return {r1, r2};
}

CombinationParams::CombinationParams(Complex a_, Complex b_, double alpha_, double beta_)
    : a(a_), b(b_), alpha(alpha_), beta(beta_) {
  if (is_nonpositive_integer(b) || is_nonpositive_integer(b + 1.0))
    throw DomainError("combination: -b and -(b+1) must not be natural numbers");
  if (alpha == 0.0 && beta == 0.0)
    throw DomainError("combination: (alpha, beta) must not both vanish");
}

Complex combo_F(const CombinationParams& p, Complex z) {
  Complex v(0.0);
  if (p.alpha != 0.0) v += p.alpha * kummer_phi(KummerParams(p.a, p.b), z);
  if (p.beta != 0.0) v += p.beta * kummer_phi(KummerParams(p.a, p.b + 1.0), z);
  return v;
}

ComboJet combo_jet(const CombinationParams& p, Complex z) {
  ComboJet jet{Complex(0.0), Complex(0.0), Complex(0.0)};
  for (int i = 0; i < 2; ++i) {
    double coef = i == 0 ? p.alpha : p.beta;
    if (coef == 0.0) continue;
    KummerParams kp(p.a, p.b + static_cast<double>(i));
    jet.f += coef * kummer_phi(kp, z);
    jet.df += coef * kummer_phi_derivative(kp, z, 1);
    jet.d2f += coef * kummer_phi_derivative(kp, z, 2);
  }
  return jet;
}

namespace {

struct OdePieces {
  Complex dprime;  // slope of the affine D
  Complex d0;      // constant term of D
  Complex d(Complex z) const { return dprime * z + d0; }
};

OdePieces ode_pieces(const CombinationParams& p) {
  Complex a = p.a, b = p.b;
  double al = p.alpha, be = p.beta;
  OdePieces pc;
  pc.dprime = (a - b) * al * al - al * b * be;
  pc.d0 = -al * b * b * be - b * b * be * be;
  return pc;
}

void check_regular(const CombinationParams& p, Complex z, const OdePieces& pc) {
  if (std::abs(z) < 1e-300) throw SingularPointError("equation data singular at z = 0");
  double scale = std::abs(pc.dprime) * std::abs(z) + std::abs(pc.d0) + 1e-300;
  if (std::abs(pc.d(z)) < 1e-12 * scale)
    throw SingularPointError("equation data singular: D(z) vanishes at this point");
}

}  // namespace

OdeData ode_data(const CombinationParams& p, Complex z, RForm form) {
  OdePieces pc = ode_pieces(p);
  check_regular(p, z, pc);
  Complex a = p.a, b = p.b;
  double al = p.alpha, be = p.beta;
  Complex d = pc.d(z);
  Complex n = a * (pc.dprime * z - be * b * (b + 1.0) * al) - a * b * b * be * be;
  Complex q = -1.0 + (b + 1.0) / z - pc.dprime / d;
  Complex r = form == RForm::corrected ? -n / (z * d) : -n / d;
  // D is affine, so Q' is closed-form.
  Complex qprime = -(b + 1.0) / (z * z) + (pc.dprime / d) * (pc.dprime / d);
  Complex g = r - q * q / 4.0 - qprime / 2.0;
  return {q, r, n, d, g};
}

namespace {

Complex whittaker_exponent(const CombinationParams& p, Complex z, const OdePieces& pc) {
  return 0.5 * (-z + (p.b + 1.0) * std::log(z) - std::log(pc.d(z)));
}

void check_branch(Complex z) {
  if (std::abs(z) < 1e-300)
    throw BranchCutError("whittaker-type function has a branch point at z = 0");
  if (z.real() < 0.0 && std::abs(z.imag()) < 1e-12 * std::abs(z.real()))
    throw BranchCutError("whittaker-type function: z on the negative real axis branch cut");
}

}  // namespace

Complex whittaker_W(const CombinationParams& p, Complex z) {
  check_branch(z);
  OdePieces pc = ode_pieces(p);
  check_regular(p, z, pc);
  return std::exp(whittaker_exponent(p, z, pc)) * combo_F(p, z);
}

Complex whittaker_W_derivative(const CombinationParams& p, Complex z) {
  check_branch(z);
  OdePieces pc = ode_pieces(p);
  check_regular(p, z, pc);
  OdeData od = ode_data(p, z);
  ComboJet jet = combo_jet(p, z);
  return std::exp(whittaker_exponent(p, z, pc)) * (0.5 * od.q_val * jet.f + jet.df);
}

Complex whittaker_M(Complex k, Complex l, Complex z) {
  KummerParams kp(0.5 + l - k, 1.0 + 2.0 * l);
  return std::exp(-0.5 * z) * std::pow(z, 0.5 + l) * kummer_phi(kp, z);
}

RootRegionReport kummer_root_region(double a, double b) {
  if (!(b >= 2.0)) throw DomainError("root region classifier requires b >= 2");
  RootRegionReport rep;
  if (b == 2.0 * a) {
    rep.region = RootRegion::axis;
    return rep;
  }
  rep.region = b > 2.0 * a ? RootRegion::right_half : RootRegion::left_half;
  rep.hyper_im2 = (b - 2.0 * a) * (b - 2.0 * a);
  rep.hyper_re2 = 4.0 * a * (b - a) - 2.0 * b;
  return rep;
}

Complex green_hille_residual(const CombinationParams& p, Complex z_end, int samples) {
  if (samples < 16) throw DomainError("green-hille residual needs samples >= 16");
  if (std::abs(z_end) < 1e-300) return Complex(0.0);

  int panels = std::max(1, samples / 16);
  const std::vector<QuadNode>& nodes = gauss_legendre_01(16);
  Complex i_dw(0.0);  // int_0^1 |W'(t z)|^2 dt
  Complex i_wg(0.0);  // int_0^1 |W(t z)|^2 G(t z) dt
  for (int pnl = 0; pnl < panels; ++pnl) {
    double lo = static_cast<double>(pnl) / panels;
    double w_scale = 1.0 / panels;
    for (const QuadNode& q : nodes) {
      double t = lo + q.x * w_scale;
      Complex zt = t * z_end;
      Complex w = whittaker_W(p, zt);
      Complex dw = whittaker_W_derivative(p, zt);
      Complex g = ode_data(p, zt).g_val;
      i_dw += q.w * w_scale * std::norm(dw);
      i_wg += q.w * w_scale * std::norm(w) * g;
    }
  }
  // Lower boundary term vanishes: W ~ z^{(b+1)/2} near 0 with Re(b) > 1.
  Complex bracket = std::conj(whittaker_W(p, z_end)) * whittaker_W_derivative(p, z_end);
  return bracket - std::conj(z_end) * i_dw + z_end * i_wg;
}

const std::vector<QuadNode>& gauss_legendre_01(int n) {
  static std::map<int, std::vector<QuadNode>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<QuadNode> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[static_cast<std::size_t>(n - 1 - i)] = {0.5 * (1.0 + x), 0.5 * w};
    nodes[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * w};
  }
  auto [pos, inserted] = cache.emplace(n, std::move(nodes));
  return pos->second;
}

}  // namespace qpmid
