#pragma once

// Real-root isolation for dense univariate polynomials by recursive
// derivative isolation: the real roots of p' split [lo, hi] into intervals
// on which p is monotone, and each sign change is then bisected. No
// companion matrix involved.

#include <algorithm>
#include <cmath>
#include <vector>

#include "qpmid/polynomial.hpp"

namespace qpmid {

namespace detail {

inline void bisect_into(const RealPolynomial& p, double a, double b, double fa, double fb,
                        double tol, std::vector<double>& out) {
  if (fa == 0.0) { out.push_back(a); return; }
  if (fb == 0.0) { out.push_back(b); return; }
  if ((fa > 0.0) == (fb > 0.0)) return;
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    double m = 0.5 * (a + b);
    double fm = p.eval(m);
    if (fm == 0.0) { a = b = m; break; }
    if ((fm > 0.0) == (fa > 0.0)) { a = m; fa = fm; } else { b = m; fb = fm; }
  }
  out.push_back(0.5 * (a + b));
}

}  // namespace detail

// All real roots of p in [lo, hi], ascending. Tangential (even-order) roots
// are found through the derivative chain.
inline std::vector<double> real_roots_in(const RealPolynomial& p, double lo, double hi,
                                         double tol = 1e-10) {
  std::vector<double> roots;
  if (p.degree() <= 0 || !(lo < hi)) return roots;
  if (p.degree() == 1) {
    double r = -p.coeff(0) / p.coeff(1);
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }
  std::vector<double> crit = real_roots_in(p.derivative(), lo, hi, tol);
  std::vector<double> nodes;
  nodes.push_back(lo);
  for (double c : crit)
    if (c > nodes.back() + tol) nodes.push_back(c);
  if (hi > nodes.back() + tol) nodes.push_back(hi);
  else nodes.back() = hi;

  std::vector<double> vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = p.eval(nodes[i]);
  // Scale-aware zero snap at the monotonicity nodes so tangential roots
  // (p and p' vanishing together) are not missed.
  double scale = 0.0;
  for (int k = 0; k <= p.degree(); ++k)
    scale = std::max(scale, std::abs(p.coeff(k)) * std::pow(std::max({1.0, std::abs(lo), std::abs(hi)}), k));
  double snap = 1e-12 * std::max(scale, 1e-300);

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::abs(vals[i]) <= snap) {
      if (roots.empty() || nodes[i] > roots.back() + tol) roots.push_back(nodes[i]);
      vals[i] = 0.0;
    }
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (vals[i] == 0.0 || vals[i + 1] == 0.0) continue;
    detail::bisect_into(p, nodes[i], nodes[i + 1], vals[i], vals[i + 1], tol, roots);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots)
    if (unique.empty() || r > unique.back() + tol) unique.push_back(r);
  return unique;
}

}  // namespace qpmid
