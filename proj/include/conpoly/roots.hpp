#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "conpoly/polynomial.hpp"

namespace conpoly {

/// Cauchy bound: every real root lies in [-bound, bound].
inline double root_bound(const DPolynomial& p) {
  if (p.degree() < 1) return 0.0;
  double m = 0.0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p.coeffs()[k] / p.leading()));
  return 1.0 + m;
}

/// Distinct real roots of p inside [lo, hi], ascending. The derivative's
/// roots split the interval into monotone pieces, each bisected to full
/// precision. Multiple roots are reported once (they are critical points).
inline std::vector<double> real_roots(const DPolynomial& p, double lo, double hi) {
  std::vector<double> out;
  if (p.degree() < 1 || lo > hi) return out;
  std::vector<double> cuts{lo};
  for (double c : real_roots(derivative(p), lo, hi))
    if (c > lo && c < hi) cuts.push_back(c);
  cuts.push_back(hi);

  const double tiny = 1e-13 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i];
    double b = cuts[i + 1];
    double fa = evaluate(p, a);
    double fb = evaluate(p, b);
    if (fa == 0.0) {
      if (out.empty() || std::abs(out.back() - a) > tiny) out.push_back(a);
      continue;
    }
    if (fb == 0.0) {
      out.push_back(b);
      continue;
    }
    if ((fa < 0) == (fb < 0)) {
      // A double root sitting on a critical point shows up as a near-zero
      // extremum rather than a sign change.
      if (i > 0 && std::abs(fa) <= 1e-14 * std::max(1.0, std::abs(p.leading())) &&
          (out.empty() || std::abs(out.back() - a) > tiny))
        out.push_back(a);
      continue;
    }
    for (int it = 0; it < 200 && b - a > 0; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = evaluate(p, mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fm < 0) == (fa < 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    const double root = 0.5 * (a + b);
    if (out.empty() || std::abs(out.back() - root) > tiny) out.push_back(root);
  }
  return out;
}

inline std::vector<double> real_roots(const DPolynomial& p) {
  const double b = root_bound(p);
  return real_roots(p, -b, b);
}

}  // namespace conpoly
