#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "conpoly/constructor.hpp"
#include "conpoly/errors.hpp"
#include "conpoly/measures.hpp"
#include "conpoly/polynomial.hpp"

namespace conpoly {

// Constrained Laguerre family: weight r^{d-1} e^{-r} for orthogonality,
// r^{d-1} e^{-r/2} for the zero-average constraint.

/// G_1 = r - 2d, then
/// G_n = (r - d) G_{n-1} - 2 r G'_{n-1} + (n + d - 1)(n - 2) G_{n-2}.
inline ConstrainedFamily<Rational> laguerre_recursion_family(int d, int N) {
  if (d < 1) throw std::invalid_argument("laguerre_recursion_family: d must be >= 1");
  if (N < 1) throw std::invalid_argument("laguerre_recursion_family: N must be >= 1");
  const auto ortho = MomentFunctional::laguerre_ortho(d);
  ConstrainedFamily<Rational> fam{ortho, MomentFunctional::laguerre_constraint(d), {}, {}, Provenance::Recursion,
                                  Convention::Monic};
  const QPolynomial r = variable();
  QPolynomial prev;  // G_0 never enters: its coefficient vanishes at n = 2
  QPolynomial cur{Rational(-2 * d), Rational(1)};
  fam.polys.push_back(cur);
  for (int n = 2; n <= N; ++n) {
    QPolynomial next = (r - QPolynomial::constant(Rational(d))) * cur - r * derivative(cur) * Rational(2);
    if (n > 2) next += prev * Rational((n + d - 1) * (n - 2));
    prev = cur;
    cur = next;
    fam.polys.push_back(cur);
  }
  for (const auto& p : fam.polys) fam.norms.push_back(pair(ortho, p, p));
  return fam;
}

/// 2r G_n'' - (r - 2d) G_n' + n G_n - (n - 1)(n + d) G_{n-1}; zero iff the
/// differential recurrence holds at order n.
inline QPolynomial laguerre_diffrec_residual(int d, int n, const ConstrainedFamily<Rational>& family) {
  if (n < 2 || n > family.size()) throw std::invalid_argument("laguerre_diffrec_residual: need 2 <= n <= N");
  const QPolynomial& g = family.at(n);
  const QPolynomial r = variable();
  const QPolynomial g1 = derivative(g);
  return r * derivative(g1) * Rational(2) - (r - QPolynomial::constant(Rational(2 * d))) * g1 + g * Rational(n) -
         family.at(n - 1) * Rational((n - 1) * (n + d));
}

/// g_n^d = (n - 1)! (n + d)!
inline UnitScalar laguerre_norm(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("laguerre_norm: n, d must be >= 1");
  return UnitScalar(Rational(factorial(static_cast<unsigned long>(n - 1)) * factorial(static_cast<unsigned long>(n + d))));
}

// Constrained Legendre family on [0, 1] with geometry factor r^{d-1}; the
// same weight serves orthogonality and constraint.

/// Three-term recursions for d = 1, 2, 3 in the endpoint normalization
/// G_n(1) = 1, bootstrapped from G_0 = 1 (not a family member) and
/// G_1 = (d + 1) r - d.
inline ConstrainedFamily<Rational> legendre_recursion_family(int d, int N) {
  if (d < 1 || d > 3)
    throw Unsupported("closed-form Legendre-type recursion is only available for d = 1, 2, 3 (got d = " +
                      std::to_string(d) + ")");
  if (N < 1) throw std::invalid_argument("legendre_recursion_family: N must be >= 1");
  const auto f = MomentFunctional::legendre(d);
  ConstrainedFamily<Rational> fam{f, f, {}, {}, Provenance::Recursion, Convention::EndpointOne};
  const QPolynomial r = variable();
  QPolynomial prev = QPolynomial::constant(Rational(1));
  QPolynomial cur{Rational(-d), Rational(d + 1)};
  fam.polys.push_back(cur);
  for (long n = 2; n <= N; ++n) {
    QPolynomial next;
    switch (d) {
      case 1:
        next = (r * Rational(2) - QPolynomial::constant(Rational(1))) * cur * Rational(2 * n - 1) -
               prev * Rational(n - 1);
        next /= Rational(n);
        break;
      case 2:
        next = QPolynomial{Rational(-2 * n * n), Rational(4 * n * n - 1)} * cur * Rational(2) -
               prev * Rational((n - 1) * (2 * n + 1));
        next /= Rational((n + 1) * (2 * n - 1));
        break;
      default:
        next = QPolynomial{Rational(-(n * n + n + 1)), Rational(2 * n * (n + 1))} * cur * Rational(2 * n + 1) -
               prev * Rational((n - 1) * (n + 1) * (n + 1));
        next /= Rational(n * n * (n + 2));
        break;
    }
    prev = cur;
    cur = next;
    fam.polys.push_back(cur);
  }
  for (const auto& p : fam.polys) fam.norms.push_back(pair(f, p, p));
  return fam;
}

/// r(r - 1) G'' + [(d + 1) r - d] G' - n(n + d) G.
inline QPolynomial legendre_ode_residual(int d, int n, const QPolynomial& g) {
  const QPolynomial g1 = derivative(g);
  return QPolynomial{Rational(0), Rational(-1), Rational(1)} * derivative(g1) +
         QPolynomial{Rational(-d), Rational(d + 1)} * g1 - g * Rational(n * (n + d));
}

/// gamma_n^d = 1 / (2n + d), valid in the endpoint normalization.
inline Rational legendre_norm(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("legendre_norm: n, d must be >= 1");
  return make_rational(1, 2 * n + d);
}

/// Rescales every member to the requested convention; norms scale by the
/// square of the factor.
inline ConstrainedFamily<Rational> to_paper_convention(const ConstrainedFamily<Rational>& family,
                                                       Convention convention) {
  ConstrainedFamily<Rational> out = family;
  out.convention = convention;
  for (int n = 1; n <= family.size(); ++n) {
    const auto& p = family.at(n);
    Rational divisor = convention == Convention::Monic ? p.leading() : evaluate_exact(p, Rational(1));
    if (divisor == 0)
      throw std::domain_error("P_" + std::to_string(n) + "(1) = 0; endpoint normalization impossible");
    const auto i = static_cast<std::size_t>(n - 1);
    out.polys[i] = p / divisor;
    out.norms[i] = family.norms[i] * Rational(1 / (divisor * divisor));
  }
  return out;
}

/// Legendre-type family in the endpoint normalization for any d: closed-form
/// recursion for d <= 3, constrained Gram-Schmidt otherwise.
inline ConstrainedFamily<Rational> legendre_family(int d, int N) {
  if (d >= 1 && d <= 3) return legendre_recursion_family(d, N);
  const auto f = MomentFunctional::legendre(d);
  return to_paper_convention(constrained_family(f, f, N), Convention::EndpointOne);
}

struct IdentityResidual {
  std::string identity;
  int n = 0;
  QPolynomial residual;
  bool zero() const { return residual.is_zero(); }
};

struct NormComparison {
  int n = 0;
  UnitScalar formula;
  UnitScalar computed;
  bool equal() const { return formula == computed; }
};

/// Verification record: every residual must be the zero polynomial and every
/// norm pair equal.
struct FamilyIdentityReport {
  std::string family;
  int d = 0;
  int N = 0;
  std::vector<IdentityResidual> residuals;
  std::vector<NormComparison> norms;

  bool all_zero() const {
    for (const auto& r : residuals)
      if (!r.zero()) return false;
    for (const auto& c : norms)
      if (!c.equal()) return false;
    return true;
  }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& r : residuals)
      if (!r.zero()) out.push_back(family + " d=" + std::to_string(d) + " " + r.identity + " n=" + std::to_string(r.n));
    for (const auto& c : norms)
      if (!c.equal()) out.push_back(family + " d=" + std::to_string(d) + " norm n=" + std::to_string(c.n));
    return out;
  }
};

/// Checks a Laguerre-type recursion family against Gram-Schmidt, the
/// differential recurrence and the norm formula.
inline FamilyIdentityReport verify_laguerre_family(int d, const ConstrainedFamily<Rational>& recursion) {
  const int N = recursion.size();
  FamilyIdentityReport rep{"laguerre", d, N, {}, {}};
  const auto gs =
      constrained_family(MomentFunctional::laguerre_ortho(d), MomentFunctional::laguerre_constraint(d), N);
  for (int n = 1; n <= N; ++n) {
    rep.residuals.push_back({"recursion_vs_gram_schmidt", n, recursion.at(n) - gs.at(n)});
    if (n >= 2) rep.residuals.push_back({"differential_recurrence", n, laguerre_diffrec_residual(d, n, recursion)});
    rep.norms.push_back({n, laguerre_norm(n, d), recursion.norm(n)});
  }
  return rep;
}

inline FamilyIdentityReport verify_laguerre(int d, int N) {
  return verify_laguerre_family(d, laguerre_recursion_family(d, N));
}

/// Checks a Legendre-type family (endpoint normalization) against
/// Gram-Schmidt, the ODE, the endpoint value and the norm formula.
inline FamilyIdentityReport verify_legendre_family(int d, const ConstrainedFamily<Rational>& recursion) {
  const int N = recursion.size();
  FamilyIdentityReport rep{"legendre", d, N, {}, {}};
  const auto f = MomentFunctional::legendre(d);
  const auto gs = to_paper_convention(constrained_family(f, f, N), Convention::EndpointOne);
  for (int n = 1; n <= N; ++n) {
    const auto& g = recursion.at(n);
    rep.residuals.push_back({"recursion_vs_gram_schmidt", n, g - gs.at(n)});
    rep.residuals.push_back({"ode", n, legendre_ode_residual(d, n, g)});
    rep.residuals.push_back(
        {"endpoint_value", n, QPolynomial::constant(Rational(evaluate_exact(g, Rational(1)) - 1))});
    rep.norms.push_back({n, UnitScalar(legendre_norm(n, d)), recursion.norm(n)});
  }
  return rep;
}

inline FamilyIdentityReport verify_legendre(int d, int N) {
  return verify_legendre_family(d, legendre_family(d, N));
}

}  // namespace conpoly
