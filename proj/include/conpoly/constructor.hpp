#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "conpoly/errors.hpp"
#include "conpoly/measures.hpp"
#include "conpoly/polynomial.hpp"

namespace conpoly {

enum class Provenance { GramSchmidt, Recursion };
enum class Convention { Monic, EndpointOne };

inline const char* to_string(Provenance p) { return p == Provenance::GramSchmidt ? "gram-schmidt" : "recursion"; }
inline const char* to_string(Convention c) { return c == Convention::Monic ? "monic" : "endpoint-one"; }

/// Norm type matching the coefficient field: exact UnitScalar or double.
template <class T>
using norm_t = std::conditional_t<std::is_same_v<T, Rational>, UnitScalar, double>;

namespace detail {

inline Rational divide(const UnitScalar& a, const UnitScalar& b) { return a.ratio(b); }
inline double divide(double a, double b) { return a / b; }
inline bool positive(const UnitScalar& a) { return a.sign() > 0; }
inline bool positive(double a) { return a > 0.0; }

template <class T>
void require_field_fits(const MomentFunctional& f) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (!f.is_exact())
      throw std::invalid_argument("exact construction requested with numeric functional " + f.descriptor());
  }
}

}  // namespace detail

/// Monic polynomials P_1..P_N orthogonal under `ortho` with zero average
/// under `constraint`. Index n is 1-based: the family starts at order 1.
template <class T = Rational>
struct ConstrainedFamily {
  MomentFunctional ortho;
  MomentFunctional constraint;
  std::vector<Polynomial<T>> polys;  // polys[n - 1] has degree n
  std::vector<norm_t<T>> norms;      // norms[n - 1] = pair(ortho, P_n, P_n)
  Provenance provenance = Provenance::GramSchmidt;
  Convention convention = Convention::Monic;

  int size() const noexcept { return static_cast<int>(polys.size()); }
  const Polynomial<T>& at(int n) const { return polys.at(static_cast<std::size_t>(n - 1)); }
  const norm_t<T>& norm(int n) const { return norms.at(static_cast<std::size_t>(n - 1)); }
};

/// Monic orthogonal polynomials P_0..P_N of a single functional, with the
/// monic three-term recurrence P_{n+1} = (r - alpha_n) P_n - beta_n P_{n-1}.
template <class T = Rational>
struct ClassicalFamily {
  MomentFunctional ortho;
  std::vector<Polynomial<T>> polys;  // polys[n] has degree n
  std::vector<norm_t<T>> norms;
  std::vector<T> alpha;
  std::vector<T> beta;  // beta[0] unused (zero)

  int size() const noexcept { return static_cast<int>(polys.size()); }
};

/// r^n minus its constraint average.
template <class T = Rational>
Polynomial<T> constrained_seed(int n, const MomentFunctional& constraint) {
  if (n < 1) throw std::invalid_argument("constrained_seed: n must be >= 1");
  detail::require_field_fits<T>(constraint);
  const auto mass = apply(constraint, Polynomial<T>::constant(T(1)));
  if (!detail::positive(mass)) throw Error("constraint functional " + constraint.descriptor() + " has zero mass");
  const auto mono = Polynomial<T>::monomial(static_cast<std::size_t>(n));
  const T avg = detail::divide(apply(constraint, mono), mass);
  return mono - Polynomial<T>::constant(avg);
}

/// Modified Gram-Schmidt of the given seeds under `ortho`. Seeds must be
/// monic of degree 1, 2, ... and satisfy the constraint; the output is then
/// the unique monic constrained family.
template <class T = Rational>
ConstrainedFamily<T> constrained_family_from_seeds(const MomentFunctional& ortho, const MomentFunctional& constraint,
                                                   const std::vector<Polynomial<T>>& seeds,
                                                   double tolerance = 1e-10) {
  detail::require_field_fits<T>(ortho);
  detail::require_field_fits<T>(constraint);
  ConstrainedFamily<T> fam{ortho, constraint, {}, {}, Provenance::GramSchmidt, Convention::Monic};
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    Polynomial<T> p = seeds[i];
    if (p.degree() != n) throw std::invalid_argument("seed " + std::to_string(n) + " has wrong degree");
    p /= p.leading();
    for (std::size_t m = 0; m < fam.polys.size(); ++m) {
      const T coef = detail::divide(pair(ortho, p, fam.polys[m]), fam.norms[m]);
      p -= fam.polys[m] * coef;
    }
    auto nrm = pair(ortho, p, p);
    if (!detail::positive(nrm)) {
      std::ostringstream msg;
      msg << "non-positive Gram norm at degree " << n << " for " << ortho.descriptor();
      throw NonPositiveGram(n, msg.str());
    }
    if constexpr (std::is_same_v<T, double>) {
      double scale = 0.0;
      for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        scale += std::abs(p.coeffs()[k] * constraint.moment_value(static_cast<unsigned>(k)));
      const double resid = std::abs(apply(constraint, p));
      if (resid > tolerance * std::max(scale, 1.0)) {
        std::ostringstream msg;
        msg << "constraint residual " << resid << " above tolerance at degree " << n;
        throw NonPositiveGram(n, msg.str());
      }
    }
    fam.polys.push_back(std::move(p));
    fam.norms.push_back(std::move(nrm));
  }
  return fam;
}

/// Constrained Gram-Schmidt on the trivial seeds r^n - <r^n>.
template <class T = Rational>
ConstrainedFamily<T> constrained_family(const MomentFunctional& ortho, const MomentFunctional& constraint, int N,
                                        double tolerance = 1e-10) {
  if (N < 1) throw std::invalid_argument("constrained families start at n = 1; N must be >= 1");
  std::vector<Polynomial<T>> seeds;
  seeds.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) seeds.push_back(constrained_seed<T>(n, constraint));
  return constrained_family_from_seeds<T>(ortho, constraint, seeds, tolerance);
}

/// Closed-form monic recurrence coefficients for the exact kinds.
/// Returns {alpha_0..alpha_{N-1}, beta_0..beta_{N-1}} with beta_0 = 0.
inline std::pair<std::vector<Rational>, std::vector<Rational>> classical_recurrence(const MomentFunctional& f,
                                                                                    int N) {
  std::vector<Rational> alpha, beta;
  const long d = f.dimension();
  for (long n = 0; n < N; ++n) {
    switch (f.kind()) {
      case MeasureKind::LaguerreOrtho:
        alpha.push_back(Rational(2 * n + d));
        beta.push_back(Rational(n * (n + d - 1)));
        break;
      case MeasureKind::LaguerreConstraint:
        alpha.push_back(Rational(2 * (2 * n + d)));
        beta.push_back(Rational(4 * n * (n + d - 1)));
        break;
      case MeasureKind::Gauss:
        alpha.push_back(Rational(0));
        beta.push_back(Rational(Rational(n) / (2 * f.gauss_parameter())));
        break;
      case MeasureKind::Legendre: {
        // Shifted Jacobi (0, d-1) mapped from [-1, 1] onto [0, 1].
        const long s = 2 * n + d - 1;
        const Rational a = (s == 0) ? Rational(0) : make_rational((d - 1) * (d - 1), s * (s + 2));
        alpha.push_back(Rational((1 + a) / 2));
        if (n == 0) {
          beta.push_back(Rational(0));
        } else {
          const Rational b = make_rational(4 * n * n * (n + d - 1) * (n + d - 1), s * s * (s + 1) * (s - 1));
          beta.push_back(Rational(b / 4));
        }
        break;
      }
      case MeasureKind::Numeric:
        throw std::invalid_argument("no closed-form recurrence for numeric functionals");
    }
    if (n == 0) beta.back() = 0;
  }
  return {alpha, beta};
}

/// Recurrence coefficients by the Stieltjes procedure (pairings only); works
/// for any functional and field.
template <class T = Rational>
std::pair<std::vector<T>, std::vector<T>> stieltjes_recurrence(const MomentFunctional& f, int N) {
  detail::require_field_fits<T>(f);
  std::vector<T> alpha, beta;
  Polynomial<T> prev;
  Polynomial<T> cur = Polynomial<T>::constant(T(1));
  auto h = pair(f, cur, cur);
  const auto r = Polynomial<T>::monomial(1);
  for (int n = 0; n < N; ++n) {
    const T a = detail::divide(pair(f, r * cur, cur), h);
    alpha.push_back(a);
    if (n == 0) beta.push_back(T(0));
    Polynomial<T> next = (r - Polynomial<T>::constant(a)) * cur - prev * beta.back();
    if (n + 1 < N) {
      auto h_next = pair(f, next, next);
      if (!detail::positive(h_next))
        throw NonPositiveGram(n + 1, "non-positive Gram norm at degree " + std::to_string(n + 1));
      beta.push_back(detail::divide(h_next, h));
      h = h_next;
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {alpha, beta};
}

/// Monic classical family P_0..P_N. Exact families use the closed-form
/// recurrence; double families run Stieltjes on the numeric moments.
template <class T = Rational>
ClassicalFamily<T> classical_family(const MomentFunctional& ortho, int N) {
  if (N < 0) throw std::invalid_argument("classical_family: N must be >= 0");
  ClassicalFamily<T> fam{ortho, {}, {}, {}, {}};
  if constexpr (std::is_same_v<T, Rational>) {
    detail::require_field_fits<T>(ortho);
    std::tie(fam.alpha, fam.beta) = classical_recurrence(ortho, N + 1);
  } else {
    std::tie(fam.alpha, fam.beta) = stieltjes_recurrence<T>(ortho, N + 1);
  }
  const auto r = Polynomial<T>::monomial(1);
  Polynomial<T> prev;
  Polynomial<T> cur = Polynomial<T>::constant(T(1));
  norm_t<T> h = apply(ortho, cur);
  for (int n = 0; n <= N; ++n) {
    fam.polys.push_back(cur);
    fam.norms.push_back(h);
    const auto un = static_cast<std::size_t>(n);
    Polynomial<T> next = (r - Polynomial<T>::constant(fam.alpha[un])) * cur - prev * fam.beta[un];
    if (n < N) h = h * fam.beta[un + 1];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return fam;
}

}  // namespace conpoly
