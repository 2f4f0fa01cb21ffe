#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "conpoly/constructor.hpp"
#include "conpoly/measures.hpp"
#include "conpoly/polynomial.hpp"
#include "conpoly/unit_scalar.hpp"

namespace conpoly {

/// The weight mu(r) attached to basis functions: exp(-rate r) or exp(-rate r^2).
struct Envelope {
  enum class Kind { Exponential, Gaussian };
  Kind kind = Kind::Exponential;
  double rate = 0.5;

  double operator()(double r) const {
    return kind == Kind::Exponential ? std::exp(-rate * r) : std::exp(-rate * r * r);
  }
};

/// Unit-normalized weighted polynomial mu(r) * norm_factor * poly(r), with
/// positive leading coefficient.
struct BasisFunction {
  BasisFunction(Envelope m, QPolynomial p, double factor)
      : mu(m), poly(std::move(p)), norm_factor(factor), poly_d_(to_double(poly)) {}

  Envelope mu;
  QPolynomial poly;
  double norm_factor = 1.0;

  double operator()(double r) const { return mu(r) * reduced(r); }
  /// The function without its envelope.
  double reduced(double r) const { return norm_factor * evaluate(poly_d_, r); }

 private:
  DPolynomial poly_d_;
};

/// Orthogonality weight mu^2 and constraint weight mu for a pair of bases
/// {w_n = mu G_n} (constrained) and {z_n = mu L_n} (classical).
struct WeightCase {
  std::string name;
  MomentFunctional ortho;
  MomentFunctional constraint;
  Envelope mu;
  double support_lo;  // 0 or -infinity
};

/// mu = exp(-r/2) on [0, inf), d = 1.
inline WeightCase laguerre_case() {
  return {"laguerre", MomentFunctional::laguerre_ortho(1), MomentFunctional::laguerre_constraint(1),
          Envelope{Envelope::Kind::Exponential, 0.5}, 0.0};
}

/// mu = exp(-a r^2) on the real line; a = 1/2 by default, a = 1 gives the
/// e^{-r^2}-tuned variant.
inline WeightCase hermite_case(const Rational& a = Rational(1, 2)) {
  return {a == Rational(1, 2) ? "hermite" : "hermite:a=" + a.get_str(), MomentFunctional::gauss(Rational(2 * a)),
          MomentFunctional::gauss(a), Envelope{Envelope::Kind::Gaussian, a.get_d()},
          -std::numeric_limits<double>::infinity()};
}

inline WeightCase parse_weight_case(const std::string& name) {
  if (name == "laguerre") return laguerre_case();
  if (name == "hermite") return hermite_case();
  if (name == "hermite-tuned" || name == "hermite:a=1") return hermite_case(Rational(1));
  throw std::invalid_argument("unknown weight case '" + name + "' (laguerre, hermite, hermite-tuned)");
}

/// Unit vector c_0..c_N in the classical basis, proportional to the averages.
struct SubtractorVector {
  int N = 0;
  std::vector<double> coords;
  std::vector<double> averages;
};

/// Classical and constrained bases of one weight case, truncated at order N.
///
/// Averages <z_n> are evaluated exactly and rounded once. Function values of
/// z_n come from the orthonormal three-term recurrence; values of w_n come
/// from their closed-form expansion in the z_n,
///   w_n = a_n (z_n - (c_n / S_{n-1}) sum_{m<n} c_m z_m),  S_k = sum_{m<=k} c_m^2,
/// which stays stable at degree ~150 where monomial coefficients do not.
class ConstrainedProjector {
 public:
  ConstrainedProjector(WeightCase wc, int N)
      : case_(std::move(wc)), N_(N), classical_(classical_family(case_.ortho, checked_order(N))) {
    averages_.reserve(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
      const auto un = static_cast<std::size_t>(n);
      averages_.push_back(ratio_over_sqrt(apply(case_.constraint, classical_.polys[un]), classical_.norms[un]));
    }
    for (std::size_t n = 0; n < classical_.alpha.size(); ++n) {
      alpha_.push_back(classical_.alpha[n].get_d());
      sqrt_beta_.push_back(std::sqrt(classical_.beta[n].get_d()));
    }
    p0_ = 1.0 / std::sqrt(classical_.norms[0].to_double());
  }

  const WeightCase& weight_case() const noexcept { return case_; }
  int order() const noexcept { return N_; }
  const ClassicalFamily<Rational>& classical() const noexcept { return classical_; }

  /// <z_0> .. <z_N>.
  const std::vector<double>& averages() const noexcept { return averages_; }

  SubtractorVector subtractor(int n) const {
    check(n);
    double s = 0.0;
    for (int m = 0; m <= n; ++m) s += averages_[static_cast<std::size_t>(m)] * averages_[static_cast<std::size_t>(m)];
    if (s == 0.0) throw Error("all averages vanish; subtractor undefined");
    SubtractorVector out{n, {}, {averages_.begin(), averages_.begin() + n + 1}};
    for (double a : out.averages) out.coords.push_back(a / std::sqrt(s));
    return out;
  }

  /// z_0(r) .. z_n(r).
  std::vector<double> classical_values(double r, int n) const {
    check(n);
    std::vector<double> z(static_cast<std::size_t>(n) + 1);
    double prev = 0.0;
    double cur = p0_;
    for (int k = 0; k <= n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      z[uk] = cur;
      if (k == n) break;
      const double next = ((r - alpha_[uk]) * cur - (k > 0 ? sqrt_beta_[uk] * prev : 0.0)) / sqrt_beta_[uk + 1];
      prev = cur;
      cur = next;
    }
    const double mu = case_.mu(r);
    for (auto& v : z) v *= mu;
    return z;
  }

  /// w_1(r) .. w_n(r).
  std::vector<double> constrained_values(double r, int n) const {
    const auto z = classical_values(r, n);
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(n));
    double weighted = 0.0;  // sum_{m<k} c_m z_m
    double s = 0.0;         // sum_{m<k} c_m^2
    for (int k = 0; k <= n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      const double c = averages_[uk];
      if (k > 0) {
        const double ratio = c / s;
        w.push_back((z[uk] - ratio * weighted) / std::sqrt(1.0 + c * ratio));
      }
      weighted += c * z[uk];
      s += c * c;
    }
    return w;
  }

  /// Expansion coefficients of w_1..w_n in z_0..z_n from the closed form.
  Eigen::MatrixXd overlap_closed_form(int n) const {
    check(n);
    Eigen::MatrixXd O = Eigen::MatrixXd::Zero(n, n + 1);
    double s = averages_[0] * averages_[0];
    for (int k = 1; k <= n; ++k) {
      const double c = averages_[static_cast<std::size_t>(k)];
      const double ratio = c / s;
      const double a = 1.0 / std::sqrt(1.0 + c * ratio);
      O(k - 1, k) = a;
      for (int m = 0; m < k; ++m) O(k - 1, m) = -a * ratio * averages_[static_cast<std::size_t>(m)];
      s += c * c;
    }
    return O;
  }

  /// O[n-1][m] = <w_n | z_m> from exact pairings of the Gram-Schmidt family
  /// with the classical family.
  Eigen::MatrixXd overlap_exact(int n) const {
    check(n);
    const auto& fam = constrained(n);
    std::vector<QPolynomial> ws(fam.polys.begin(), fam.polys.begin() + n);
    std::vector<QPolynomial> zs(classical_.polys.begin(), classical_.polys.begin() + n + 1);
    const auto R = pair_matrix_rational(case_.ortho, ws, zs);
    Eigen::MatrixXd O(n, n + 1);
    for (int i = 0; i < n; ++i)
      for (int m = 0; m <= n; ++m) {
        const auto& rv = R[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
        const Rational sq = rv * rv / (fam.norms[static_cast<std::size_t>(i)].value() *
                                       classical_.norms[static_cast<std::size_t>(m)].value());
        O(i, m) = sgn(rv) * std::sqrt(sq.get_d());
      }
    return O;
  }

  /// Exact monic constrained family up to order n (built once, grown on demand).
  const ConstrainedFamily<Rational>& constrained(int n) const {
    check(n);
    if (!constrained_ || constrained_->size() < n)
      constrained_ = std::make_shared<ConstrainedFamily<Rational>>(
          constrained_family(case_.ortho, case_.constraint, std::max(n, 1)));
    return *constrained_;
  }

  /// Unit-normalized w_n with exact polynomial part.
  BasisFunction constrained_function(int n) const {
    const auto& fam = constrained(n);
    const auto i = static_cast<std::size_t>(n - 1);
    return BasisFunction{case_.mu, fam.polys[i], 1.0 / std::sqrt(fam.norms[i].to_double())};
  }

  BasisFunction classical_function(int n) const {
    check(n);
    const auto i = static_cast<std::size_t>(n);
    return BasisFunction{case_.mu, classical_.polys[i], 1.0 / std::sqrt(classical_.norms[i].to_double())};
  }

  /// max |O^T O - (I - c c^T)| for truncation n, with O from exact pairings.
  double decomposition_residual(int n) const {
    const Eigen::MatrixXd O = overlap_exact(n);
    const auto sub = subtractor(n);
    const Eigen::Map<const Eigen::VectorXd> c(sub.coords.data(), n + 1);
    const Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(n + 1, n + 1) - c * c.transpose();
    return (O.transpose() * O - expected).cwiseAbs().maxCoeff();
  }

  /// sum_{k=1}^n w_k(x) w_k(r) over the grid.
  std::vector<double> kernel_profile(int n, double x, const std::vector<double>& grid) const {
    const auto wx = constrained_values(x, n);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double r : grid) {
      const auto wr = constrained_values(r, n);
      double s = 0.0;
      for (std::size_t k = 0; k < wr.size(); ++k) s += wx[k] * wr[k];
      out.push_back(s);
    }
    return out;
  }

  /// sigma_n(r) = sum_m c_m z_m(r).
  double subtractor_value(const SubtractorVector& sub, double r) const {
    const auto z = classical_values(r, sub.N);
    double s = 0.0;
    for (std::size_t m = 0; m < z.size(); ++m) s += sub.coords[m] * z[m];
    return s;
  }

  /// sigma_n(x) sigma_n(r) over the grid.
  std::vector<double> subtractor_profile(int n, double x, const std::vector<double>& grid) const {
    const auto sub = subtractor(n);
    const double sx = subtractor_value(sub, x);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double r : grid) out.push_back(sx * subtractor_value(sub, r));
    return out;
  }

 private:
  static int checked_order(int N) {
    if (N < 0) throw std::invalid_argument("ConstrainedProjector: N must be >= 0");
    return N;
  }

  void check(int n) const {
    if (n < 0 || n > N_)
      throw std::out_of_range("truncation " + std::to_string(n) + " outside [0, " + std::to_string(N_) + "]");
  }

  WeightCase case_;
  int N_;
  ClassicalFamily<Rational> classical_;
  std::vector<double> averages_;
  std::vector<double> alpha_;
  std::vector<double> sqrt_beta_;
  double p0_ = 1.0;
  mutable std::shared_ptr<ConstrainedFamily<Rational>> constrained_;
};

inline std::vector<double> z_averages(const WeightCase& wc, int N) { return ConstrainedProjector(wc, N).averages(); }

inline SubtractorVector subtractor(const WeightCase& wc, int N) { return ConstrainedProjector(wc, N).subtractor(N); }

inline double decomposition_check(const WeightCase& wc, int N) {
  if (N < 1) throw std::invalid_argument("decomposition_check: N must be >= 1");
  return ConstrainedProjector(wc, N).decomposition_residual(N);
}

inline std::vector<double> projector_kernel_profile(const WeightCase& wc, int N, double x,
                                                    const std::vector<double>& grid) {
  if (N < 1) throw std::invalid_argument("projector_kernel_profile: N must be >= 1");
  return ConstrainedProjector(wc, N).kernel_profile(N, x, grid);
}

inline std::vector<double> subtractor_profile(const WeightCase& wc, int N, double x, const std::vector<double>& grid) {
  if (N < 1) throw std::invalid_argument("subtractor_profile: N must be >= 1");
  return ConstrainedProjector(wc, N).subtractor_profile(N, x, grid);
}

/// lo, lo + step, ... up to hi (inclusive within half a step), computed as
/// lo + i * step so the grid carries no accumulated drift.
inline std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("uniform_grid: need step > 0 and hi >= lo");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

}  // namespace conpoly
