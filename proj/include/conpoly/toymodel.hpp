#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "conpoly/constructor.hpp"
#include "conpoly/errors.hpp"
#include "conpoly/measures.hpp"
#include "conpoly/polynomial.hpp"
#include "conpoly/quadrature.hpp"
#include "conpoly/resultant.hpp"

namespace conpoly {

// One-dimensional oscillator H_0 = (-d^2/dr^2 + r^2)/2 filled with Z
// non-interacting fermions, perturbed along modes w_m carrying e^{-r^2}.
//
// Functions are handled in "reduced" form with their Gaussian stripped:
// psi_p = psi~_p e^{-r^2/2}, w_n = w~_n e^{-r^2}, rho = rho~ e^{-r^2}.

struct OscillatorModel {
  int Z = 4;
  int B = 60;

  void validate() const {
    if (Z < 1) throw std::invalid_argument("Z must be >= 1");
    if (B <= Z) throw std::invalid_argument("basis size B must exceed Z");
  }
  /// E_p for p = 0..B-1 (orbital label i = p + 1).
  double energy(int p) const { return p + 0.5; }
};

/// Oscillator orbitals psi_0..psi_{B-1}: monic Hermite polynomials under
/// e^{-r^2}, with exact norms rho_p = sqrt(pi) p! / 2^p.
class OscillatorBasis {
 public:
  explicit OscillatorBasis(int B) : hermite_(classical_family(MomentFunctional::gauss(Rational(1)), check(B) - 1)) {}

  int size() const noexcept { return hermite_.size(); }
  const ClassicalFamily<Rational>& hermite() const noexcept { return hermite_; }

  /// psi~_0(r) .. psi~_{B-1}(r) by the normalized recurrence.
  std::vector<double> reduced_values(double r) const {
    const auto n = static_cast<std::size_t>(size());
    std::vector<double> v(n);
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25);
    for (std::size_t p = 0; p < n; ++p) {
      v[p] = cur;
      const double pp = static_cast<double>(p);
      const double next = std::sqrt(2.0 / (pp + 1.0)) * r * cur - std::sqrt(pp / (pp + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
    return v;
  }

  std::vector<double> values(double r) const {
    auto v = reduced_values(r);
    const double g = std::exp(-0.5 * r * r);
    for (auto& x : v) x *= g;
    return v;
  }

 private:
  static int check(int B) {
    if (B < 1) throw std::invalid_argument("oscillator basis size must be >= 1");
    return B;
  }
  ClassicalFamily<Rational> hermite_;
};

/// Constrained modes w_1..w_N: orthonormal under dr with weight e^{-2r^2},
/// zero average under e^{-r^2}.
class ModeBasis {
 public:
  explicit ModeBasis(int N)
      : family_(constrained_family(MomentFunctional::gauss(Rational(2)), MomentFunctional::gauss(Rational(1)),
                                   check(N))) {
    for (int n = 1; n <= N; ++n) {
      factors_.push_back(1.0 / std::sqrt(family_.norm(n).to_double()));
      polys_d_.push_back(to_double(family_.at(n)));
    }
  }

  int size() const noexcept { return family_.size(); }
  const ConstrainedFamily<Rational>& family() const noexcept { return family_; }
  double norm_factor(int n) const { return factors_.at(static_cast<std::size_t>(n - 1)); }

  double reduced(int n, double r) const {
    const auto i = static_cast<std::size_t>(n - 1);
    return factors_.at(i) * evaluate(polys_d_[i], r);
  }
  double operator()(int n, double r) const { return reduced(n, r) * std::exp(-r * r); }

  /// w~_1(r) .. w~_N(r).
  std::vector<double> reduced_values(double r) const {
    std::vector<double> v;
    v.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) v.push_back(factors_[i] * evaluate(polys_d_[i], r));
    return v;
  }

 private:
  static int check(int N) {
    if (N < 1) throw std::invalid_argument("mode basis needs N >= 1");
    return N;
  }
  ConstrainedFamily<Rational> family_;
  std::vector<double> factors_;
  std::vector<DPolynomial> polys_d_;
};

inline ModeBasis mode_basis(int N) { return ModeBasis(N); }

/// V^{(n)}_{pq} = int psi_p w_n psi_q dr for every mode n, from exact moments
/// of e^{-2r^2}; each entry is rounded once.
class MatrixElements {
 public:
  MatrixElements(const OscillatorBasis& osc, const ModeBasis& modes) {
    const int B = osc.size();
    const int N = modes.size();
    const auto& h = osc.hermite().polys;
    const auto& rho = osc.hermite().norms;
    const auto& fam = modes.family();
    const auto g2 = MomentFunctional::gauss(Rational(2));
    const auto mom = g2.moments_rational(static_cast<unsigned>(2 * (B - 1) + N));

    // L[p][j] = pairing of h_p with r^j.
    const std::size_t width = static_cast<std::size_t>(B + N);
    std::vector<std::vector<Rational>> L(static_cast<std::size_t>(B), std::vector<Rational>(width, Rational(0)));
    for (int p = 0; p < B; ++p) {
      const auto& c = h[static_cast<std::size_t>(p)].coeffs();
      for (std::size_t j = 0; j < width; ++j) {
        if ((static_cast<std::size_t>(p) + j) % 2 != 0) continue;
        Rational acc = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
          if (c[i] != 0) acc += c[i] * mom[i + j];
        L[static_cast<std::size_t>(p)][j] = acc;
      }
    }

    const double unit = std::sqrt(g2.unit().value()) / rho[0].unit().value();
    V_.assign(static_cast<std::size_t>(N), Eigen::MatrixXd::Zero(B, B));
    for (int n = 1; n <= N; ++n) {
      const auto& pn = fam.at(n);
      const Rational& gn = fam.norm(n).value();
      auto& V = V_[static_cast<std::size_t>(n - 1)];
      for (int q = 0; q < B; ++q) {
        const QPolynomial t = h[static_cast<std::size_t>(q)] * pn;
        for (int p = 0; p <= q; ++p) {
          if ((p + q + n) % 2 != 0) continue;
          const auto& row = L[static_cast<std::size_t>(p)];
          Rational R = 0;
          for (std::size_t k = 0; k < t.coeffs().size(); ++k)
            if (t.coeffs()[k] != 0) R += t.coeffs()[k] * row[k];
          if (R == 0) continue;
          const Rational sq = R * R / (rho[static_cast<std::size_t>(p)].value() *
                                       rho[static_cast<std::size_t>(q)].value() * gn);
          V(p, q) = V(q, p) = sgn(R) * std::sqrt(sq.get_d()) * unit;
        }
      }
    }
  }

  int modes() const noexcept { return static_cast<int>(V_.size()); }
  const Eigen::MatrixXd& operator()(int n) const {
    if (n < 1 || n > modes()) throw std::out_of_range("mode index " + std::to_string(n) + " out of range");
    return V_[static_cast<std::size_t>(n - 1)];
  }

 private:
  std::vector<Eigen::MatrixXd> V_;
};

/// Lowest Z eigenvectors (columns, in the oscillator basis) and all levels.
struct GroundState {
  Eigen::MatrixXd orbitals;
  Eigen::VectorXd energies;
  Eigen::MatrixXd density_matrix() const { return orbitals * orbitals.transpose(); }
};

inline GroundState ground_state(const OscillatorModel& model, const Eigen::MatrixXd& V, double lambda,
                                double gap_tolerance = 1e-10) {
  model.validate();
  if (V.rows() != model.B || V.cols() != model.B) throw std::invalid_argument("perturbation matrix size != B");
  Eigen::MatrixXd H = lambda * V;
  for (int p = 0; p < model.B; ++p) H(p, p) += model.energy(p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed to converge");
  const auto& E = es.eigenvalues();
  if (E[model.Z] - E[model.Z - 1] < gap_tolerance)
    throw DegenerateGroundState("levels Z and Z+1 coincide (gap " + std::to_string(E[model.Z] - E[model.Z - 1]) +
                                "); ground density undefined");
  return {es.eigenvectors().leftCols(model.Z), E};
}

/// rho(r) = sum over occupied orbitals of phi_k(r)^2.
class DensitySampler {
 public:
  DensitySampler(std::shared_ptr<const OscillatorBasis> osc, Eigen::MatrixXd orbitals)
      : osc_(std::move(osc)), C_(std::move(orbitals)) {}

  double reduced(double r) const {
    const auto psi = osc_->reduced_values(r);
    const Eigen::Map<const Eigen::VectorXd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
    return (C_.transpose() * v).squaredNorm();
  }
  double operator()(double r) const { return reduced(r) * std::exp(-r * r); }

  const Eigen::MatrixXd& orbitals() const noexcept { return C_; }
  const OscillatorBasis& basis() const noexcept { return *osc_; }

 private:
  std::shared_ptr<const OscillatorBasis> osc_;
  Eigen::MatrixXd C_;
};

/// Delta rho = rho(., lambda) - rho(., 0).
struct DensityVariation {
  DensitySampler perturbed;
  DensitySampler reference;

  double reduced(double r) const { return perturbed.reduced(r) - reference.reduced(r); }
  double operator()(double r) const { return reduced(r) * std::exp(-r * r); }
  Eigen::MatrixXd density_matrix() const {
    return perturbed.orbitals() * perturbed.orbitals().transpose() -
           reference.orbitals() * reference.orbitals().transpose();
  }
};

/// (8r^6 - 12r^4 + 18r^2 + 9) e^{-r^2} / (6 sqrt(pi)): unperturbed Z = 4 density.
inline double reference_density_z4(double r) {
  const double s = r * r;
  return (((8.0 * s - 12.0) * s + 18.0) * s + 9.0) * std::exp(-s) / (6.0 * std::sqrt(std::numbers::pi));
}

namespace detail {

inline std::vector<double> mode_projections(const DensityVariation& drho, const ModeBasis& modes, int order) {
  const auto rule = gauss_hermite(order, 2.0);
  std::vector<double> out(static_cast<std::size_t>(modes.size()), 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    const double f = rule.weights[i] * drho.reduced(r);
    const auto w = modes.reduced_values(r);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += f * w[n];
  }
  return out;
}

}  // namespace detail

/// Delta rho_n = int w_n Delta rho dr by Gauss-Hermite quadrature in the
/// weight e^{-2r^2}, which is exact for these integrands once the order
/// reaches B + N/2; a second, higher order guards the result.
inline std::vector<double> density_coordinates(const DensityVariation& drho, const ModeBasis& modes, int order = 0,
                                               double tolerance = 1e-9) {
  if (order <= 0) order = drho.perturbed.basis().size() + modes.size() / 2 + 16;
  const int check_order = std::min(400, order + 24);
  const auto a = detail::mode_projections(drho, modes, order);
  const auto b = detail::mode_projections(drho, modes, check_order);
  for (std::size_t n = 0; n < a.size(); ++n)
    if (std::abs(a[n] - b[n]) > tolerance)
      throw QuadratureDivergence("coordinate " + std::to_string(n + 1) + " differs between orders " +
                                 std::to_string(order) + " and " + std::to_string(check_order));
  return a;
}

/// Delta rho_n = sum_pq dD_pq V^{(n)}_pq, from the density matrices directly.
inline std::vector<double> projected_coordinates(const DensityVariation& drho, const MatrixElements& V) {
  const Eigen::MatrixXd dD = drho.density_matrix();
  std::vector<double> out;
  for (int n = 1; n <= V.modes(); ++n) out.push_back(dD.cwiseProduct(V(n)).sum());
  return out;
}

/// int Delta rho dr by Gauss-Hermite quadrature in e^{-r^2}.
inline double mass_variation(const DensityVariation& drho, int order = 0) {
  if (order <= 0) order = drho.perturbed.basis().size() + 16;
  return gauss_hermite(order, 1.0).integrate([&](double r) { return drho.reduced(r); });
}

/// F_mn = 2 sum_{i <= Z < I} D_{m,iI} D_{n,iI} / (i - I), with D_{n,iI} the
/// mode-n matrix element between hole i and particle I.
inline Eigen::MatrixXd flexibility_matrix(const OscillatorModel& model, const MatrixElements& V) {
  model.validate();
  const int N = V.modes();
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(N, N);
  for (int m = 1; m <= N; ++m)
    for (int n = m; n <= N; ++n) {
      double s = 0.0;
      const auto& Vm = V(m);
      const auto& Vn = V(n);
      for (int i = 0; i < model.Z; ++i)
        for (int I = model.Z; I < model.B; ++I) s += Vm(i, I) * Vn(i, I) / static_cast<double>(i - I);
      F(m - 1, n - 1) = F(n - 1, m - 1) = 2.0 * s;
    }
  return F;
}

/// Coordinates Delta rho_n(lambda; m) over a lambda grid.
struct ToyTrajectory {
  int m = 0;
  int N = 0;
  std::vector<double> lambdas;
  std::vector<std::vector<double>> coords;  // coords[k][n-1]

  /// Presentation factor 2^{|n-m|/2} used when plotting coordinate n.
  double scale(int n) const { return std::pow(2.0, std::abs(n - m) / 2.0); }

  /// Rows of the selected coordinates (1-based), e.g. {4, 6, 8}.
  std::vector<std::vector<double>> extract(const std::vector<int>& which) const {
    std::vector<std::vector<double>> out;
    for (const auto& row : coords) {
      std::vector<double> sel;
      for (int n : which) {
        if (n < 1 || n > N) throw std::out_of_range("coordinate " + std::to_string(n) + " not in trajectory");
        sel.push_back(row[static_cast<std::size_t>(n - 1)]);
      }
      out.push_back(std::move(sel));
    }
    return out;
  }

  std::vector<double> at(double lambda, double tol = 1e-9) const {
    for (std::size_t k = 0; k < lambdas.size(); ++k)
      if (std::abs(lambdas[k] - lambda) <= tol) return coords[k];
    throw std::out_of_range("lambda " + std::to_string(lambda) + " not on the trajectory grid");
  }
};

/// Oscillator basis, modes and matrix elements built once and shared.
class ToyModel {
 public:
  ToyModel(OscillatorModel model, int N)
      : model_((model.validate(), model)),
        osc_(std::make_shared<const OscillatorBasis>(model.B)),
        modes_(N),
        V_(*osc_, modes_) {}

  const OscillatorModel& model() const noexcept { return model_; }
  const OscillatorBasis& oscillator() const noexcept { return *osc_; }
  const ModeBasis& modes() const noexcept { return modes_; }
  const MatrixElements& matrix_elements() const noexcept { return V_; }

  GroundState ground_state(int m, double lambda) const { return conpoly::ground_state(model_, V_(m), lambda); }

  DensitySampler density(int m, double lambda) const { return {osc_, ground_state(m, lambda).orbitals}; }

  DensityVariation variation(int m, double lambda) const { return {density(m, lambda), density(m, 0.0)}; }

  std::vector<double> coordinates(int m, double lambda) const {
    return density_coordinates(variation(m, lambda), modes_);
  }

  Eigen::MatrixXd flexibility() const { return flexibility_matrix(model_, V_); }

  ToyTrajectory trajectory(int m, const std::vector<double>& lambdas) const {
    if (std::none_of(lambdas.begin(), lambdas.end(), [](double l) { return std::abs(l) < 1e-12; }))
      throw std::invalid_argument("trajectory grid must contain lambda = 0");
    const DensitySampler ref = density(m, 0.0);
    ToyTrajectory t{m, modes_.size(), lambdas, {}};
    for (double l : lambdas) t.coords.push_back(density_coordinates({density(m, l), ref}, modes_));
    return t;
  }

 private:
  OscillatorModel model_;
  std::shared_ptr<const OscillatorBasis> osc_;
  ModeBasis modes_;
  MatrixElements V_;
};

inline DensitySampler perturbed_ground_density(const OscillatorModel& model, int m, double lambda) {
  return ToyModel(model, m).density(m, lambda);
}

inline ToyTrajectory trajectory(const OscillatorModel& model, int m, const std::vector<double>& lambdas, int N) {
  return ToyModel(model, std::max(N, m)).trajectory(m, lambdas);
}

// Positivity of the truncated density
//   P(r) = 8r^6 - 12r^4 + 18r^2 + 9 + dR2 (2r^2 - 1) + dR4 (8r^4 - 14r^2 + 1).

struct PositivityQuery {
  double dR2 = 0.0;
  double dR4 = 0.0;

  /// P as a polynomial in r.
  DPolynomial polynomial() const {
    return DPolynomial{9.0 - dR2 + dR4, 0.0, 18.0 + 2.0 * dR2 - 14.0 * dR4, 0.0, 8.0 * dR4 - 12.0, 0.0, 8.0};
  }
  /// P as a cubic in s = r^2.
  DPolynomial in_s() const { return DPolynomial{9.0 - dR2 + dR4, 18.0 + 2.0 * dR2 - 14.0 * dR4, 8.0 * dR4 - 12.0, 8.0}; }

  struct Minimum {
    double value;
    double r;  // a minimizer, r >= 0
  };

  /// min over real r, from the endpoint s = 0 and the critical points of the
  /// cubic in s (quadratic formula, then one Newton polish).
  Minimum minimum() const {
    const DPolynomial q = in_s();
    const DPolynomial dq = derivative(q);
    Minimum best{q.coeff(0), 0.0};
    const double a = dq.coeff(2), b = dq.coeff(1), c = dq.coeff(0);
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double t = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      for (double s : {t / a, t != 0.0 ? c / t : 0.0}) {
        if (!(s > 0.0) || !std::isfinite(s)) continue;
        const double d2 = 2.0 * a * s + b;
        if (d2 != 0.0) s -= evaluate(dq, s) / d2;
        if (!(s > 0.0)) continue;
        const double v = evaluate(q, s);
        if (v < best.value) best = {v, std::sqrt(s)};
      }
    }
    return best;
  }

  double min_value() const { return minimum().value; }
};

struct BorderPoint {
  double theta = 0.0;
  double dR2 = 0.0;
  double dR4 = 0.0;
  double min_residual = 0.0;
  double argmin_r = 0.0;
  bool bounded = true;
  bool single_crossing = true;
  double resultant_ratio = 0.0;  // normalized resultant(P, P') relative to the origin
};

/// Scans `directions` rays from the origin and bisects for the radius where
/// min_r P first reaches zero.
inline std::vector<BorderPoint> positivity_border(int directions, double tolerance = 1e-8, double bound = 1e6) {
  if (directions < 4) throw std::invalid_argument("positivity_border: need at least 4 directions");
  const PositivityQuery origin{};
  const DPolynomial p0 = origin.polynomial();
  const double res0 = std::abs(normalized_resultant(p0, derivative(p0)));
  std::vector<BorderPoint> out;
  for (int k = 0; k < directions; ++k) {
    BorderPoint bp;
    bp.theta = 2.0 * std::numbers::pi * k / directions;
    const double cx = std::cos(bp.theta), cy = std::sin(bp.theta);
    auto f = [&](double t) { return PositivityQuery{t * cx, t * cy}.min_value(); };
    double lo = 0.0, hi = 1.0;
    while (f(hi) >= 0.0 && hi < bound) {
      lo = hi;
      hi *= 2.0;
    }
    if (f(hi) >= 0.0) {
      bp.bounded = false;
      bp.dR2 = hi * cx;
      bp.dR4 = hi * cy;
      out.push_back(bp);
      continue;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) >= 0.0 ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    const PositivityQuery q{t * cx, t * cy};
    const auto mn = q.minimum();
    bp.dR2 = q.dR2;
    bp.dR4 = q.dR4;
    bp.min_residual = mn.value;
    bp.argmin_r = mn.r;
    if (std::abs(mn.value) > tolerance)
      throw Error("border bisection did not reach tolerance on ray " + std::to_string(k));
    for (int j = 1; j <= 64; ++j) {
      const double s = 2.0 * t * j / 64.0;
      const double v = f(s);
      if ((s < 0.999 * t && v < 0.0) || (s > 1.001 * t && v > 0.0)) bp.single_crossing = false;
    }
    const DPolynomial p = q.polynomial();
    bp.resultant_ratio = std::abs(normalized_resultant(p, derivative(p))) / res0;
    out.push_back(bp);
  }
  return out;
}

/// Worst min_r P over midpoints of all pairs of border points; a value not
/// below -tolerance is consistent with a convex domain.
inline double border_midpoint_minimum(const std::vector<BorderPoint>& border) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < border.size(); ++i)
    for (std::size_t j = i + 1; j < border.size(); ++j)
      worst = std::min(worst, PositivityQuery{0.5 * (border[i].dR2 + border[j].dR2),
                                              0.5 * (border[i].dR4 + border[j].dR4)}
                                  .min_value());
  return worst;
}

/// Border points whose minimum sits at r = 0, where the border follows the
/// line P(0) = 9 - dR2 + dR4 = 0; reports their count and the largest
/// distance from that line.
struct LineSegmentReport {
  int points = 0;
  double max_deviation = 0.0;
  double dR2_min = 0.0, dR2_max = 0.0;
};

inline LineSegmentReport border_line_segment(const std::vector<BorderPoint>& border, double r_tol = 1e-6) {
  LineSegmentReport rep;
  bool first = true;
  for (const auto& b : border) {
    if (!b.bounded || b.argmin_r > r_tol) continue;
    ++rep.points;
    rep.max_deviation = std::max(rep.max_deviation, std::abs(9.0 - b.dR2 + b.dR4) / std::sqrt(2.0));
    rep.dR2_min = first ? b.dR2 : std::min(rep.dR2_min, b.dR2);
    rep.dR2_max = first ? b.dR2 : std::max(rep.dR2_max, b.dR2);
    first = false;
  }
  return rep;
}

// Centrifuge reference density rho_c e^{K r^2} on the unit disc.

/// d rho / dK = (c0 + c2 r^2) e^{K r^2}.
struct CentrifugeMode {
  double K;
  double c0;
  double c2;

  double operator()(double r) const { return (c0 + c2 * r * r) * std::exp(K * r * r); }
  DPolynomial polynomial_part() const { return DPolynomial{c0, 0.0, c2}; }

  /// int_0^1 r (d rho / dK) dr by Gauss-Legendre at `order`, cross-checked
  /// at 2 * order.
  double zero_average_residual(int order = 64) const {
    auto integral = [&](int q) {
      const auto rule = gauss_legendre(q, 0.0, 1.0);
      double s = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = rule.weights[i] * rule.nodes[i] * (*this)(rule.nodes[i]);
        s += v;
        scale += std::abs(v);
      }
      return std::pair{s, scale};
    };
    const auto [a, scale] = integral(order);
    const auto [b, unused] = integral(2 * order);
    (void)unused;
    if (std::abs(a - b) > 1e-12 * std::max(scale, 1.0))
      throw QuadratureDivergence("centrifuge residual unstable between orders " + std::to_string(order) + " and " +
                                 std::to_string(2 * order));
    return a;
  }
};

inline CentrifugeMode centrifuge_mode(double K) {
  if (K == 0.0) throw std::domain_error("centrifuge_mode: K = 0 is a removable singularity; use the K -> 0 limit");
  const double em1 = std::expm1(K);
  const double eK = em1 + 1.0;
  return {K, 2.0 * (eK - K * eK - 1.0) / (em1 * em1), 2.0 * K / em1};
}

/// Constrained family for the centrifuge: orthogonal under r e^{2Kr^2},
/// zero average under r e^{Kr^2}, both on [0, 1].
inline ConstrainedFamily<double> centrifuge_family(double K, int N, int order = 0) {
  if (order <= 0) order = default_quadrature_order();
  return constrained_family<double>(numeric_radial_gaussian(2, 2.0 * K, 0.0, 1.0, order),
                                    numeric_radial_gaussian(2, K, 0.0, 1.0, order), N);
}

}  // namespace conpoly
