#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace conpoly {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Gauss-Legendre rule on [lo, hi] by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int order, double lo = -1.0, double hi = 1.0) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  const auto n = static_cast<std::size_t>(order);
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

/// Gauss-Hermite rule for the weight exp(-a x^2) on the real line.
///
/// Golub-Welsch eigenvalues seed Newton on the orthonormal recurrence; the
/// weights come from the Christoffel function 1 / sum_k p_k(x)^2, which keeps
/// them accurate in relative terms even far out in the tails.
inline QuadratureRule gauss_hermite(int order, double a = 1.0) {
  if (order < 1 || order > 400) throw std::invalid_argument("gauss_hermite: order must be in [1, 400]");
  if (!(a > 0.0)) throw std::invalid_argument("gauss_hermite: a must be positive");
  const auto n = static_cast<std::size_t>(order);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 1));
  for (std::size_t k = 1; k < n; ++k) sub[static_cast<Eigen::Index>(k - 1)] = std::sqrt(0.5 * static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(diag, sub.head(static_cast<Eigen::Index>(n - 1)), Eigen::EigenvaluesOnly);

  const double p00 = std::pow(std::numbers::pi, -0.25);
  auto orthonormal = [&](double x, double& pn, double& pnm1, double& sum_sq) {
    double prev = 0.0;
    double cur = p00;
    sum_sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sum_sq += cur * cur;
      const double kk = static_cast<double>(k);
      const double next = (x * cur - std::sqrt(0.5 * kk) * prev) / std::sqrt(0.5 * (kk + 1.0));
      prev = cur;
      cur = next;
    }
    pn = cur;
    pnm1 = prev;
  };

  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double scale = 1.0 / std::sqrt(a);
  for (std::size_t i = 0; i < n; ++i) {
    double x = tri.eigenvalues()[static_cast<Eigen::Index>(i)];
    double pn = 0.0, pnm1 = 0.0, sum_sq = 0.0;
    for (int it = 0; it < 20; ++it) {
      orthonormal(x, pn, pnm1, sum_sq);
      const double dx = pn / (std::sqrt(2.0 * static_cast<double>(n)) * pnm1);
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    orthonormal(x, pn, pnm1, sum_sq);
    rule.nodes[i] = x * scale;
    rule.weights[i] = scale / sum_sq;
  }
  return rule;
}

}  // namespace conpoly
