#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "conpoly/projector.hpp"
#include "conpoly/quadrature.hpp"

using namespace conpoly;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Laguerre averages are all 2", "[projector]") {
  const auto avg = z_averages(laguerre_case(), 150);
  for (std::size_t m = 0; m < avg.size(); ++m) {
    INFO("m=" << m);
    CHECK_THAT(avg[m], WithinAbs(2.0, 1e-12));
  }
}

TEST_CASE("Hermite averages follow the double-factorial law", "[projector]") {
  const auto avg = z_averages(hermite_case(), 21);
  for (int p = 0; p <= 10; ++p) {
    const double expected = std::sqrt(M_PI) * std::pow(2.0, 1 - p) * double_factorial(2 * p - 1).get_d() /
                            factorial(static_cast<unsigned long>(p)).get_d();
    INFO("p=" << p);
    CHECK_THAT(avg[static_cast<std::size_t>(2 * p)] * avg[static_cast<std::size_t>(2 * p)],
               WithinRel(expected, 1e-10));
    CHECK(avg[static_cast<std::size_t>(2 * p + 1)] == 0.0);
  }
  CHECK_THAT(avg[0] * avg[0], WithinRel(2.0 * std::sqrt(M_PI), 1e-14));
  CHECK_THAT(avg[2] * avg[2], WithinRel(std::sqrt(M_PI), 1e-14));
}

TEST_CASE("subtractor vectors", "[projector]") {
  const auto lag = subtractor(laguerre_case(), 3);
  REQUIRE(lag.coords.size() == 4);
  for (double c : lag.coords) CHECK_THAT(c, WithinAbs(0.5, 1e-15));
  const auto h1 = subtractor(hermite_case(), 1);
  CHECK_THAT(h1.coords[0], WithinAbs(1.0, 1e-15));
  CHECK(h1.coords[1] == 0.0);
  const auto h2 = subtractor(hermite_case(), 2);
  CHECK_THAT(h2.coords[0], WithinAbs(std::sqrt(2.0 / 3.0), 1e-15));
  CHECK(h2.coords[1] == 0.0);
  CHECK_THAT(h2.coords[2], WithinAbs(std::sqrt(1.0 / 3.0), 1e-15));
  for (int N : {5, 17, 40}) {
    double s = 0.0;
    for (double c : subtractor(hermite_case(), N).coords) s += c * c;
    CHECK_THAT(s, WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("decomposition identity holds for N up to 30", "[projector]") {
  CHECK(decomposition_check(laguerre_case(), 1) < 1e-14);
  CHECK(decomposition_check(laguerre_case(), 5) < 1e-10);
  CHECK(decomposition_check(hermite_case(), 6) < 1e-10);
  for (const auto& wc : {laguerre_case(), hermite_case(), hermite_case(Rational(1))}) {
    const ConstrainedProjector P(wc, 30);
    for (int n = 1; n <= 30; ++n) {
      INFO(wc.name << " N=" << n);
      CHECK(P.decomposition_residual(n) < 1e-10);
    }
  }
  CHECK_THROWS_AS(decomposition_check(laguerre_case(), 0), std::invalid_argument);
}

TEST_CASE("closed-form coordinates of w_n match exact pairings", "[projector]") {
  for (const auto& wc : {laguerre_case(), hermite_case()}) {
    const ConstrainedProjector P(wc, 30);
    const auto exact = P.overlap_exact(30);
    const auto closed = P.overlap_closed_form(30);
    CHECK((exact - closed).cwiseAbs().maxCoeff() < 1e-12);
    // rows are orthonormal: {w_n} is an orthonormal set
    CHECK((closed * closed.transpose() - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-12);
    // zero average: sum_m O[n][m] <z_m> = 0
    const Eigen::Map<const Eigen::VectorXd> avg(P.averages().data(), 31);
    CHECK((closed * avg).cwiseAbs().maxCoeff() < 1e-12);
    // positive leading coefficients
    for (int n = 1; n <= 30; ++n) CHECK(closed(n - 1, n) > 0.0);
  }
}

TEST_CASE("projector algebra in coordinates", "[projector][property]") {
  std::mt19937_64 rng(2718);
  std::normal_distribution<double> g;
  for (const auto& wc : {laguerre_case(), hermite_case()}) {
    const ConstrainedProjector P(wc, 20);
    for (int N : {1, 4, 12, 20}) {
      const Eigen::MatrixXd O = P.overlap_closed_form(N);
      const Eigen::MatrixXd Pm = O.transpose() * O;
      CHECK((Pm * Pm - Pm).cwiseAbs().maxCoeff() < 1e-10);
      const auto sub = P.subtractor(N);
      const Eigen::Map<const Eigen::VectorXd> c(sub.coords.data(), N + 1);
      const Eigen::MatrixXd QmP = Eigen::MatrixXd::Identity(N + 1, N + 1) - Pm;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(QmP);
      // rank one, eigenvalue 1 along c
      for (int k = 0; k < N; ++k) CHECK(std::abs(es.eigenvalues()[k]) < 1e-10);
      CHECK_THAT(es.eigenvalues()[N], WithinAbs(1.0, 1e-10));
      CHECK(std::abs(std::abs(es.eigenvectors().col(N).dot(c)) - 1.0) < 1e-10);
      for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd tau(N + 1);
        for (int i = 0; i <= N; ++i) tau[i] = g(rng);
        const Eigen::VectorXd projected = tau - c * c.dot(tau);
        CHECK(std::abs(projected.dot(c)) < 1e-12 * tau.norm());
      }
    }
  }
}

TEST_CASE("recurrence values match exact polynomial basis functions", "[projector]") {
  for (const auto& wc : {laguerre_case(), hermite_case()}) {
    const ConstrainedProjector P(wc, 15);
    for (double r : {0.0, 0.3, 1.7, 4.0, 9.5}) {
      const double x = wc.support_lo < 0 ? r - 2.0 : r;
      const auto z = P.classical_values(x, 15);
      const auto w = P.constrained_values(x, 15);
      for (int n = 0; n <= 15; ++n) {
        const double ref = P.classical_function(n)(x);
        CHECK_THAT(z[static_cast<std::size_t>(n)], WithinAbs(ref, 1e-11 * std::max(1.0, std::abs(ref))));
      }
      for (int n = 1; n <= 15; ++n) {
        const double ref = P.constrained_function(n)(x);
        CHECK_THAT(w[static_cast<std::size_t>(n - 1)], WithinAbs(ref, 1e-11 * std::max(1.0, std::abs(ref))));
      }
    }
  }
}

TEST_CASE("basis functions are orthonormal under independent quadrature", "[projector]") {
  const ConstrainedProjector H(hermite_case(), 30);
  const auto rule = gauss_hermite(80, 1.0);  // weight e^{-r^2} = mu^2
  Eigen::MatrixXd Gz = Eigen::MatrixXd::Zero(31, 31);
  Eigen::MatrixXd Gw = Eigen::MatrixXd::Zero(30, 30);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    const double unweight = std::exp(r * r);  // strip mu^2 back out of the products
    const auto z = H.classical_values(r, 30);
    const auto w = H.constrained_values(r, 30);
    for (int a = 0; a <= 30; ++a)
      for (int b = 0; b <= 30; ++b) Gz(a, b) += rule.weights[i] * unweight * z[a] * z[b];
    for (int a = 0; a < 30; ++a)
      for (int b = 0; b < 30; ++b) Gw(a, b) += rule.weights[i] * unweight * w[a] * w[b];
  }
  CHECK((Gz - Eigen::MatrixXd::Identity(31, 31)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((Gw - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-12);

  const ConstrainedProjector L(laguerre_case(), 30);
  const auto gl = gauss_legendre(600, 0.0, 300.0);
  Eigen::MatrixXd Lw = Eigen::MatrixXd::Zero(30, 30);
  double avg_max = 0.0;
  std::vector<double> avg(30, 0.0);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const auto w = L.constrained_values(gl.nodes[i], 30);
    for (int a = 0; a < 30; ++a) {
      avg[a] += gl.weights[i] * w[a];  // <w_n> = int mu G_n dr
      for (int b = 0; b < 30; ++b) Lw(a, b) += gl.weights[i] * w[a] * w[b];
    }
  }
  for (double a : avg) avg_max = std::max(avg_max, std::abs(a));
  CHECK((Lw - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(avg_max < 1e-10);
}

TEST_CASE("kernel profiles", "[projector]") {
  const auto grid = uniform_grid(0.0, 20.0, 0.25);
  const ConstrainedProjector P(laguerre_case(), 150);
  const auto k1 = P.kernel_profile(1, 3.0, grid);
  const auto w1 = P.constrained_function(1);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK_THAT(k1[i], WithinAbs(w1(3.0) * w1(grid[i]), 1e-15));

  // P_N kernel = Q_N kernel - sigma sigma, evaluated at N = 150
  const auto kN = P.kernel_profile(150, 2.0, grid);
  const auto sN = P.subtractor_profile(150, 2.0, grid);
  const auto zx = P.classical_values(2.0, 150);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto zr = P.classical_values(grid[i], 150);
    double q = 0.0;
    for (std::size_t m = 0; m < zr.size(); ++m) q += zx[m] * zr[m];
    CHECK_THAT(kN[i], WithinAbs(q - sN[i], 1e-12));
  }
}

TEST_CASE("kernel peaks sharpen with N, faster near the origin", "[projector][figure]") {
  const ConstrainedProjector P(laguerre_case(), 150);
  double prev2 = 0.0, prev10 = 0.0;
  for (int N : {50, 100, 150}) {
    const double at2 = P.kernel_profile(N, 2.0, {2.0})[0];
    const double at10 = P.kernel_profile(N, 10.0, {10.0})[0];
    CHECK(at2 > prev2);
    CHECK(at10 > prev10);
    prev2 = at2;
    prev10 = at10;
  }
  CHECK(prev2 > prev10);
}

TEST_CASE("subtractor profile on a singleton grid is a square", "[projector]") {
  for (const auto& wc : {laguerre_case(), hermite_case(), hermite_case(Rational(1))})
    for (int N : {1, 7, 30}) {
      const auto v = subtractor_profile(wc, N, 1.3, {1.3});
      CHECK(v[0] >= 0.0);
    }
  CHECK_THROWS_AS(projector_kernel_profile(laguerre_case(), 0, 1.0, {1.0}), std::invalid_argument);
}

TEST_CASE("uniform grid endpoints are exact", "[projector]") {
  const auto g = uniform_grid(0.0, 40.0, 0.05);
  CHECK(g.size() == 801);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 40.0);
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0.0), std::invalid_argument);
}
