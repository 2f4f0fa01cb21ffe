#include <catch_amalgamated.hpp>

#include "conpoly/families.hpp"
#include "reference_tables.hpp"

using namespace conpoly;

TEST_CASE("recursions reproduce the published tables", "[families][table]") {
  for (int d = 1; d <= 3; ++d) {
    const auto lag = laguerre_recursion_family(d, 4);
    const auto leg = legendre_recursion_family(d, 4);
    for (int n = 1; n <= 4; ++n) {
      INFO("d=" << d << " n=" << n);
      CHECK(lag.at(n) == reference::poly(reference::laguerre[d - 1][n - 1]));
      CHECK(leg.at(n) == reference::poly(reference::legendre[d - 1][n - 1]));
    }
  }
}

TEST_CASE("Laguerre-type identity suite is exact to n = 20", "[families]") {
  for (int d = 1; d <= 3; ++d) {
    const auto rep = verify_laguerre(d, 20);
    INFO("d=" << d);
    CHECK(rep.all_zero());
    CHECK(rep.failures().empty());
    CHECK(rep.norms.size() == 20);
  }
}

TEST_CASE("Legendre-type identity suite is exact to n = 20", "[families]") {
  for (int d = 1; d <= 3; ++d) {
    const auto rep = verify_legendre(d, 20);
    INFO("d=" << d);
    CHECK(rep.all_zero());
    CHECK(rep.failures().empty());
  }
}

TEST_CASE("norm formulas", "[families]") {
  CHECK(laguerre_norm(4, 3).value() == 30240);
  CHECK(laguerre_norm(1, 1).value() == 2);
  CHECK(legendre_norm(1, 1) == make_rational(1, 3));
  CHECK(legendre_norm(1, 2) == make_rational(1, 4));
  CHECK(legendre_norm(2, 3) == make_rational(1, 7));
  const auto leg = legendre_recursion_family(2, 3);
  CHECK(leg.norm(2).value() == make_rational(1, 6));
  CHECK_THROWS_AS(laguerre_norm(0, 1), std::invalid_argument);
}

TEST_CASE("corrupted members are caught by the identity suite", "[families]") {
  auto lag = laguerre_recursion_family(2, 6);
  lag.polys[3] += QPolynomial::constant(Rational(1));
  const auto rep = verify_laguerre_family(2, lag);
  CHECK_FALSE(rep.all_zero());
  CHECK_FALSE(rep.failures().empty());

  auto leg = legendre_recursion_family(3, 5);
  leg.polys[1] *= Rational(2);
  CHECK_FALSE(verify_legendre_family(3, leg).all_zero());
}

TEST_CASE("d = 1 Legendre-type members are shifted Legendre polynomials", "[families]") {
  // P_n(2r - 1) by Bonnet's recursion; every shifted Legendre polynomial of
  // positive order integrates to zero on [0, 1], so the constraint is free.
  const auto fam = legendre_recursion_family(1, 12);
  const QPolynomial x{-1, 2};
  QPolynomial prev = QPolynomial::constant(1);
  QPolynomial cur = x;
  for (int n = 1; n <= 12; ++n) {
    CHECK(fam.at(n) == cur);
    QPolynomial next = (x * cur * Rational(2 * n + 1) - prev * Rational(n)) / Rational(n + 1);
    prev = cur;
    cur = next;
  }
}

TEST_CASE("conventions convert both ways", "[families]") {
  const auto f = MomentFunctional::legendre(2);
  const auto monic = constrained_family(f, f, 4);
  CHECK(monic.at(2) == QPolynomial{make_rational(3, 10), make_rational(-6, 5), 1});
  const auto endpoint = to_paper_convention(monic, Convention::EndpointOne);
  CHECK(endpoint.at(2) == QPolynomial{3, -12, 10});
  const auto back = to_paper_convention(endpoint, Convention::Monic);
  for (int n = 1; n <= 4; ++n) {
    CHECK(back.at(n) == monic.at(n));
    CHECK(back.norm(n) == monic.norm(n));
    CHECK(endpoint.norm(n).value() == legendre_norm(n, 2));
  }
}

TEST_CASE("closed-form Legendre-type recursion exists only for d <= 3", "[families]") {
  CHECK_THROWS_AS(legendre_recursion_family(4, 3), Unsupported);
  const auto fam = legendre_family(4, 5);
  const auto f = MomentFunctional::legendre(4);
  CHECK(fam.provenance == Provenance::GramSchmidt);
  for (int n = 1; n <= 5; ++n) {
    CHECK(evaluate_exact(fam.at(n), Rational(1)) == 1);
    CHECK(apply(f, fam.at(n)).is_zero());
  }
}
