#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "conpoly/constructor.hpp"
#include "conpoly/families.hpp"
#include "reference_tables.hpp"

using namespace conpoly;
using Catch::Matchers::WithinAbs;

TEST_CASE("trivial seeds subtract the constraint average", "[constructor]") {
  CHECK(constrained_seed(2, MomentFunctional::laguerre_constraint(3)) == QPolynomial{-48, 0, 1});
  CHECK(constrained_seed(1, MomentFunctional::laguerre_constraint(1)) == QPolynomial{-2, 1});
  CHECK(constrained_seed(2, MomentFunctional::gauss(Rational(1))) == QPolynomial{make_rational(-1, 2), 0, 1});
  CHECK(constrained_seed(3, MomentFunctional::gauss(Rational(1))) == QPolynomial{0, 0, 0, 1});
  CHECK_THROWS_AS(constrained_seed(0, MomentFunctional::legendre(1)), std::invalid_argument);
}

TEST_CASE("gram-schmidt reproduces the published Laguerre-type table", "[constructor][table]") {
  for (int d = 1; d <= 3; ++d) {
    const auto fam =
        constrained_family(MomentFunctional::laguerre_ortho(d), MomentFunctional::laguerre_constraint(d), 4);
    for (int n = 1; n <= 4; ++n) {
      INFO("d=" << d << " n=" << n);
      CHECK(fam.at(n) == reference::poly(reference::laguerre[d - 1][n - 1]));
    }
  }
  const auto f1 = constrained_family(MomentFunctional::laguerre_ortho(1), MomentFunctional::laguerre_constraint(1), 2);
  CHECK(f1.at(1) + f1.at(2) == QPolynomial{0, -4, 1});
}

TEST_CASE("gram-schmidt reproduces the published Legendre-type table", "[constructor][table]") {
  for (int d = 1; d <= 3; ++d) {
    const auto f = MomentFunctional::legendre(d);
    const auto fam = to_paper_convention(constrained_family(f, f, 4), Convention::EndpointOne);
    for (int n = 1; n <= 4; ++n) {
      INFO("d=" << d << " n=" << n);
      CHECK(fam.at(n) == reference::poly(reference::legendre[d - 1][n - 1]));
    }
  }
}

TEST_CASE("constrained members are orthogonal with zero average", "[constructor][property]") {
  const std::vector<std::pair<MomentFunctional, MomentFunctional>> pairs{
      {MomentFunctional::laguerre_ortho(1), MomentFunctional::laguerre_constraint(1)},
      {MomentFunctional::laguerre_ortho(4), MomentFunctional::laguerre_constraint(4)},
      {MomentFunctional::legendre(5), MomentFunctional::legendre(5)},
      {MomentFunctional::gauss(Rational(2)), MomentFunctional::gauss(Rational(1))},
      {MomentFunctional::gauss(Rational(1)), MomentFunctional::gauss(make_rational(1, 2))}};
  for (const auto& [o, c] : pairs) {
    const auto fam = constrained_family(o, c, 10);
    for (int n = 1; n <= 10; ++n) {
      INFO(o.descriptor() << " n=" << n);
      CHECK(fam.at(n).is_monic());
      CHECK(fam.at(n).degree() == n);
      CHECK(apply(c, fam.at(n)).is_zero());
      CHECK(fam.norm(n).sign() > 0);
      for (int m = 1; m < n; ++m) CHECK(pair(o, fam.at(n), fam.at(m)).is_zero());
    }
  }
}

TEST_CASE("the monic constrained family does not depend on the seeds", "[constructor][property]") {
  std::mt19937_64 rng(123456789);
  std::uniform_int_distribution<long> num(-7, 7);
  std::uniform_int_distribution<long> den(1, 5);
  const auto o = MomentFunctional::laguerre_ortho(2);
  const auto c = MomentFunctional::laguerre_constraint(2);
  const int N = 8;
  const auto reference_family = constrained_family(o, c, N);
  for (int trial = 0; trial < 10; ++trial) {
    // Seeds: a nonzero multiple of the trivial seed plus any combination of
    // lower trivial seeds; all satisfy the constraint.
    std::vector<QPolynomial> seeds;
    for (int n = 1; n <= N; ++n) {
      Rational lead = make_rational(num(rng), den(rng));
      if (lead == 0) lead = 1;
      QPolynomial s = constrained_seed(n, c) * lead;
      for (int k = 1; k < n; ++k) s += constrained_seed(k, c) * make_rational(num(rng), den(rng));
      seeds.push_back(s);
    }
    const auto fam = constrained_family_from_seeds(o, c, seeds);
    for (int n = 1; n <= N; ++n) CHECK(fam.at(n) == reference_family.at(n));
  }
}

TEST_CASE("closed-form and Stieltjes recurrences agree exactly", "[constructor]") {
  for (const auto& f : {MomentFunctional::laguerre_ortho(1), MomentFunctional::laguerre_ortho(3),
                        MomentFunctional::laguerre_constraint(2), MomentFunctional::legendre(1),
                        MomentFunctional::legendre(2), MomentFunctional::legendre(5),
                        MomentFunctional::gauss(make_rational(1, 2)), MomentFunctional::gauss(Rational(2))}) {
    const auto closed = classical_recurrence(f, 12);
    const auto stieltjes = stieltjes_recurrence(f, 12);
    INFO(f.descriptor());
    CHECK(closed.first == stieltjes.first);
    CHECK(closed.second == stieltjes.second);
  }
  const auto fam = classical_family(MomentFunctional::legendre(2), 2);
  CHECK(fam.polys[1] == QPolynomial{make_rational(-2, 3), 1});
  CHECK(fam.polys[2] == QPolynomial{make_rational(3, 10), make_rational(-6, 5), 1});
}

TEST_CASE("classical families are orthogonal with norms from the recurrence", "[constructor]") {
  const auto f = MomentFunctional::gauss(Rational(1));
  const auto fam = classical_family(f, 12);
  for (int n = 0; n <= 12; ++n) {
    CHECK(fam.polys[static_cast<std::size_t>(n)].is_monic());
    CHECK(pair(f, fam.polys[static_cast<std::size_t>(n)], fam.polys[static_cast<std::size_t>(n)]) ==
          fam.norms[static_cast<std::size_t>(n)]);
    for (int m = 0; m < n; ++m)
      CHECK(pair(f, fam.polys[static_cast<std::size_t>(n)], fam.polys[static_cast<std::size_t>(m)]).is_zero());
  }
  // monic Hermite norms sqrt(pi) n! / 2^n
  CHECK(fam.norms[4].value() == make_rational(24, 16));
}

TEST_CASE("floating-point construction tracks the exact family", "[constructor]") {
  const auto o = MomentFunctional::legendre(2);
  const auto exact = constrained_family(o, o, 6);
  const auto approx = constrained_family<double>(o, o, 6);
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK_THAT(approx.at(n).coeff(k), WithinAbs(exact.at(n).coeff(k).get_d(), 1e-8));
}

TEST_CASE("constructor errors", "[constructor]") {
  const auto o = MomentFunctional::laguerre_ortho(1);
  const auto c = MomentFunctional::laguerre_constraint(1);
  CHECK_THROWS_AS(constrained_family(o, c, 0), std::invalid_argument);
  CHECK_THROWS_AS(constrained_family(numeric_radial_gaussian(2, 1.0, 0.0, 1.0, 32), c, 2), std::invalid_argument);
  CHECK_THROWS_AS(constrained_family_from_seeds(o, c, {QPolynomial{1, 0, 1}}), std::invalid_argument);

  // An indefinite "weight" r - 0.6 makes the first squared norm negative.
  NumericWeight bad;
  bad.weight = [](double r) { return r - 0.6; };
  bad.order = 32;
  NumericWeight flat;
  flat.weight = [](double) { return 1.0; };
  flat.order = 32;
  try {
    constrained_family<double>(MomentFunctional::numeric(bad), MomentFunctional::numeric(flat), 3);
    FAIL("expected NonPositiveGram");
  } catch (const NonPositiveGram& e) {
    CHECK(e.degree() == 1);
  }
}
