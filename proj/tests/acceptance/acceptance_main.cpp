// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../reference_tables.hpp"
#include "conpoly/constructor.hpp"
#include "conpoly/families.hpp"
#include "conpoly/projector.hpp"
#include "conpoly/resultant.hpp"
#include "conpoly/toymodel.hpp"
#include "conpoly_cli.hpp"

using namespace conpoly;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && dt > budget_s) {
    o.pass = false;
    o.detail += " (over time budget)";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %s %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt);
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const ToyModel& toy() {
  static const ToyModel model(OscillatorModel{4, 60}, 10);
  return model;
}

Outcome tables() {
  int matched = 0;
  for (int d = 1; d <= 3; ++d) {
    const auto lag_gs =
        constrained_family(MomentFunctional::laguerre_ortho(d), MomentFunctional::laguerre_constraint(d), 4);
    const auto lag_rec = laguerre_recursion_family(d, 4);
    const auto f = MomentFunctional::legendre(d);
    const auto leg_gs = to_paper_convention(constrained_family(f, f, 4), Convention::EndpointOne);
    const auto leg_rec = legendre_recursion_family(d, 4);
    for (int n = 1; n <= 4; ++n) {
      const auto lag = reference::poly(reference::laguerre[d - 1][n - 1]);
      const auto leg = reference::poly(reference::legendre[d - 1][n - 1]);
      if (lag_gs.at(n) == lag && lag_rec.at(n) == lag) ++matched;
      if (leg_gs.at(n) == leg && leg_rec.at(n) == leg) ++matched;
    }
  }
  return {matched == 24, std::to_string(matched) + "/24 polynomials exact by both routes"};
}

Outcome identities() {
  int clean = 0;
  std::string bad;
  for (int d = 1; d <= 3; ++d)
    for (const auto& rep : {verify_laguerre(d, 20), verify_legendre(d, 20)}) {
      if (rep.all_zero() && rep.norms.size() == 20)
        ++clean;
      else
        for (const auto& f : rep.failures()) bad += " " + f;
    }
  return {clean == 6, std::to_string(clean) + "/6 families zero residual, norms exact to n=20" + bad};
}

Outcome projector() {
  double decomp = 0.0;
  for (const auto& wc : {laguerre_case(), hermite_case()}) {
    const ConstrainedProjector P(wc, 30);
    for (int n = 1; n <= 30; ++n) decomp = std::max(decomp, P.decomposition_residual(n));
  }
  double lag = 0.0;
  for (double a : z_averages(laguerre_case(), 30)) lag = std::max(lag, std::abs(a - 2.0));
  double herm = 0.0;
  const auto avg = z_averages(hermite_case(), 21);
  for (int p = 0; p <= 10; ++p) {
    const double expected = std::sqrt(M_PI) * std::pow(2.0, 1 - p) * double_factorial(2 * p - 1).get_d() /
                            factorial(static_cast<unsigned long>(p)).get_d();
    const double got = avg[static_cast<std::size_t>(2 * p)] * avg[static_cast<std::size_t>(2 * p)];
    herm = std::max(herm, std::abs(got - expected) / expected);
  }
  return {decomp < 1e-10 && lag <= 1e-12 && herm <= 1e-10,
          "decomposition " + fmt("%.2e", decomp) + ", |<z_m>-2| " + fmt("%.2e", lag) + ", hermite rel " +
              fmt("%.2e", herm)};
}

Outcome coordinates() {
  const std::vector<double> q4{0.016, -0.267, -0.055, 0.023, 0.018};
  const std::vector<double> q6{-0.013, -0.041, -0.376, 0.008, 0.040};
  double worst = 0.0;
  std::ostringstream os;
  for (const auto& [m, quoted] : {std::pair{4, q4}, std::pair{6, q6}}) {
    const auto c = toy().coordinates(m, 2.0);
    os << "m=" << m << " (";
    for (int k = 0; k < 5; ++k) {
      const double v = c[static_cast<std::size_t>(2 * k + 1)];
      worst = std::max(worst, std::abs(v - quoted[static_cast<std::size_t>(k)]));
      os << (k ? "," : "") << fmt("%.4f", v);
    }
    os << ") ";
  }
  os << "max dev " << fmt("%.4f", worst);
  return {worst <= 0.003, os.str()};
}

Outcome first_order() {
  const auto F = toy().flexibility();
  const double h = 1e-4;
  double worst = 0.0;
  for (int m : {2, 4, 6}) {
    const auto up = toy().coordinates(m, h);
    const auto down = toy().coordinates(m, -h);
    for (int n = 1; n <= 10; ++n)
      worst = std::max(worst, std::abs((up[n - 1] - down[n - 1]) / (2 * h) - F(n - 1, m - 1)));
  }
  return {worst < 1e-5, "max |FD - F| " + fmt("%.2e", worst)};
}

Outcome reference_density() {
  const auto rho = toy().density(4, 0.0);
  double worst = 0.0;
  for (double r : uniform_grid(0.0, 5.0, 0.01)) worst = std::max(worst, std::abs(rho(r) - reference_density_z4(r)));
  return {worst < 1e-12, "max deviation " + fmt("%.2e", worst) + " on 501 points"};
}

Outcome positivity() {
  const auto border = positivity_border(256);
  double resid = 0.0, ratio = 0.0;
  int star = 0;
  for (const auto& b : border) {
    resid = std::max(resid, std::abs(b.min_residual));
    ratio = std::max(ratio, b.resultant_ratio);
    if (b.bounded && b.single_crossing) ++star;
  }
  const double origin = PositivityQuery{0.0, 0.0}.min_value();
  const bool ok = border.size() == 256 && resid < 1e-8 && ratio < 1e-6 && origin > 0.0 && star == 256;
  return {ok, "|min P| " + fmt("%.2e", resid) + ", resultant ratio " + fmt("%.2e", ratio) + ", origin min " +
                  fmt("%.3f", origin) + ", star-shaped rays " + std::to_string(star) + "/256"};
}

Outcome centrifuge() {
  double worst = 0.0;
  for (double K : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(centrifuge_mode(K).zero_average_residual()));
  return {worst < 1e-10, "max residual " + fmt("%.2e", worst)};
}

Outcome properties() {
  std::string bad;

  // leading Hankel minors of every exact moment sequence are positive
  for (const auto& f : {MomentFunctional::laguerre_ortho(1), MomentFunctional::laguerre_constraint(3),
                        MomentFunctional::legendre(2), MomentFunctional::gauss(make_rational(1, 2)),
                        MomentFunctional::gauss(Rational(2))}) {
    const auto m = f.moments_rational(20);
    for (std::size_t n = 1; n <= 10; ++n) {
      DenseMatrix<Rational> H(n, std::vector<Rational>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) H[i][j] = m[i + j];
      if (determinant(H) <= 0) bad += " hankel:" + f.descriptor();
    }
  }

  // the monic family does not depend on admissible seeds
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
  const auto o = MomentFunctional::gauss(Rational(2));
  const auto c = MomentFunctional::gauss(Rational(1));
  const auto ref = constrained_family(o, c, 8);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<QPolynomial> seeds;
    for (int n = 1; n <= 8; ++n) {
      Rational lead = make_rational(num(rng), den(rng));
      if (lead == 0) lead = 1;
      QPolynomial s = constrained_seed(n, c) * lead;
      for (int k = 1; k < n; ++k) s += constrained_seed(k, c) * make_rational(num(rng), den(rng));
      seeds.push_back(s);
    }
    const auto fam = constrained_family_from_seeds(o, c, seeds);
    for (int n = 1; n <= 8; ++n)
      if (!(fam.at(n) == ref.at(n))) bad += " uniqueness";
  }

  // mass is conserved along every trajectory
  double mass = 0.0;
  for (int m : {2, 4, 6})
    for (double l : {-2.0, -1.0, 0.5, 2.0}) mass = std::max(mass, std::abs(mass_variation(toy().variation(m, l))));
  if (mass >= 1e-10) bad += " mass=" + fmt("%.2e", mass);

  // identical CLI invocations give identical bytes
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"family", "--kind", "legendre", "--d", "2", "--N", "6", "--format", "json"},
        std::vector<std::string>{"toy", "trajectory", "--m", "4", "--step", "0.5"},
        std::vector<std::string>{"centrifuge", "--K", "2"}}) {
    std::ostringstream a, b, e;
    const int ca = cli::run(args, a, e);
    const int cb = cli::run(args, b, e);
    if (ca != 0 || cb != 0 || a.str() != b.str()) bad += " cli:" + args[0];
  }

  return {bad.empty(), bad.empty() ? "hankel minors, seed independence, mass " + fmt("%.1e", mass) + ", CLI bytes"
                                   : "failed:" + bad};
}

Outcome kernel_peaks() {
  const ConstrainedProjector P(laguerre_case(), 150);
  std::ostringstream os;
  double prev = 0.0;
  bool grows = true;
  for (int N : {50, 100, 150}) {
    const double v = P.kernel_profile(N, 2.0, {2.0})[0];
    grows = grows && v > prev;
    prev = v;
    os << "N=" << N << ":" << fmt("%.3f", v) << " ";
  }
  return {grows, os.str() + "(peak at x=2)"};
}

}  // namespace

int main() {
  criterion("AC1", "exact tables", 1.0, tables);
  criterion("AC2", "identity suite", 10.0, identities);
  criterion("AC3", "projector decomposition", 0.0, projector);
  criterion("AC4", "toy coordinates at lambda=2", 60.0, coordinates);
  criterion("AC5", "first-order consistency", 0.0, first_order);
  criterion("AC6", "reference density", 0.0, reference_density);
  criterion("AC7", "positivity border", 30.0, positivity);
  criterion("AC8", "centrifuge zero average", 0.0, centrifuge);
  criterion("AC9", "property suites", 0.0, properties);
  criterion("FIG3", "kernel peak grows with N", 0.0, kernel_peaks);
  std::printf("%s: %d failing\n", failures ? "FAILED" : "ALL PASS", failures);
  return failures ? 1 : 0;
}
