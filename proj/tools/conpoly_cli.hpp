#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "conpoly/constructor.hpp"
#include "conpoly/families.hpp"
#include "conpoly/measures.hpp"
#include "conpoly/projector.hpp"
#include "conpoly/rational.hpp"
#include "conpoly/toymodel.hpp"

namespace conpoly::cli {

using nlohmann::json;

/// Configuration problems detected after parsing (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Double rounded to 12 significant digits so JSON output matches CSV.
inline double rounded(double x) { return std::isfinite(x) ? std::stod(fmt(x)) : x; }

/// Writes to `path` through a temporary file and a rename, or to `out` when
/// path is empty or "-".
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, target);
}

inline json scalar_json(const UnitScalar& s) {
  return {{"value", to_fraction_string(s.value())}, {"unit", s.unit().to_string()}};
}

inline std::string scalar_text(const UnitScalar& s) {
  const std::string v = to_fraction_string(s.value());
  return s.unit().kind() == Unit::Kind::One ? v : v + "*" + s.unit().to_string();
}

inline json family_json(const ConstrainedFamily<Rational>& fam) {
  json members = json::array();
  for (int n = 1; n <= fam.size(); ++n) {
    json coeffs = json::array();
    for (const auto& c : fam.at(n).coeffs()) coeffs.push_back(to_fraction_string(c));
    members.push_back({{"n", n}, {"coeffs", coeffs}, {"text", to_string(fam.at(n))}, {"norm", scalar_json(fam.norm(n))}});
  }
  return {{"ortho", fam.ortho.descriptor()},
          {"constraint", fam.constraint.descriptor()},
          {"N", fam.size()},
          {"convention", to_string(fam.convention)},
          {"provenance", to_string(fam.provenance)},
          {"members", members}};
}

inline std::string family_csv(const ConstrainedFamily<Rational>& fam) {
  std::ostringstream os;
  os << "n,norm,polynomial\n";
  for (int n = 1; n <= fam.size(); ++n) os << n << ',' << scalar_text(fam.norm(n)) << ',' << to_string(fam.at(n)) << '\n';
  return os.str();
}

struct FamilyOptions {
  std::string kind;
  std::string ortho;
  std::string constraint;
  int d = 1;
  int N = 4;
  std::string a = "1/2";
  std::string method = "recursion";
  std::string format = "csv";
  std::string out;
};

inline ConstrainedFamily<Rational> build_family(const FamilyOptions& o) {
  const bool explicit_pair = !o.ortho.empty() || !o.constraint.empty();
  if (explicit_pair == !o.kind.empty())
    throw UsageError("give either --kind or both --ortho and --constraint");
  if (explicit_pair) {
    if (o.ortho.empty() || o.constraint.empty()) throw UsageError("--ortho and --constraint go together");
    const auto f = parse_functional(o.ortho);
    const auto c = parse_functional(o.constraint);
    if (!f.is_exact() || !c.is_exact()) throw UsageError("exact tables need exact functionals");
    return constrained_family(f, c, o.N);
  }
  const bool gs = o.method == "gs";
  if (o.kind == "laguerre") {
    if (gs)
      return constrained_family(MomentFunctional::laguerre_ortho(o.d), MomentFunctional::laguerre_constraint(o.d),
                                o.N);
    return laguerre_recursion_family(o.d, o.N);
  }
  if (o.kind == "legendre") {
    const auto f = MomentFunctional::legendre(o.d);
    if (gs) return to_paper_convention(constrained_family(f, f, o.N), Convention::EndpointOne);
    return legendre_family(o.d, o.N);
  }
  if (o.kind == "hermite") {
    const Rational a = parse_rational(o.a);
    return constrained_family(MomentFunctional::gauss(Rational(2 * a)), MomentFunctional::gauss(a), o.N);
  }
  throw UsageError("unknown --kind '" + o.kind + "'");
}

inline int cmd_family(const FamilyOptions& o, std::ostream& out) {
  const auto fam = build_family(o);
  emit(o.out, o.format == "json" ? family_json(fam).dump(2) + "\n" : family_csv(fam), out);
  return 0;
}

struct VerifyOptions {
  int d_max = 3;
  int N = 20;
  int projector_N = 30;
  int quad_order = 0;
  double projector_tol = 1e-10;
  bool inject_corruption = false;
  std::string out;
};

inline json report_json(const FamilyIdentityReport& r) {
  json failures = r.failures();
  return {{"family", r.family}, {"d", r.d}, {"N", r.N}, {"checks", r.residuals.size() + r.norms.size()},
          {"all_zero", r.all_zero()}, {"failures", failures}};
}

/// Constrained family for the numeric weight r on [0, 1] against the exact
/// Legendre d = 2 family.
inline json numeric_check(int order, int N) {
  json j{{"name", "numeric_legendre_d2"}, {"order", order}, {"N", N}};
  try {
    const auto w = numeric_radial_gaussian(2, 0.0, 0.0, 1.0, order);
    const auto num = constrained_family<double>(w, w, N);
    const auto ex = constrained_family(MomentFunctional::legendre(2), MomentFunctional::legendre(2), N);
    double worst = 0.0;
    for (int n = 1; n <= N; ++n) {
      const auto& p = num.at(n);
      const auto& q = ex.at(n);
      for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(p.coeff(k) - q.coeff(k).get_d()));
    }
    j["max_coefficient_error"] = rounded(worst);
    j["passed"] = worst < 1e-8;
  } catch (const QuadratureDivergence& e) {
    j["passed"] = false;
    j["error"] = std::string("quadrature divergence: ") + e.what();
  } catch (const NonPositiveGram& e) {
    j["passed"] = false;
    j["error"] = std::string("non-positive gram: ") + e.what();
  }
  return j;
}

inline int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  json families = json::array();
  std::vector<std::string> failed;
  for (int d = 1; d <= o.d_max; ++d) {
    auto lag = laguerre_recursion_family(d, o.N);
    if (o.inject_corruption && d == 1) lag.polys[2] += QPolynomial::constant(Rational(1));
    const auto rl = verify_laguerre_family(d, lag);
    const auto rg = verify_legendre(d, o.N);
    for (const auto* r : {&rl, &rg}) {
      families.push_back(report_json(*r));
      for (const auto& f : r->failures()) failed.push_back(f);
    }
  }
  json projector = json::array();
  for (auto wc : {laguerre_case(), hermite_case()}) {
    const ConstrainedProjector P(wc, o.projector_N);
    double worst = 0.0;
    for (int n = 1; n <= o.projector_N; ++n) worst = std::max(worst, P.decomposition_residual(n));
    const bool ok = worst < o.projector_tol;
    projector.push_back({{"case", wc.name}, {"N", o.projector_N}, {"max_residual", rounded(worst)}, {"passed", ok}});
    if (!ok) failed.push_back("decomposition " + wc.name);
  }
  const json numeric = numeric_check(o.quad_order > 0 ? o.quad_order : default_quadrature_order(), 6);
  if (!numeric["passed"].get<bool>())
    failed.push_back("numeric_legendre_d2" + (numeric.contains("error") ? " (" + numeric["error"].get<std::string>() + ")"
                                                                      : std::string()));
  const json report{{"all_zero", failed.empty()}, {"families", families}, {"projector", projector},
                    {"numeric", numeric}, {"failures", failed}};
  emit(o.out, report.dump(2) + "\n", out);
  for (const auto& f : failed) err << "verify: failed " << f << '\n';
  return failed.empty() ? 0 : 1;
}

struct ProfileOptions {
  std::string weight_case = "laguerre";
  double x = 2.0;
  std::vector<int> Ns{50};
  double rmin = std::nan("");
  double rmax = std::nan("");
  double step = 0.05;
  std::string out;
};

inline int cmd_profile(const ProfileOptions& o, bool subtract, std::ostream& out) {
  const WeightCase wc = parse_weight_case(o.weight_case);
  for (int n : o.Ns)
    if (n < 1) throw UsageError("every N must be >= 1");
  const bool half_line = wc.support_lo == 0.0;
  const double rmax = std::isnan(o.rmax) ? (half_line ? 40.0 : 6.0) : o.rmax;
  const double rmin = std::isnan(o.rmin) ? (half_line ? 0.0 : -rmax) : o.rmin;
  if (half_line && rmin < 0.0) throw UsageError("laguerre case lives on r >= 0");
  const auto grid = uniform_grid(rmin, rmax, o.step);
  const ConstrainedProjector P(wc, *std::max_element(o.Ns.begin(), o.Ns.end()));
  std::vector<std::vector<double>> cols;
  for (int n : o.Ns) cols.push_back(subtract ? P.subtractor_profile(n, o.x, grid) : P.kernel_profile(n, o.x, grid));
  std::ostringstream os;
  os << 'r';
  if (o.Ns.size() == 1)
    os << ",value";
  else
    for (int n : o.Ns) os << ",v_" << n;
  os << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << fmt(grid[i]);
    for (const auto& c : cols) os << ',' << fmt(c[i]);
    os << '\n';
  }
  emit(o.out, os.str(), out);
  return 0;
}

struct ToyOptions {
  int m = 4;
  double lambda_max = 2.0;
  double step = 0.1;
  int Z = 4;
  int B = 60;
  int N = 10;
  int rays = 256;
  double tolerance = 1e-8;
  std::string scales;
  std::string out;
};

/// k * step for k = -K..K; lambda = 0 is hit exactly.
inline std::vector<double> lambda_grid(double lambda_max, double step) {
  if (!(step > 0.0) || lambda_max < 0.0) throw UsageError("need --step > 0 and --lambda-max >= 0");
  const auto K = static_cast<long>(std::floor(lambda_max / step + 0.5));
  std::vector<double> g;
  for (long k = -K; k <= K; ++k) g.push_back(static_cast<double>(k) * step);
  return g;
}

inline int cmd_toy_trajectory(const ToyOptions& o, std::ostream& out) {
  if (o.m < 1 || o.m > o.N) throw UsageError("--m must lie in [1, N]");
  const ToyModel model(OscillatorModel{o.Z, o.B}, o.N);
  const auto t = model.trajectory(o.m, lambda_grid(o.lambda_max, o.step));
  std::ostringstream os;
  os << "lambda";
  for (int n = 1; n <= t.N; ++n) os << ",drho_" << n;
  os << '\n';
  for (std::size_t k = 0; k < t.lambdas.size(); ++k) {
    os << fmt(t.lambdas[k]);
    for (double c : t.coords[k]) os << ',' << fmt(c);
    os << '\n';
  }
  emit(o.out, os.str(), out);
  if (!o.scales.empty()) {
    json s = json::object();
    for (int n = 1; n <= t.N; ++n) s["drho_" + std::to_string(n)] = rounded(t.scale(n));
    emit(o.scales, json{{"m", t.m}, {"scale", s}}.dump(2) + "\n", out);
  }
  return 0;
}

inline int cmd_toy_positivity(const ToyOptions& o, std::ostream& out) {
  if (o.rays < 4) throw UsageError("--rays must be >= 4");
  const auto border = positivity_border(o.rays, o.tolerance);
  std::ostringstream os;
  os << "dR2,dR4,min_residual\n";
  for (const auto& b : border) os << fmt(b.dR2) << ',' << fmt(b.dR4) << ',' << fmt(b.min_residual) << '\n';
  emit(o.out, os.str(), out);
  return 0;
}

inline int cmd_toy_flexibility(const ToyOptions& o, std::ostream& out) {
  const ToyModel model(OscillatorModel{o.Z, o.B}, o.N);
  const auto F = model.flexibility();
  json rows = json::array();
  for (int i = 0; i < F.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < F.cols(); ++j) row.push_back(rounded(F(i, j)));
    rows.push_back(row);
  }
  emit(o.out, json{{"Z", o.Z}, {"B", o.B}, {"N", o.N}, {"F", rows}}.dump(2) + "\n", out);
  return 0;
}

struct CentrifugeOptions {
  double K = 1.0;
  int order = 64;
  std::string out;
};

inline int cmd_centrifuge(const CentrifugeOptions& o, std::ostream& out) {
  if (o.K == 0.0) throw UsageError("--K must be nonzero");
  const auto mode = centrifuge_mode(o.K);
  const double residual = mode.zero_average_residual(o.order);
  const json j{{"K", rounded(o.K)},
               {"c0", rounded(mode.c0)},
               {"c2", rounded(mode.c2)},
               {"order", o.order},
               {"residual", rounded(residual)}};
  emit(o.out, j.dump(2) + "\n", out);
  return 0;
}

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 computation or verification failure, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained orthogonal polynomials: tables, identities, projectors and toy-model runs", "conpoly"};
  app.require_subcommand(1);

  FamilyOptions fam;
  auto* family = app.add_subcommand("family", "Print a constrained family as exact coefficients");
  family->add_option("--kind", fam.kind, "laguerre, legendre or hermite")
      ->check(CLI::IsMember({"laguerre", "legendre", "hermite"}));
  family->add_option("--ortho", fam.ortho, "orthogonality functional, e.g. gauss:a=2");
  family->add_option("--constraint", fam.constraint, "constraint functional, e.g. gauss:a=1");
  family->add_option("--d", fam.d, "dimension")->check(CLI::Range(1, 64));
  family->add_option("--N", fam.N, "highest order")->check(CLI::Range(1, 400));
  family->add_option("--a", fam.a, "hermite constraint parameter (ortho uses 2a)");
  family->add_option("--method", fam.method, "recursion or gs")->check(CLI::IsMember({"recursion", "gs"}));
  family->add_option("--format", fam.format)->check(CLI::IsMember({"csv", "json"}));
  family->add_option("--out", fam.out);

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Check identities, norms and the projector decomposition");
  verify->add_option("--d-max", ver.d_max)->check(CLI::Range(1, 3));
  verify->add_option("--N", ver.N)->check(CLI::Range(2, 200));
  verify->add_option("--projector-N", ver.projector_N)->check(CLI::Range(1, 200));
  verify->add_option("--quad-order", ver.quad_order, "numeric check order (default 64 or CONPOLY_QUAD_ORDER)")
      ->check(CLI::Range(1, 4096));
  verify->add_flag("--inject-corruption", ver.inject_corruption)->group("");
  verify->add_option("--out", ver.out);

  ProfileOptions prof;
  auto add_profile = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--case", prof.weight_case, "laguerre, hermite or hermite-tuned")
        ->check(CLI::IsMember({"laguerre", "hermite", "hermite-tuned"}));
    sub->add_option("--x", prof.x);
    sub->add_option("--N", prof.Ns, "comma-separated truncation orders")->delimiter(',');
    sub->add_option("--rmin", prof.rmin);
    sub->add_option("--rmax", prof.rmax);
    sub->add_option("--step", prof.step)->check(CLI::PositiveNumber);
    sub->add_option("--out", prof.out);
    return sub;
  };
  auto* kernel = add_profile("kernel", "Projector kernel sum_n w_n(x) w_n(r) on a grid");
  auto* subtr = add_profile("subtractor", "Subtractor sigma_N(x) sigma_N(r) on a grid");

  ToyOptions toy_o;
  auto* toy = app.add_subcommand("toy", "Oscillator toy model");
  toy->require_subcommand(1);
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--Z", toy_o.Z)->check(CLI::Range(1, 1000));
    sub->add_option("--B", toy_o.B)->check(CLI::Range(2, 400));
    sub->add_option("--N", toy_o.N)->check(CLI::Range(1, 100));
    sub->add_option("--out", toy_o.out);
  };
  auto* traj = toy->add_subcommand("trajectory", "Coordinates of the density variation along a lambda grid");
  add_model(traj);
  traj->add_option("--m", toy_o.m)->check(CLI::Range(1, 100));
  traj->add_option("--lambda-max", toy_o.lambda_max);
  traj->add_option("--step", toy_o.step);
  traj->add_option("--scales", toy_o.scales, "write 2^{|n-m|/2} plotting factors as JSON");
  auto* pos = toy->add_subcommand("positivity", "Border of the positivity domain");
  pos->add_option("--rays", toy_o.rays)->check(CLI::Range(4, 1 << 20));
  pos->add_option("--tol", toy_o.tolerance)->check(CLI::PositiveNumber);
  pos->add_option("--out", toy_o.out);
  auto* flex = toy->add_subcommand("flexibility", "Flexibility matrix");
  add_model(flex);

  CentrifugeOptions cen;
  auto* centrifuge = app.add_subcommand("centrifuge", "Zero-average check of the centrifuge mode");
  centrifuge->add_option("--K", cen.K)->required();
  centrifuge->add_option("--order", cen.order)->check(CLI::Range(1, 4096));
  centrifuge->add_option("--out", cen.out);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (family->parsed()) return cmd_family(fam, out);
    if (verify->parsed()) return cmd_verify(ver, out, err);
    if (kernel->parsed()) return cmd_profile(prof, false, out);
    if (subtr->parsed()) return cmd_profile(prof, true, out);
    if (traj->parsed()) return cmd_toy_trajectory(toy_o, out);
    if (pos->parsed()) return cmd_toy_positivity(toy_o, out);
    if (flex->parsed()) return cmd_toy_flexibility(toy_o, out);
    if (centrifuge->parsed()) return cmd_centrifuge(cen, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const QuadratureDivergence& e) {
    err << "quadrature divergence: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "computation failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace conpoly::cli
