#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conpoly/errors.hpp"
#include "conpoly/polynomial.hpp"
#include "conpoly/quadrature.hpp"
#include "conpoly/unit_scalar.hpp"

namespace conpoly {

enum class MeasureKind {
  LaguerreOrtho,       // r^{d-1} e^{-r} on [0, inf)
  LaguerreConstraint,  // r^{d-1} e^{-r/2} on [0, inf)
  Legendre,            // r^{d-1} on [0, 1]
  Gauss,               // e^{-a r^2} on the real line
  Numeric,             // sampled weight on a finite interval, Gauss-Legendre moments
};

/// Default Gauss-Legendre order for numeric functionals; CONPOLY_QUAD_ORDER
/// overrides it.
inline int default_quadrature_order() {
  if (const char* env = std::getenv("CONPOLY_QUAD_ORDER")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
  }
  return 64;
}

/// Sampled weight for the Numeric kind.
struct NumericWeight {
  std::function<double(double)> weight;
  double lo = 0.0;
  double hi = 1.0;
  int order = 64;
  std::string label = "numeric";
  /// Relative disagreement tolerated between orders `order` and 2*`order`.
  double tolerance = 1e-10;
};

/// A positive measure presented through its moment sequence.
class MomentFunctional {
 public:
  static MomentFunctional laguerre_ortho(int d) { return MomentFunctional(MeasureKind::LaguerreOrtho, check_d(d)); }
  static MomentFunctional laguerre_constraint(int d) {
    return MomentFunctional(MeasureKind::LaguerreConstraint, check_d(d));
  }
  static MomentFunctional legendre(int d) { return MomentFunctional(MeasureKind::Legendre, check_d(d)); }
  static MomentFunctional gauss(const Rational& a) {
    if (a <= 0) throw std::invalid_argument("gauss functional requires a > 0");
    MomentFunctional f(MeasureKind::Gauss, 1);
    f.a_ = a;
    return f;
  }
  static MomentFunctional numeric(NumericWeight w) {
    if (!w.weight) throw std::invalid_argument("numeric functional without a weight");
    if (!(w.hi > w.lo)) throw std::invalid_argument("numeric functional needs lo < hi");
    if (w.order < 1) throw std::invalid_argument("numeric functional needs order >= 1");
    MomentFunctional f(MeasureKind::Numeric, 1);
    f.numeric_ = std::make_shared<NumericWeight>(std::move(w));
    return f;
  }

  MeasureKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return d_; }
  const Rational& gauss_parameter() const noexcept { return a_; }
  bool is_exact() const noexcept { return kind_ != MeasureKind::Numeric; }
  const NumericWeight& numeric_weight() const {
    if (!numeric_) throw std::logic_error("not a numeric functional");
    return *numeric_;
  }

  Unit unit() const { return kind_ == MeasureKind::Gauss ? Unit::sqrt_pi_over(a_) : Unit::one(); }

  /// Exact k-th moment. Numeric functionals have no exact moments.
  UnitScalar moment(unsigned k) const { return UnitScalar(moment_rational(k), unit()); }

  /// Rational part of the k-th moment (the factor multiplying unit()).
  Rational moment_rational(unsigned k) const {
    switch (kind_) {
      case MeasureKind::LaguerreOrtho:
        return Rational(factorial(static_cast<unsigned long>(d_) - 1 + k));
      case MeasureKind::LaguerreConstraint:
        return Rational(pow2(static_cast<unsigned long>(d_) + k) * factorial(static_cast<unsigned long>(d_) - 1 + k));
      case MeasureKind::Legendre:
        return make_rational(1, d_ + static_cast<long>(k));
      case MeasureKind::Gauss: {
        if (k % 2 == 1) return Rational(0);
        const unsigned long half = k / 2;
        Integer two_a_num = 2 * a_.get_num();
        Integer two_a_den = a_.get_den();
        Integer num_pow, den_pow;
        mpz_pow_ui(num_pow.get_mpz_t(), two_a_num.get_mpz_t(), half);
        mpz_pow_ui(den_pow.get_mpz_t(), two_a_den.get_mpz_t(), half);
        return make_rational(double_factorial(static_cast<long>(k) - 1) * den_pow, num_pow);
      }
      case MeasureKind::Numeric:
        break;
    }
    throw std::logic_error("numeric functional has no exact moments");
  }

  /// Rational parts of moments 0..kmax.
  std::vector<Rational> moments_rational(unsigned kmax) const {
    std::vector<Rational> out;
    out.reserve(kmax + 1);
    for (unsigned k = 0; k <= kmax; ++k) out.push_back(moment_rational(k));
    return out;
  }

  /// k-th moment as a double, for every kind. Numeric moments are computed at
  /// the configured order and at twice that order; disagreement beyond the
  /// tolerance raises QuadratureDivergence.
  double moment_value(unsigned k) const {
    if (is_exact()) return moment(k).to_double();
    const auto& w = *numeric_;
    auto at = [&](int order) {
      const auto rule = gauss_legendre(order, w.lo, w.hi);
      return rule.integrate([&](double r) { return w.weight(r) * std::pow(r, static_cast<double>(k)); });
    };
    const double coarse = at(w.order);
    const double fine = at(2 * w.order);
    if (std::abs(coarse - fine) > w.tolerance * std::max(1.0, std::abs(fine))) {
      std::ostringstream msg;
      msg << "quadrature divergence for " << w.label << " moment " << k << ": order " << w.order << " gives "
          << coarse << ", order " << 2 * w.order << " gives " << fine;
      throw QuadratureDivergence(msg.str());
    }
    return fine;
  }

  /// Descriptor string as accepted by parse_functional().
  std::string descriptor() const {
    switch (kind_) {
      case MeasureKind::LaguerreOrtho:
        return "laguerre:d=" + std::to_string(d_);
      case MeasureKind::LaguerreConstraint:
        return "laguerre-half:d=" + std::to_string(d_);
      case MeasureKind::Legendre:
        return "legendre:d=" + std::to_string(d_);
      case MeasureKind::Gauss:
        return "gauss:a=" + a_.get_str();
      case MeasureKind::Numeric:
        return numeric_->label;
    }
    return "?";
  }

 private:
  MomentFunctional(MeasureKind k, int d) : kind_(k), d_(d), a_(1) {}
  static int check_d(int d) {
    if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
    return d;
  }

  MeasureKind kind_;
  int d_;
  Rational a_;
  std::shared_ptr<const NumericWeight> numeric_;
};

/// Sum_k coeffs[k] * moment(k).
inline UnitScalar apply(const MomentFunctional& f, const QPolynomial& p) {
  Rational acc = 0;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k)
    if (p.coeffs()[k] != 0) acc += p.coeffs()[k] * f.moment_rational(static_cast<unsigned>(k));
  return UnitScalar(acc, f.unit());
}

inline double apply(const MomentFunctional& f, const DPolynomial& p) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k)
    if (p.coeffs()[k] != 0.0) acc += p.coeffs()[k] * f.moment_value(static_cast<unsigned>(k));
  return acc;
}

inline UnitScalar pair(const MomentFunctional& f, const QPolynomial& p, const QPolynomial& q) {
  return apply(f, p * q);
}

inline double pair(const MomentFunctional& f, const DPolynomial& p, const DPolynomial& q) {
  return apply(f, p * q);
}

/// Exact Gram matrix [pair(f, a_i, b_j)] computed through the moment vectors
/// f(r^k a_i), which avoids forming every product a_i * b_j.
inline std::vector<std::vector<Rational>> pair_matrix_rational(const MomentFunctional& f,
                                                               const std::vector<QPolynomial>& a,
                                                               const std::vector<QPolynomial>& b) {
  int max_a = 0, max_b = 0;
  for (const auto& p : a) max_a = std::max(max_a, p.degree());
  for (const auto& p : b) max_b = std::max(max_b, p.degree());
  const auto mom = f.moments_rational(static_cast<unsigned>(std::max(0, max_a + max_b)));
  std::vector<std::vector<Rational>> out(a.size(), std::vector<Rational>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Rational> shifted(static_cast<std::size_t>(max_b) + 1, Rational(0));
    for (std::size_t j = 0; j < shifted.size(); ++j)
      for (std::size_t k = 0; k < a[i].coeffs().size(); ++k)
        if (a[i].coeffs()[k] != 0) shifted[j] += a[i].coeffs()[k] * mom[k + j];
    for (std::size_t j = 0; j < b.size(); ++j) {
      Rational acc = 0;
      for (std::size_t k = 0; k < b[j].coeffs().size(); ++k)
        if (b[j].coeffs()[k] != 0) acc += b[j].coeffs()[k] * shifted[k];
      out[i][j] = acc;
    }
  }
  return out;
}

namespace detail {

inline std::map<std::string, std::string> parse_kv(std::string_view body, std::string_view whole) {
  std::map<std::string, std::string> kv;
  std::string s(body);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("malformed functional descriptor '" + std::string(whole) + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

inline int parse_int(const std::string& v, std::string_view whole) {
  std::size_t used = 0;
  int out = 0;
  try {
    out = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw std::invalid_argument("bad integer '" + v + "' in '" + std::string(whole) + "'");
  return out;
}

inline double parse_double(const std::string& v, std::string_view whole) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw std::invalid_argument("bad number '" + v + "' in '" + std::string(whole) + "'");
  return out;
}

}  // namespace detail

/// Weight r^{d-1} e^{k r^2} on [lo, hi] as a numeric functional.
inline MomentFunctional numeric_radial_gaussian(int d, double k, double lo, double hi, int order) {
  std::ostringstream label;
  label << "numeric:d=" << d << ",k=" << k << ",lo=" << lo << ",hi=" << hi << ",order=" << order;
  NumericWeight w;
  w.weight = [d, k](double r) { return std::pow(r, d - 1) * std::exp(k * r * r); };
  w.lo = lo;
  w.hi = hi;
  w.order = order;
  w.label = label.str();
  return MomentFunctional::numeric(std::move(w));
}

/// Parses `laguerre:d=2`, `laguerre-half:d=2`, `legendre:d=3`, `gauss:a=1/2`
/// and `numeric:d=2,k=1.5,lo=0,hi=1,order=64` (weight r^{d-1} e^{k r^2}).
inline MomentFunctional parse_functional(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("functional descriptor needs 'kind:params', got '" + std::string(text) + "'");
  const std::string kind(text.substr(0, colon));
  auto kv = detail::parse_kv(text.substr(colon + 1), text);
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("missing '" + key + "' in '" + std::string(text) + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&](MomentFunctional f) {
    if (!kv.empty())
      throw std::invalid_argument("unknown key '" + kv.begin()->first + "' in '" + std::string(text) + "'");
    return f;
  };
  if (kind == "laguerre") return finish(MomentFunctional::laguerre_ortho(detail::parse_int(take("d"), text)));
  if (kind == "laguerre-half")
    return finish(MomentFunctional::laguerre_constraint(detail::parse_int(take("d"), text)));
  if (kind == "legendre") return finish(MomentFunctional::legendre(detail::parse_int(take("d"), text)));
  if (kind == "gauss") return finish(MomentFunctional::gauss(parse_rational(take("a"))));
  if (kind == "numeric") {
    const int d = kv.count("d") ? detail::parse_int(take("d"), text) : 1;
    const double k = kv.count("k") ? detail::parse_double(take("k"), text) : 0.0;
    const double lo = kv.count("lo") ? detail::parse_double(take("lo"), text) : 0.0;
    const double hi = kv.count("hi") ? detail::parse_double(take("hi"), text) : 1.0;
    const int order = kv.count("order") ? detail::parse_int(take("order"), text) : default_quadrature_order();
    if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
    return finish(numeric_radial_gaussian(d, k, lo, hi, order));
  }
  throw std::invalid_argument("unknown functional kind '" + kind + "'");
}

}  // namespace conpoly
