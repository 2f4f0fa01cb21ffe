#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conpoly/rational.hpp"

namespace conpoly {

/// Dense univariate polynomial; coeffs()[k] multiplies r^k.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// is the empty vector and degree() == -1. T is Rational for exact work and
/// double at evaluation boundaries.
template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial monomial(std::size_t k, T c = T(1)) {
    std::vector<T> v(k + 1, T(0));
    v[k] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<T>& coeffs() const noexcept { return coeffs_; }

  T coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : T(0); }

  const T& leading() const {
    if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  bool is_monic() const { return !is_zero() && coeffs_.back() == T(1); }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    if (s == T(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Polynomial& operator/=(const T& s) {
    if (s == T(0)) throw std::domain_error("polynomial divided by zero");
    for (auto& c : coeffs_) c /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const T& s) { return a /= s; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == T(0)) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Multiplication by r^k.
  Polynomial shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<T> v(k, T(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using QPolynomial = Polynomial<Rational>;
using DPolynomial = Polynomial<double>;

/// The polynomial r.
template <class T = Rational>
Polynomial<T> variable() {
  return Polynomial<T>::monomial(1);
}

template <class T>
Polynomial<T> derivative(const Polynomial<T>& p) {
  if (p.degree() < 1) return {};
  std::vector<T> v(p.coeffs().size() - 1);
  for (std::size_t k = 1; k < p.coeffs().size(); ++k) v[k - 1] = p.coeffs()[k] * T(static_cast<long>(k));
  return Polynomial<T>(std::move(v));
}

/// Exact value at a rational point.
inline Rational evaluate_exact(const QPolynomial& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Compensated Horner evaluation (error-free transformations), accurate as if
/// carried out in twice the working precision.
inline double evaluate(const DPolynomial& p, double x) {
  const auto& c = p.coeffs();
  if (c.empty()) return 0.0;
  double s = c.back();
  double err = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    const double prod = s * x;
    const double prod_err = std::fma(s, x, -prod);
    const double sum = prod + c[k];
    const double bb = sum - prod;
    const double sum_err = (prod - (sum - bb)) + (c[k] - bb);
    s = sum;
    err = err * x + (prod_err + sum_err);
  }
  return s + err;
}

inline DPolynomial to_double(const QPolynomial& p) {
  std::vector<double> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(c.get_d());
  return DPolynomial(std::move(v));
}

inline double evaluate(const QPolynomial& p, double x) { return evaluate(to_double(p), x); }

/// Human-readable form in descending powers, e.g. "r^2-(6/5)r+3/10".
inline std::string to_string(const QPolynomial& p, const std::string& var = "r") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (negative)
      out += "-";
    else if (!out.empty())
      out += "+";
    const bool integral = mag.get_den() == 1;
    std::string m = integral ? mag.get_num().get_str() : mag.get_str();
    if (k == 0) {
      out += m;
      continue;
    }
    if (mag != 1) out += integral ? m : "(" + m + ")";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace conpoly
