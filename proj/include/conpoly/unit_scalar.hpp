#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "conpoly/rational.hpp"

namespace conpoly {

/// Irrational unit carried alongside an exact rational value: either 1 or
/// sqrt(pi/a) for a positive rational a. Every moment of exp(-a r^2) over the
/// real line is a rational multiple of sqrt(pi/a).
class Unit {
 public:
  enum class Kind { One, SqrtPiOver };

  static Unit one() { return Unit(Kind::One, Rational(1)); }
  static Unit sqrt_pi_over(const Rational& a) {
    if (a <= 0) throw std::invalid_argument("sqrt(pi/a) unit requires a > 0");
    return Unit(Kind::SqrtPiOver, a);
  }

  Kind kind() const noexcept { return kind_; }
  const Rational& parameter() const noexcept { return a_; }

  double value() const {
    return kind_ == Kind::One ? 1.0 : std::sqrt(std::numbers::pi / a_.get_d());
  }

  std::string to_string() const {
    if (kind_ == Kind::One) return "1";
    if (a_ == 1) return "sqrt(pi)";
    return "sqrt(pi/" + a_.get_str() + ")";
  }

  friend bool operator==(const Unit& x, const Unit& y) {
    return x.kind_ == y.kind_ && (x.kind_ == Kind::One || x.a_ == y.a_);
  }

 private:
  Unit(Kind k, Rational a) : kind_(k), a_(std::move(a)) {}

  Kind kind_;
  Rational a_;
};

/// Rational value times a Unit. Sums require equal units (zero adopts the
/// other operand's unit); the ratio of equal-unit scalars is a pure Rational.
class UnitScalar {
 public:
  UnitScalar() : value_(0), unit_(Unit::one()) {}
  UnitScalar(Rational v, Unit u = Unit::one()) : value_(std::move(v)), unit_(std::move(u)) {}  // NOLINT

  const Rational& value() const noexcept { return value_; }
  const Unit& unit() const noexcept { return unit_; }
  bool is_zero() const { return value_ == 0; }
  int sign() const { return sgn(value_); }

  double to_double() const { return value_.get_d() * unit_.value(); }

  UnitScalar& operator+=(const UnitScalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this;
    }
    check_same(o);
    value_ += o.value_;
    return *this;
  }
  UnitScalar& operator-=(const UnitScalar& o) { return *this += UnitScalar(-o.value_, o.unit_); }
  UnitScalar& operator*=(const Rational& s) {
    value_ *= s;
    return *this;
  }

  friend UnitScalar operator+(UnitScalar a, const UnitScalar& b) { return a += b; }
  friend UnitScalar operator-(UnitScalar a, const UnitScalar& b) { return a -= b; }
  friend UnitScalar operator*(UnitScalar a, const Rational& s) { return a *= s; }
  friend UnitScalar operator*(const Rational& s, UnitScalar a) { return a *= s; }

  /// this / o as an exact rational; units must agree.
  Rational ratio(const UnitScalar& o) const {
    if (o.is_zero()) throw std::domain_error("ratio by a zero scalar");
    if (is_zero()) return Rational(0);
    check_same(o);
    return Rational(value_ / o.value_);
  }

  friend bool operator==(const UnitScalar& a, const UnitScalar& b) {
    if (a.is_zero() || b.is_zero()) return a.value_ == b.value_;
    return a.unit_ == b.unit_ && a.value_ == b.value_;
  }

  std::string to_string() const {
    if (unit_.kind() == Unit::Kind::One) return value_.get_str();
    return value_.get_str() + "*" + unit_.to_string();
  }

 private:
  void check_same(const UnitScalar& o) const {
    if (!(unit_ == o.unit_))
      throw std::domain_error("mixing scalars with units " + unit_.to_string() + " and " +
                              o.unit_.to_string());
  }

  Rational value_;
  Unit unit_;
};

/// num / sqrt(den) in floating point, where num and den may carry different
/// units. The rational part num^2/den is formed exactly before rounding so
/// that huge or tiny intermediate magnitudes never reach a double.
inline double ratio_over_sqrt(const UnitScalar& num, const UnitScalar& den) {
  if (den.sign() <= 0) throw std::domain_error("ratio_over_sqrt: non-positive denominator");
  if (num.is_zero()) return 0.0;
  const Rational q = num.value() * num.value() / den.value();
  const double u = num.unit().value() / std::sqrt(den.unit().value());
  return num.sign() * std::sqrt(q.get_d()) * u;
}

}  // namespace conpoly
