#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace conpoly {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

/// n!! with the convention (-1)!! = 0!! = 1.
inline Integer double_factorial(long n) {
  if (n < -1) throw std::invalid_argument("double_factorial: n < -1");
  if (n <= 0) return Integer(1);
  Integer out;
  mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

inline Integer pow2(unsigned long k) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, k);
  return out;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// Lowest-terms "num/den" (denominator always printed).
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "num/den" or a bare integer.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace conpoly
