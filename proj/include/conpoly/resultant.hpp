#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conpoly/polynomial.hpp"

namespace conpoly {

template <class T>
using DenseMatrix = std::vector<std::vector<T>>;

/// (deg p + deg q)-square Sylvester matrix, coefficients in descending powers.
template <class T>
DenseMatrix<T> sylvester_matrix(const Polynomial<T>& p, const Polynomial<T>& q) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("sylvester_matrix: zero polynomial");
  if (p.degree() < 1 || q.degree() < 1)
    throw std::invalid_argument("sylvester_matrix: degrees must be >= 1");
  const auto m = static_cast<std::size_t>(p.degree());
  const auto n = static_cast<std::size_t>(q.degree());
  DenseMatrix<T> s(m + n, std::vector<T>(m + n, T(0)));
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t k = 0; k <= m; ++k) s[row][row + k] = p.coeffs()[m - k];
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t k = 0; k <= n; ++k) s[n + row][row + k] = q.coeffs()[n - k];
  return s;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(DenseMatrix<double> a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

/// Fraction-free (Bareiss) determinant over the integers.
inline Integer determinant_bareiss(DenseMatrix<Integer> a) {
  const std::size_t n = a.size();
  if (n == 0) return Integer(1);
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return Integer(0);
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(t);
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Exact determinant of a rational matrix: rows are cleared of denominators,
/// then Bareiss elimination runs over the integers.
inline Rational determinant(const DenseMatrix<Rational>& a) {
  DenseMatrix<Integer> ints(a.size());
  Integer scale = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer l = 1;
    for (const auto& x : a[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    scale *= l;
    ints[i].reserve(a[i].size());
    for (const auto& x : a[i]) ints[i].push_back(Integer(x.get_num() * (l / x.get_den())));
  }
  return make_rational(determinant_bareiss(std::move(ints)), scale);
}

/// Resultant of p and q as the Sylvester determinant. For double input only
/// the sign and the zero set are meaningful; the overall scale is not.
template <class T>
T sylvester_resultant(const Polynomial<T>& p, const Polynomial<T>& q) {
  return determinant(sylvester_matrix(p, q));
}

/// Resultant after scaling each argument to unit max-norm coefficients.
/// Invariant under positive rescaling of either input; sign preserved.
inline double normalized_resultant(const DPolynomial& p, const DPolynomial& q) {
  auto unit = [](const DPolynomial& x) {
    double m = 0.0;
    for (double c : x.coeffs()) m = std::max(m, std::abs(c));
    if (m == 0.0) throw std::invalid_argument("normalized_resultant: zero polynomial");
    return x * (1.0 / m);
  };
  return sylvester_resultant(unit(p), unit(q));
}

}  // namespace conpoly
