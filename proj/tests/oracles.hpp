#pragma once

// Independent oracles used to cross-check the Groebner engine. None of them
// goes through buchberger, normal forms or elimination.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nkinf/polynomial.hpp"
#include "nkinf/univariate.hpp"

namespace nkinf::test {

/// p as a univariate polynomial in variable `var`; p must involve no other.
inline UnivariatePolynomial to_univariate(const QPolynomial& p, std::size_t var) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(p.degree_in(var), 0)) + 1, Rational(0L));
  for (const auto& t : p.terms()) {
    for (std::size_t v = 0; v < p.ring().size(); ++v) {
      if (v != var && t.monomial[v] != 0) throw std::invalid_argument("polynomial involves another variable");
    }
    c[t.monomial[var]] = t.coeff;
  }
  return UnivariatePolynomial(std::move(c));
}

/// Coefficients of p in powers of x, each a univariate polynomial in y,
/// for p in Q[x, y] (x and y are variable indices).
inline std::vector<UnivariatePolynomial> coefficients_in(const QPolynomial& p, std::size_t x, std::size_t y) {
  int deg = p.degree_in(x);
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(deg) + 1);
  for (const auto& t : p.terms()) {
    auto& row = rows[t.monomial[x]];
    if (row.size() <= t.monomial[y]) row.resize(t.monomial[y] + 1, Rational(0L));
    row[t.monomial[y]] = t.coeff;
  }
  std::vector<UnivariatePolynomial> out;
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

/// Res_x(p, q) as a polynomial in y: determinant of the Sylvester matrix by
/// fraction-free (Bareiss) elimination over Q[y].
inline UnivariatePolynomial sylvester_resultant(const QPolynomial& p, const QPolynomial& q, std::size_t x,
                                                std::size_t y) {
  auto a = coefficients_in(p, x, y);
  auto b = coefficients_in(q, x, y);
  std::size_t m = a.size() - 1;
  std::size_t n = b.size() - 1;
  std::size_t size = m + n;
  if (size == 0) return UnivariatePolynomial{1};
  std::vector<std::vector<UnivariatePolynomial>> s(size, std::vector<UnivariatePolynomial>(size));
  // Rows hold descending coefficients of x^k * p (n rows) and x^k * q (m rows).
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = a[m - k];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = b[n - k];
  }
  UnivariatePolynomial prev{1};
  bool negate = false;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (s[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < size && s[swap][k].is_zero()) ++swap;
      if (swap == size) return UnivariatePolynomial{};
      std::swap(s[k], s[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        auto num = s[i][j] * s[k][k] - s[i][k] * s[k][j];
        auto [quot, rem] = num.divmod(prev);
        if (!rem.is_zero()) throw std::logic_error("Bareiss division was not exact");
        s[i][j] = quot;
      }
      s[i][k] = UnivariatePolynomial{};
    }
    prev = s[k][k];
  }
  auto det = s[size - 1][size - 1];
  return negate ? UnivariatePolynomial{} - det : det;
}

/// Dimension of V(<monomials>) in n variables from the growth of the affine
/// Hilbert function: the number of standard monomials of degree <= D is
/// eventually a polynomial in D whose degree is the dimension.
inline int hilbert_dimension(const std::vector<Monomial>& monomials, std::size_t n, int top = 24) {
  auto standard = [&](const Monomial& m) {
    for (const auto& g : monomials) {
      if (g.divides(m)) return false;
    }
    return true;
  };
  std::vector<long> count(static_cast<std::size_t>(top) + 1, 0);
  // Enumerate exponent vectors of total degree <= top.
  std::vector<unsigned> e(n, 0);
  while (true) {
    unsigned deg = 0;
    for (auto v : e) deg += v;
    if (deg <= static_cast<unsigned>(top) && standard(Monomial(e))) {
      for (int d = static_cast<int>(deg); d <= top; ++d) ++count[static_cast<std::size_t>(d)];
    }
    std::size_t i = 0;
    while (i < n) {
      if (++e[i] <= static_cast<unsigned>(top)) break;
      e[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  if (count.back() == 0) return -1;
  // The k-th finite difference of a degree-k polynomial is a nonzero constant.
  std::vector<long> diff(count.end() - 8, count.end());
  for (int k = 0; k <= static_cast<int>(n); ++k) {
    bool constant = std::all_of(diff.begin(), diff.end(), [&](long v) { return v == diff.front(); });
    if (constant && diff.front() != 0) return k;
    std::vector<long> next;
    for (std::size_t i = 1; i < diff.size(); ++i) next.push_back(diff[i] - diff[i - 1]);
    diff = std::move(next);
  }
  throw std::logic_error("Hilbert function did not stabilize");
}

}  // namespace nkinf::test
