#pragma once

// Univariate polynomials over Q: Euclidean gcd, squarefree part, exact
// rational roots and Aberth-Ehrlich complex root approximation.

#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nkinf/field.hpp"

namespace nkinf {

class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  /// Coefficients in ascending degree; trailing zeros are trimmed.
  explicit UnivariatePolynomial(std::vector<Rational> ascending);
  UnivariatePolynomial(std::initializer_list<long> ascending);

  static UnivariatePolynomial constant(Rational c) { return UnivariatePolynomial(std::vector<Rational>{std::move(c)}); }
  /// z - root
  static UnivariatePolynomial linear_factor(const Rational& root);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const Rational& leading() const;
  Rational coefficient(int i) const;

  Rational evaluate(const Rational& z) const;
  std::complex<long double> evaluate(std::complex<long double> z) const;

  UnivariatePolynomial derivative() const;
  /// Primitive integer coefficients, positive leading coefficient.
  UnivariatePolynomial canonical() const;
  UnivariatePolynomial monic() const;
  /// p(z - c); the roots move by +c.
  UnivariatePolynomial shifted(const Rational& c) const;

  friend UnivariatePolynomial operator+(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  friend UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  friend bool operator==(const UnivariatePolynomial& a, const UnivariatePolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient and remainder; throws on division by zero.
  std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& divisor) const;
  bool divides(const UnivariatePolynomial& multiple) const;

  std::string str(const std::string& var = "z") const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

/// Canonical gcd; throws when both inputs are zero.
UnivariatePolynomial gcd_univar(const UnivariatePolynomial& p, const UnivariatePolynomial& q);
/// Canonical p / gcd(p, p').
UnivariatePolynomial squarefree_part(const UnivariatePolynomial& p);
/// All rational roots, ascending, each once.
std::vector<Rational> rational_roots(const UnivariatePolynomial& p);

struct RootApproximation {
  std::vector<std::complex<double>> roots;
  bool converged = false;
  int iterations = 0;
};

/// deg p approximations by simultaneous Aberth-Ehrlich iteration; meant for
/// squarefree input.
RootApproximation approx_roots(const UnivariatePolynomial& p, double tolerance = 1e-10);

}  // namespace nkinf
