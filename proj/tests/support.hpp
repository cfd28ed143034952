#pragma once

// Shared fixtures for the unit tests: rings, parsing shortcuts and seeded
// random polynomials.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nkinf/cli.hpp"

namespace nkinf::test {

inline QRingPtr ring(const std::string& vars) { return make_ring<RationalField>(parse_variable_list(vars)); }

inline QPolynomial poly(const QRingPtr& r, const std::string& text) { return parse_polynomial(text, r); }

inline UnivariatePolynomial univar(std::initializer_list<long> ascending) { return UnivariatePolynomial(ascending); }

/// Random polynomial with up to `terms` terms of total degree <= max_degree
/// and integer coefficients in [-bound, bound].
inline QPolynomial random_poly(const QRingPtr& r, std::mt19937_64& rng, int max_degree, int terms, long bound) {
  std::uniform_int_distribution<long> coeff(-bound, bound);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<QPolynomial::Term> out;
  for (int k = 0; k < terms; ++k) {
    std::vector<unsigned> e(r->size(), 0);
    int budget = deg(rng);
    for (int step = 0; step < budget; ++step) {
      e[std::uniform_int_distribution<std::size_t>(0, r->size() - 1)(rng)] += 1;
    }
    out.push_back({Monomial(e), Rational(coeff(rng))});
  }
  return QPolynomial(r, std::move(out));
}

inline Matrix<Rational> random_invertible(std::size_t n, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> entry(-bound, bound);
  Matrix<Rational> m;
  do {
    m.assign(n, std::vector<Rational>(n));
    for (auto& row : m) {
      for (auto& c : row) c = Rational(entry(rng));
    }
  } while (determinant(m, Rational(1L)).is_zero());
  return m;
}

}  // namespace nkinf::test
