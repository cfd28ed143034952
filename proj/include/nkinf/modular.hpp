#pragma once

// Multi-modular lifting: images of a family of monic polynomials over F_p
// for several primes are combined by CRT and rational reconstruction.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "nkinf/field.hpp"
#include "nkinf/polynomial.hpp"

namespace nkinf {

/// Primes below 2^62 in decreasing order.
class PrimeSequence {
 public:
  std::uint64_t next();

 private:
  std::uint64_t last_ = std::uint64_t{1} << 62;
};

/// The x in [0, m*p) with x = a (mod m) and x = b (mod p); m and p coprime.
mpz_class crt(const mpz_class& a, const mpz_class& m, std::uint64_t b, std::uint64_t p);

/// n/d = a (mod m) with |n|, d <= sqrt(m/2), or nullopt when there is none.
std::optional<Rational> rational_reconstruct(const mpz_class& a, const mpz_class& m);

/// Accumulates modular images of a fixed-shape list of polynomials. A
/// monomial missing from an image counts as a zero coefficient there.
class ModularLift {
 public:
  explicit ModularLift(QRingPtr ring) : ring_(std::move(ring)) {}

  /// Image modulo a prime not used before; sizes must agree between calls.
  void add(const std::vector<Polynomial<PrimeField>>& image);

  /// The common rational preimage, if every coefficient reconstructs.
  std::optional<std::vector<QPolynomial>> reconstruct() const;

  std::size_t primes() const { return primes_; }
  const mpz_class& modulus() const { return modulus_; }

 private:
  QRingPtr ring_;
  mpz_class modulus_{1};
  std::size_t primes_ = 0;
  std::vector<std::map<Monomial, mpz_class>> residues_;
};

}  // namespace nkinf
