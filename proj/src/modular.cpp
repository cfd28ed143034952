#include "nkinf/modular.hpp"

#include <stdexcept>

namespace nkinf {

std::uint64_t PrimeSequence::next() {
  do {
    if (last_ < 5) throw std::runtime_error("prime sequence exhausted");
    last_ -= (last_ % 2 == 0) ? 1 : 2;
  } while (!is_probable_prime(last_));
  return last_;
}

mpz_class crt(const mpz_class& a, const mpz_class& m, std::uint64_t b, std::uint64_t p) {
  mpz_class pz(std::to_string(p));
  mpz_class minv;
  if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()) == 0) {
    throw std::invalid_argument("crt moduli are not coprime");
  }
  // x = a + m * ((b - a) * m^-1 mod p)
  mpz_class k = (mpz_class(std::to_string(b)) - a) * minv;
  mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), pz.get_mpz_t());
  return a + m * k;
}

std::optional<Rational> rational_reconstruct(const mpz_class& a, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = a % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return Rational(r1, t1);
}

void ModularLift::add(const std::vector<Polynomial<PrimeField>>& image) {
  if (primes_ == 0) {
    residues_.resize(image.size());
  } else if (image.size() != residues_.size()) {
    throw std::invalid_argument("modular images of different shapes");
  }
  if (image.empty()) {
    ++primes_;
    return;
  }
  std::uint64_t p = image.front().field().modulus();
  for (std::size_t i = 0; i < image.size(); ++i) {
    auto& acc = residues_[i];
    std::map<Monomial, std::uint64_t> fresh;
    for (const auto& t : image[i].terms()) fresh.emplace(t.monomial, t.coeff.residue());
    for (auto& [m, value] : acc) {
      auto it = fresh.find(m);
      value = crt(value, modulus_, it == fresh.end() ? 0 : it->second, p);
      if (it != fresh.end()) fresh.erase(it);
    }
    for (const auto& [m, r] : fresh) acc.emplace(m, crt(0, modulus_, r, p));
  }
  modulus_ *= mpz_class(std::to_string(p));
  ++primes_;
}

std::optional<std::vector<QPolynomial>> ModularLift::reconstruct() const {
  std::vector<QPolynomial> out;
  out.reserve(residues_.size());
  for (const auto& acc : residues_) {
    std::vector<QPolynomial::Term> terms;
    for (const auto& [m, value] : acc) {
      if (value == 0) continue;
      auto q = rational_reconstruct(value, modulus_);
      if (!q) return std::nullopt;
      terms.push_back({m, *q});
    }
    out.emplace_back(ring_, std::move(terms));
  }
  return out;
}

}  // namespace nkinf
