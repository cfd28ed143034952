#include <doctest.h>

#include <random>

#include "nkinf/modular.hpp"
#include "support.hpp"

using namespace nkinf;

TEST_CASE("prime sequence descends through primes below 2^62") {
  PrimeSequence primes;
  std::uint64_t last = std::uint64_t{1} << 62;
  for (int k = 0; k < 20; ++k) {
    auto p = primes.next();
    CHECK(p < last);
    CHECK(is_probable_prime(p));
    for (auto q = p + 2; q < last; q += 2) CHECK_FALSE(is_probable_prime(q));
    last = p;
  }
}

TEST_CASE("crt combines residues") {
  mpz_class m = 7;
  auto x = crt(3, m, 4, 11);
  CHECK(x == 59);  // 59 = 3 mod 7 = 4 mod 11
  CHECK_THROWS(crt(1, mpz_class(22), 1, 11));
}

TEST_CASE("rational reconstruction recovers small fractions") {
  mpz_class m("4611686018427387847");  // prime
  m *= mpz_class("4611686018427387817");
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    long num = static_cast<long>(rng() % 2000001) - 1000000;
    long den = static_cast<long>(rng() % 1000000) + 1;
    Rational q{mpz_class(num), mpz_class(den)};
    mpz_class inv;
    mpz_class d = q.denominator();
    REQUIRE(mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) != 0);
    mpz_class image = q.numerator() * inv;
    mpz_fdiv_r(image.get_mpz_t(), image.get_mpz_t(), m.get_mpz_t());
    auto back = rational_reconstruct(image, m);
    REQUIRE(back);
    REQUIRE(*back == q);
  }
  // Mod 11 only 0, +-1, +-2 and +-1/2 are small enough; 4 is none of them.
  CHECK_FALSE(rational_reconstruct(mpz_class(4), mpz_class(11)).has_value());
  CHECK(*rational_reconstruct(mpz_class(5), mpz_class(11)) == Rational(mpz_class(-1), mpz_class(2)));
}

TEST_CASE("modular lift reproduces a rational polynomial family") {
  auto r = test::ring("x,y");
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    // Monic targets with coefficients of about 150 bits.
    std::vector<QPolynomial> targets;
    for (int k = 0; k < 2; ++k) {
      auto p = test::random_poly(r, rng, 4, 5, 1000000000);
      if (p.is_zero()) p = test::poly(r, "x");
      auto lc = p.leading_term().coeff;
      auto big = Rational(mpz_class("123456789012345678901234567890123")) / Rational(mpz_class("98765432109876543"));
      targets.push_back((p + QPolynomial::constant(r, big)).scaled(lc.inverse()));
    }
    ModularLift lift(r);
    PrimeSequence primes;
    std::optional<std::vector<QPolynomial>> got;
    for (int k = 0; k < 12 && !(got && *got == targets); ++k) {
      auto pr = make_ring<PrimeField>(r->names(), PrimeField(primes.next()));
      std::vector<Polynomial<PrimeField>> image;
      for (const auto& t : targets) image.push_back(reduce_mod(t, pr));
      lift.add(image);
      got = lift.reconstruct();
    }
    REQUIRE(got);
    REQUIRE(*got == targets);
  }
}
