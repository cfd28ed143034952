#include "nkinf/field.hpp"

#include <cctype>

namespace nkinf {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("empty integer");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw std::invalid_argument("bad integer '" + std::string(s) + "'");
      }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  q_ /= o.q_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational");
  Rational r;
  r.q_ = 1 / q_;
  return r;
}

Rational gcd(const Rational& a, const Rational& b) {
  mpz_class num;
  mpz_class den;
  mpz_gcd(num.get_mpz_t(), a.raw().get_num_mpz_t(), b.raw().get_num_mpz_t());
  mpz_lcm(den.get_mpz_t(), a.raw().get_den_mpz_t(), b.raw().get_den_mpz_t());
  if (num == 0) return Rational(0L);
  return Rational(num, den);
}

PrimeFieldElement PrimeFieldElement::inverse() const {
  if (residue_ == 0) throw std::domain_error("inverse of zero in prime field");
  // Extended Euclid on (modulus, residue); both fit in 63 bits.
  std::int64_t r0 = static_cast<std::int64_t>(modulus_);
  std::int64_t r1 = static_cast<std::int64_t>(residue_);
  std::int64_t t0 = 0;
  std::int64_t t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += static_cast<std::int64_t>(modulus_);
  return {static_cast<std::uint64_t>(t0), modulus_};
}

Rational RationalField::canonical_scale(std::span<const Rational> coeffs) const {
  if (coeffs.empty()) return one();
  Rational g = coeffs.front();
  for (const auto& c : coeffs.subspan(1)) g = gcd(g, c);
  Rational scale = g.abs().inverse();
  if (coeffs.front().sign() < 0) scale = -scale;
  return scale;
}

std::pair<Rational, Rational> RationalField::cofactors(const Rational& target,
                                                       const Rational& pivot) const {
  Rational g = gcd(target, pivot);
  Rational a = pivot / g;
  Rational b = target / g;
  if (a.sign() < 0) return {-a, -b};
  return {a, b};
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
  if (modulus < 3 || modulus >= (std::uint64_t{1} << 62) || !is_probable_prime(modulus)) {
    throw std::invalid_argument("prime field modulus must be an odd prime below 2^62");
  }
}

PrimeFieldElement PrimeField::from_int(std::int64_t v) const {
  auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return {static_cast<std::uint64_t>(r), p_};
}

PrimeFieldElement PrimeField::from_rational(const Rational& r) const {
  auto reduce = [this](const mpz_class& z) {
    mpz_class m;
    mpz_fdiv_r_ui(m.get_mpz_t(), z.get_mpz_t(), p_);
    return PrimeFieldElement(m.get_ui(), p_);
  };
  PrimeFieldElement den = reduce(r.denominator());
  if (den.is_zero()) throw std::domain_error("denominator divisible by the field characteristic");
  return reduce(r.numerator()) / den;
}

PrimeFieldElement PrimeField::canonical_scale(std::span<const PrimeFieldElement> coeffs) const {
  if (coeffs.empty()) return one();
  return coeffs.front().inverse();
}

std::pair<PrimeFieldElement, PrimeFieldElement> PrimeField::cofactors(
    const PrimeFieldElement& target, const PrimeFieldElement& pivot) const {
  return {one(), target / pivot};
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace nkinf
