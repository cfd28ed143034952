#pragma once

// Exact coefficient fields: the rationals (GMP-backed) and prime fields
// F_p with p < 2^62. Both expose the same Field interface so the polynomial
// and Groebner code is written once.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace nkinf {

class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpz_class& integer) : q_(integer) {}
  Rational(const mpz_class& numerator, const mpz_class& denominator);

  /// Parses "int" or "int/int" (optional leading sign).
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { Rational r; r.q_ = -q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  Rational abs() const { Rational r; r.q_ = ::abs(q_); return r; }
  Rational inverse() const;

 private:
  mpq_class q_;
};

/// gcd(n1, n2) / lcm(d1, d2); zero only when both inputs are zero.
Rational gcd(const Rational& a, const Rational& b);

class PrimeFieldElement {
 public:
  PrimeFieldElement() = default;
  PrimeFieldElement(std::uint64_t residue, std::uint64_t modulus)
      : residue_(residue % modulus), modulus_(modulus) {}

  std::uint64_t residue() const { return residue_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return residue_ == 0; }
  bool is_one() const { return residue_ == 1; }
  std::string str() const { return std::to_string(residue_); }

  PrimeFieldElement& operator+=(const PrimeFieldElement& o) {
    check_same_field(o);
    residue_ += o.residue_;
    if (residue_ >= modulus_) residue_ -= modulus_;
    return *this;
  }
  PrimeFieldElement& operator-=(const PrimeFieldElement& o) {
    check_same_field(o);
    residue_ = residue_ >= o.residue_ ? residue_ - o.residue_ : residue_ + modulus_ - o.residue_;
    return *this;
  }
  PrimeFieldElement& operator*=(const PrimeFieldElement& o) {
    check_same_field(o);
    __extension__ using u128 = unsigned __int128;
    residue_ = static_cast<std::uint64_t>(static_cast<u128>(residue_) * o.residue_ % modulus_);
    return *this;
  }
  PrimeFieldElement& operator/=(const PrimeFieldElement& o) { return *this *= o.inverse(); }

  friend PrimeFieldElement operator+(PrimeFieldElement a, const PrimeFieldElement& b) { return a += b; }
  friend PrimeFieldElement operator-(PrimeFieldElement a, const PrimeFieldElement& b) { return a -= b; }
  friend PrimeFieldElement operator*(PrimeFieldElement a, const PrimeFieldElement& b) { return a *= b; }
  friend PrimeFieldElement operator/(PrimeFieldElement a, const PrimeFieldElement& b) { return a /= b; }
  PrimeFieldElement operator-() const { return {residue_ == 0 ? 0 : modulus_ - residue_, modulus_}; }

  friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    return a.residue_ == b.residue_ && a.modulus_ == b.modulus_;
  }

  PrimeFieldElement inverse() const;

 private:
  void check_same_field(const PrimeFieldElement& o) const {
    if (modulus_ != o.modulus_) [[unlikely]] throw std::invalid_argument("prime field mismatch");
  }

  std::uint64_t residue_ = 0;
  std::uint64_t modulus_ = 0;
};

/// The field Q. Canonical scaling makes a coefficient vector primitive integer
/// with a positive first entry.
class RationalField {
 public:
  using Element = Rational;
  /// Reductions are fraction-free, so coefficient content must be stripped.
  static constexpr bool kStripsContent = true;

  Element zero() const { return Rational(0L); }
  Element one() const { return Rational(1L); }
  Element from_int(std::int64_t v) const { return Rational(static_cast<long>(v)); }

  /// Factor s such that s * coeffs is primitive integer with coeffs[0] * s > 0.
  Element canonical_scale(std::span<const Element> coeffs) const;

  /// (a, b) with a * target == b * pivot and a != 0; integral when both inputs are.
  std::pair<Element, Element> cofactors(const Element& target, const Element& pivot) const;

  std::string name() const { return "QQ"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class PrimeField {
 public:
  using Element = PrimeFieldElement;
  static constexpr bool kStripsContent = false;

  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const { return p_; }
  Element zero() const { return {0, p_}; }
  Element one() const { return {1, p_}; }
  Element from_int(std::int64_t v) const;
  /// Image of a rational; throws std::domain_error if p divides the denominator.
  Element from_rational(const Rational& r) const;

  /// Factor making the first coefficient 1.
  Element canonical_scale(std::span<const Element> coeffs) const;
  std::pair<Element, Element> cofactors(const Element& target, const Element& pivot) const;

  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

bool is_probable_prime(std::uint64_t n);

}  // namespace nkinf
