#include "nkinf/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nkinf {

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

UnivariatePolynomial::UnivariatePolynomial(std::initializer_list<long> ascending) {
  for (long c : ascending) coeffs_.emplace_back(c);
  trim();
}

UnivariatePolynomial UnivariatePolynomial::linear_factor(const Rational& root) {
  return UnivariatePolynomial(std::vector<Rational>{-root, Rational(1L)});
}

void UnivariatePolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Rational& UnivariatePolynomial::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational UnivariatePolynomial::coefficient(int i) const {
  if (i < 0 || i > degree()) return Rational(0L);
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational UnivariatePolynomial::evaluate(const Rational& z) const {
  Rational acc(0L);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<long double> UnivariatePolynomial::evaluate(std::complex<long double> z) const {
  std::complex<long double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + static_cast<long double>(it->to_double());
  return acc;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
  return UnivariatePolynomial(std::move(d));
}

UnivariatePolynomial UnivariatePolynomial::canonical() const {
  if (coeffs_.empty()) return *this;
  Rational g = coeffs_.back();
  for (const auto& c : coeffs_) g = gcd(g, c);
  Rational scale = g.abs().inverse();
  if (coeffs_.back().sign() < 0) scale = -scale;
  std::vector<Rational> out;
  for (const auto& c : coeffs_) out.push_back(c * scale);
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial UnivariatePolynomial::monic() const {
  if (coeffs_.empty()) return *this;
  Rational inv = coeffs_.back().inverse();
  std::vector<Rational> out;
  for (const auto& c : coeffs_) out.push_back(c * inv);
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial UnivariatePolynomial::shifted(const Rational& c) const {
  // Horner in the ring: acc = acc * (z - c) + a_i
  UnivariatePolynomial lin = linear_factor(c);
  UnivariatePolynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + constant(*it);
  return acc;
}

UnivariatePolynomial operator+(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0L));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0L));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0L));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UnivariatePolynomial(std::move(out));
}

std::pair<UnivariatePolynomial, UnivariatePolynomial> UnivariatePolynomial::divmod(
    const UnivariatePolynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  int dd = divisor.degree();
  std::vector<Rational> quot(static_cast<std::size_t>(std::max(degree() - dd + 1, 0)), Rational(0L));
  Rational inv = divisor.leading().inverse();
  for (int k = degree(); k >= dd; --k) {
    const Rational& top = rem[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    Rational factor = top * inv;
    quot[static_cast<std::size_t>(k - dd)] = factor;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= factor * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  return {UnivariatePolynomial(std::move(quot)), UnivariatePolynomial(std::move(rem))};
}

bool UnivariatePolynomial::divides(const UnivariatePolynomial& multiple) const {
  if (is_zero()) return multiple.is_zero();
  return multiple.divmod(*this).second.is_zero();
}

std::string UnivariatePolynomial::str(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string text = c.abs().str();
    if (first) {
      if (c.sign() < 0) out << '-';
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << text;
      continue;
    }
    if (text != "1") out << text << '*';
    out << var;
    if (k > 1) out << '^' << k;
  }
  return out.str();
}

UnivariatePolynomial gcd_univar(const UnivariatePolynomial& p, const UnivariatePolynomial& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  UnivariatePolynomial a = p.canonical();
  UnivariatePolynomial b = q.canonical();
  while (!b.is_zero()) {
    auto r = a.divmod(b).second.canonical();
    a = std::move(b);
    b = std::move(r);
  }
  return a.canonical();
}

UnivariatePolynomial squarefree_part(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree part of the zero polynomial");
  if (p.is_constant()) return UnivariatePolynomial{1};
  auto g = gcd_univar(p, p.derivative());
  return p.divmod(g).first.canonical();
}

namespace {

struct Factorization {
  std::vector<std::pair<mpz_class, unsigned>> primes;
  bool complete = false;
};

// Trial division, accepting a final cofactor that is a probable prime.
Factorization factor_integer(mpz_class n) {
  Factorization f;
  n = abs(n);
  for (unsigned long d = 2; d <= 1000000UL && n > 1; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++e;
    }
    f.primes.emplace_back(mpz_class(d), e);
  }
  if (n == 1) {
    f.complete = true;
  } else if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    f.primes.emplace_back(n, 1);
    f.complete = true;
  }
  return f;
}

std::vector<mpz_class> divisors(const Factorization& f, std::size_t cap) {
  std::vector<mpz_class> out{1};
  for (const auto& [prime, exp] : f.primes) {
    std::size_t base = out.size();
    mpz_class power = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
      if (out.size() > cap) return {};
    }
  }
  return out;
}

// sum a_i num^i den^(n-i) == 0
bool is_root(const std::vector<mpz_class>& a, const mpz_class& num, const mpz_class& den) {
  // Homogeneous Horner: acc_k = acc_{k+1} * num + a_k * den^(n-k)
  mpz_class acc = 0;
  std::size_t n = a.size() - 1;
  std::vector<mpz_class> den_powers(n + 1);
  den_powers[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) den_powers[k] = den_powers[k - 1] * den;
  for (std::size_t k = n + 1; k-- > 0;) acc = acc * num + a[k] * den_powers[n - k];
  return acc == 0;
}

std::vector<mpz_class> integer_coefficients(const UnivariatePolynomial& p) {
  std::vector<mpz_class> a;
  auto canonical = p.canonical();
  for (const auto& c : canonical.coefficients()) a.push_back(c.numerator());
  return a;
}

// Sign of p at a dyadic/rational point, exact.
int sign_at(const UnivariatePolynomial& p, const Rational& x) { return p.evaluate(x).sign(); }

// Convergents of x with denominator at most `max_den`.
std::vector<Rational> convergents(const Rational& x, const mpz_class& max_den) {
  std::vector<Rational> out;
  mpz_class num = x.numerator();
  mpz_class den = x.denominator();
  mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  while (den != 0) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h = q * h_prev + h_prev2;
    mpz_class k = q * k_prev + k_prev2;
    if (k > max_den) break;
    out.emplace_back(h, k);
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    mpz_class r = num - q * den;
    num = den;
    den = r;
  }
  return out;
}

// Rational roots located from numeric approximations: each real approximate
// root is bracketed, bisected exactly to width below 1/(2 a_n^2), and the
// continued-fraction convergents of the midpoint are verified exactly.
std::vector<Rational> rational_roots_numeric(const UnivariatePolynomial& p) {
  std::vector<Rational> found;
  auto approx = approx_roots(p, 1e-12);
  mpz_class lead = abs(p.canonical().leading().numerator());
  mpz_class width_bound = 2 * lead * lead;
  for (const auto& r : approx.roots) {
    if (std::abs(r.imag()) > 1e-6 * (1.0 + std::abs(r.real()))) continue;
    double delta = 1e-9 * (1.0 + std::abs(r.real()));
    Rational lo, hi;
    bool bracketed = false;
    for (int widen = 0; widen < 40 && !bracketed; ++widen, delta *= 4) {
      lo = Rational(mpq_class(r.real() - delta).get_num(), mpq_class(r.real() - delta).get_den());
      hi = Rational(mpq_class(r.real() + delta).get_num(), mpq_class(r.real() + delta).get_den());
      int slo = sign_at(p, lo);
      int shi = sign_at(p, hi);
      if (slo == 0) {
        found.push_back(lo);
        bracketed = true;
        lo = hi;
      } else if (shi == 0) {
        found.push_back(hi);
        bracketed = true;
        lo = hi;
      } else if (slo != shi) {
        bracketed = true;
      }
    }
    if (!bracketed || lo == hi) continue;
    int slo = sign_at(p, lo);
    Rational two(2L);
    for (int step = 0; step < 4096; ++step) {
      Rational width = hi - lo;
      if (width * Rational(width_bound) < Rational(1L)) break;
      Rational mid = (lo + hi) / two;
      int s = sign_at(p, mid);
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      if (s == slo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    Rational mid = (lo + hi) / two;
    for (const auto& c : convergents(mid, lead)) {
      if (p.evaluate(c).is_zero()) found.push_back(c);
    }
  }
  return found;
}

}  // namespace

std::vector<Rational> rational_roots(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("rational roots of the zero polynomial");
  std::vector<Rational> roots;
  UnivariatePolynomial q = p.canonical();
  // Strip z^k.
  std::size_t zeros = 0;
  while (zeros < q.coefficients().size() && q.coefficients()[zeros].is_zero()) ++zeros;
  if (zeros > 0) {
    roots.emplace_back(0L);
    q = UnivariatePolynomial(std::vector<Rational>(q.coefficients().begin() + static_cast<std::ptrdiff_t>(zeros),
                                                   q.coefficients().end()));
  }
  if (q.degree() >= 1) {
    auto a = integer_coefficients(q);
    auto fa = factor_integer(a.front());
    auto fn = factor_integer(a.back());
    constexpr std::size_t kCap = 20000;
    std::vector<mpz_class> nums;
    std::vector<mpz_class> dens;
    if (fa.complete && fn.complete) {
      nums = divisors(fa, kCap);
      dens = divisors(fn, kCap);
    }
    if (!nums.empty() && !dens.empty() && nums.size() * dens.size() <= 4 * kCap) {
      for (const auto& d : dens) {
        for (const auto& n : nums) {
          mpz_class g;
          mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
          if (g != 1) continue;
          if (is_root(a, n, d)) roots.emplace_back(n, d);
          if (is_root(a, -n, d)) roots.emplace_back(-n, d);
        }
      }
    } else {
      auto numeric = rational_roots_numeric(q);
      roots.insert(roots.end(), numeric.begin(), numeric.end());
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

RootApproximation approx_roots(const UnivariatePolynomial& p, double tolerance) {
  using C = std::complex<long double>;
  RootApproximation result;
  int n = p.degree();
  if (n < 1) throw std::invalid_argument("root approximation needs degree >= 1");

  // Monic coefficients in long double.
  std::vector<long double> a(static_cast<std::size_t>(n) + 1);
  const Rational& lead = p.leading();
  long double radius = 0;
  for (int i = 0; i <= n; ++i) {
    a[static_cast<std::size_t>(i)] = static_cast<long double>((p.coefficient(i) / lead).to_double());
    if (i < n) radius = std::max(radius, std::abs(a[static_cast<std::size_t>(i)]));
  }
  radius += 1;

  auto eval = [&](C z, C& value, C& deriv) {
    value = 0;
    deriv = 0;
    for (int i = n; i >= 0; --i) {
      deriv = deriv * z + value;
      value = value * z + a[static_cast<std::size_t>(i)];
    }
  };

  std::vector<C> z(static_cast<std::size_t>(n));
  constexpr long double kOffset = 0.4L;
  for (int k = 0; k < n; ++k) {
    long double angle = 2 * std::numbers::pi_v<long double> * k / n + kOffset;
    z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }

  constexpr int kMaxIterations = 200;
  const long double stop = static_cast<long double>(tolerance) * 1e-3L;
  for (int it = 1; it <= kMaxIterations; ++it) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      C value, deriv;
      eval(zk, value, deriv);
      if (value == C(0)) continue;
      C ratio = value / deriv;
      C sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += C(1) / (zk - z[static_cast<std::size_t>(j)]);
      }
      C step = ratio / (C(1) - ratio * sum);
      zk -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(zk)));
    }
    result.iterations = it;
    if (worst <= stop) {
      result.converged = true;
      break;
    }
  }
  // Two Newton polishing steps per root.
  for (auto& zk : z) {
    for (int s = 0; s < 2; ++s) {
      C value, deriv;
      eval(zk, value, deriv);
      if (deriv != C(0)) zk -= value / deriv;
    }
  }
  for (const auto& zk : z) {
    long double re = std::abs(zk.real()) < 1e-300L ? 0 : zk.real();
    long double im = std::abs(zk.imag()) <= static_cast<long double>(tolerance) * std::max(1.0L, std::abs(zk)) * 1e-2L ? 0 : zk.imag();
    result.roots.emplace_back(static_cast<double>(re), static_cast<double>(im));
  }
  std::sort(result.roots.begin(), result.roots.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return result;
}

}  // namespace nkinf
