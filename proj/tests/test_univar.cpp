#include <doctest.h>

#include <cmath>
#include <random>

#include "nkinf/univariate.hpp"
#include "support.hpp"

using namespace nkinf;
using nkinf::test::univar;

namespace {

UnivariatePolynomial from_roots(const std::vector<Rational>& roots) {
  UnivariatePolynomial p{1};
  for (const auto& r : roots) p = p * UnivariatePolynomial::linear_factor(r);
  return p;
}

UnivariatePolynomial random_univar(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> c(-bound, bound);
  std::vector<Rational> coeffs;
  for (int i = 0; i <= degree; ++i) coeffs.emplace_back(c(rng));
  if (coeffs.back().is_zero()) coeffs.back() = Rational(1L);
  return UnivariatePolynomial(std::move(coeffs));
}

// |p(r)| relative to sum |a_i| |r|^i, the size of the terms being cancelled.
double relative_residual(const UnivariatePolynomial& p, std::complex<double> r) {
  std::complex<long double> z(r.real(), r.imag());
  long double scale = 0;
  long double mag = std::abs(z);
  for (int i = 0; i <= p.degree(); ++i) {
    scale += std::abs(static_cast<long double>((p.coefficient(i) / p.leading()).to_double())) * std::pow(mag, i);
  }
  auto value = p.monic().evaluate(z);
  if (value == std::complex<long double>(0)) return 0;
  return static_cast<double>(std::abs(value) / scale);
}

}  // namespace

TEST_CASE("gcd examples") {
  CHECK(gcd_univar(univar({0, -1, 1}), univar({0, -2, 1})) == univar({0, 1}));
  auto p = univar({4, 0, -6});
  CHECK(gcd_univar(p, UnivariatePolynomial{}) == p.canonical());
  CHECK(gcd_univar(UnivariatePolynomial{}, p) == univar({-2, 0, 3}));
  CHECK(gcd_univar(univar({-2, 0, 1}), univar({-3, 0, 1})) == univar({1}));
  CHECK_THROWS_AS(gcd_univar(UnivariatePolynomial{}, UnivariatePolynomial{}), std::invalid_argument);
}

TEST_CASE("squarefree examples") {
  CHECK(squarefree_part(univar({0, 0, 1})) == univar({0, 1}));
  CHECK(squarefree_part(univar({0, 0, -1, 1})) == univar({0, -1, 1}));
  CHECK(squarefree_part(univar({-1, 0, 1})) == univar({-1, 0, 1}));
  CHECK_THROWS(squarefree_part(UnivariatePolynomial{}));
}

TEST_CASE("rational_roots examples") {
  CHECK(rational_roots(univar({-1, 2})) == std::vector<Rational>{Rational(mpz_class(1), mpz_class(2))});
  CHECK(rational_roots(univar({-2, 0, 1})).empty());
  CHECK(rational_roots(univar({0, -3, 1})) == std::vector<Rational>{Rational(0L), Rational(3L)});
  CHECK(rational_roots(univar({7})).empty());
}

TEST_CASE("approx_roots examples") {
  auto a = approx_roots(univar({-2, 0, 1}));
  REQUIRE(a.converged);
  REQUIRE(a.roots.size() == 2);
  std::vector<double> re{a.roots[0].real(), a.roots[1].real()};
  std::sort(re.begin(), re.end());
  CHECK(std::abs(re[0] + std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(re[1] - std::sqrt(2.0)) < 1e-10);

  auto b = approx_roots(univar({0, 1}));
  REQUIRE(b.roots.size() == 1);
  CHECK(std::abs(b.roots[0]) < 1e-10);

  auto c = approx_roots(univar({1, 0, 1}));
  REQUIRE(c.roots.size() == 2);
  for (const auto& r : c.roots) {
    CHECK(std::abs(r.real()) < 1e-10);
    CHECK(std::abs(std::abs(r.imag()) - 1) < 1e-10);
  }
  CHECK_THROWS(approx_roots(univar({3})));
}

TEST_CASE("gcd divides both inputs and recovers planted common roots") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<long> small(-20, 20);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> common, left, right;
    for (int k = 0; k < 2; ++k) common.emplace_back(mpz_class(small(rng)), mpz_class(small(rng) % 5 == 0 ? 1 : 3));
    left.emplace_back(small(rng) + 100);
    right.emplace_back(small(rng) - 100);
    auto c = from_roots(common);
    auto p = c * from_roots(left);
    auto q = c * from_roots(right);
    auto g = gcd_univar(p, q);
    REQUIRE(g.divides(p));
    REQUIRE(g.divides(q));
    REQUIRE(g == c.canonical());
  }
}

TEST_CASE("squarefree part is idempotent and keeps the roots") {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<long> small(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> roots;
    int count = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < count; ++k) roots.emplace_back(mpz_class(small(rng)), mpz_class(1 + rng() % 3));
    auto p = from_roots(roots) * from_roots({roots.front()}) * random_univar(rng, 2, 5);
    if (p.is_zero()) continue;
    auto s = squarefree_part(p);
    REQUIRE(squarefree_part(s) == s);
    REQUIRE(rational_roots(s) == rational_roots(p));
    REQUIRE(s.divides(p));
    // Squarefree: coprime to its derivative.
    if (s.degree() >= 1) REQUIRE(gcd_univar(s, s.derivative()) == univar({1}));
  }
}

TEST_CASE("rational roots of products of planted linear factors") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> num(-50, 50);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> roots;
    int count = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < count; ++k) roots.emplace_back(mpz_class(num(rng)), mpz_class(1 + rng() % 12));
    // An irreducible quadratic contributes no rational roots.
    auto p = from_roots(roots) * univar({2 + static_cast<long>(rng() % 5), 0, 1});
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    REQUIRE(rational_roots(p) == roots);
    for (const auto& r : roots) REQUIRE(p.evaluate(r).is_zero());
  }
}

TEST_CASE("approximate roots pass the residual check") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    int degree = 1 + static_cast<int>(rng() % 12);
    auto p = squarefree_part(random_univar(rng, degree, 50));
    if (p.degree() < 1) continue;
    const double tol = 1e-10;
    auto a = approx_roots(p, tol);
    REQUIRE(a.converged);
    REQUIRE(a.roots.size() == static_cast<std::size_t>(p.degree()));
    for (const auto& r : a.roots) REQUIRE(relative_residual(p, r) <= tol);
  }
}

TEST_CASE("shift and evaluation are consistent") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_univar(rng, 5, 9);
    Rational c(mpz_class(static_cast<long>(rng() % 21) - 10), mpz_class(1 + rng() % 4));
    Rational z(mpz_class(static_cast<long>(rng() % 41) - 20), mpz_class(1 + rng() % 6));
    REQUIRE(p.shifted(c).evaluate(z + c) == p.evaluate(z));
  }
}
