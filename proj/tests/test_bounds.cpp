#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "nkinf/bounds.hpp"

using namespace nkinf;

TEST_CASE("bound_nk examples") {
  CHECK(bound_nk(3, 2) == 3);
  CHECK(bound_nk(2, 5) == 4);
  std::vector<SingularComponent> line{{1, 1}};
  CHECK(bound_nk(3, 3, line) == 6);
  CHECK_THROWS_AS(bound_nk(1, 3), std::invalid_argument);
}

TEST_CASE("bound_superpolar examples") {
  CHECK(bound_superpolar(3, 3) == 8);
  CHECK(bound_superpolar(4, 2) == 2);
  std::vector<SingularComponent> conic{{2, 1}};
  CHECK(bound_superpolar(3, 3, conic) == 6);
  CHECK_THROWS_AS(bound_superpolar(1, 2), std::invalid_argument);
}

TEST_CASE("bound_kinf examples") {
  CHECK(bound_kinf(3, 2) == 3);
  std::vector<SingularComponent> line{{1, 1}};
  CHECK(bound_kinf(3, 2, line) == 3);
  CHECK(bound_kinf(4, 3) == 13);
  CHECK_THROWS_AS(bound_kinf(2, 3), std::invalid_argument);
}

TEST_CASE("bound_nk is the geometric sum of powers of d - 1") {
  for (int d = 3; d <= 9; ++d) {
    for (int n = 2; n <= 6; ++n) {
      // (d-1)^0 + (d-1)^1 + ... + (d-1)^(n-1), the expansion of the quotient.
      std::int64_t sum = 0;
      std::int64_t power = 1;
      for (int k = 0; k <= n - 1; ++k) {
        sum += power;
        power *= d - 1;
      }
      CHECK(bound_nk(d, n) == sum);
    }
  }
}

TEST_CASE("bounds do not increase with the singular locus") {
  for (int d = 3; d <= 6; ++d) {
    for (int n = 2; n <= 4; ++n) {
      std::vector<SingularComponent> sing;
      auto nk = bound_nk(d, n, sing);
      auto sp = bound_superpolar(d, n, sing);
      auto ki = bound_kinf(d, n, sing);
      for (int k = 1; k <= 4; ++k) {
        sing.push_back({k, 1 + k % 2});
        CHECK(bound_nk(d, n, sing) <= nk);
        CHECK(bound_superpolar(d, n, sing) <= sp);
        // kinf adds r, so one more component costs d_i dim S_i - 1 >= 0.
        CHECK(bound_kinf(d, n, sing) <= ki);
        nk = bound_nk(d, n, sing);
        sp = bound_superpolar(d, n, sing);
        ki = bound_kinf(d, n, sing);
      }
    }
  }
}

TEST_CASE("invalid singular components are rejected") {
  std::vector<SingularComponent> point{{1, 0}};
  CHECK_THROWS_AS(bound_nk(3, 3, point), std::invalid_argument);
  std::vector<SingularComponent> bad{{0, 1}};
  CHECK_THROWS_AS(bound_superpolar(3, 3, bad), std::invalid_argument);
  CHECK_THROWS_AS(bound_nk(3, 1), std::invalid_argument);
}
