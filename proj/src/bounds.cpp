#include "nkinf/bounds.hpp"

#include <stdexcept>

namespace nkinf {

namespace {

std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("bound overflows 64 bits");
  }
  return r;
}

void check_components(std::span<const SingularComponent> sing) {
  for (const auto& c : sing) {
    if (c.degree < 1 || c.dimension < 1) {
      throw std::invalid_argument("singular components need positive degree and dimension");
    }
  }
}

std::int64_t weighted_degree_sum(std::span<const SingularComponent> sing) {
  std::int64_t s = 0;
  for (const auto& c : sing) s += std::int64_t{c.degree} * c.dimension;
  return s;
}

std::int64_t degree_sum(std::span<const SingularComponent> sing) {
  std::int64_t s = 0;
  for (const auto& c : sing) s += c.degree;
  return s;
}

void check_args(int d, int n, int min_d) {
  if (d < min_d) throw std::invalid_argument("degree too small for this bound");
  if (n < 2) throw std::invalid_argument("bounds need at least two variables");
}

}  // namespace

std::int64_t bound_nk(int d, int n, std::span<const SingularComponent> sing) {
  check_args(d, n, 2);
  check_components(sing);
  std::int64_t head = d == 2 ? n - 1 : (checked_pow(d - 1, n) - 1) / (d - 2);
  return head - weighted_degree_sum(sing);
}

std::int64_t bound_superpolar(int d, int n, std::span<const SingularComponent> sing) {
  check_args(d, n, 2);
  check_components(sing);
  std::int64_t head = n == 2 ? d - 2 : checked_pow(d, n - 1) - 1;
  return head - degree_sum(sing);
}

std::int64_t bound_kinf(int d, int n, std::span<const SingularComponent> sing) {
  check_args(d, n, 3);
  check_components(sing);
  return (checked_pow(d - 1, n) - 1) / (d - 2) - weighted_degree_sum(sing) + static_cast<std::int64_t>(sing.size());
}

}  // namespace nkinf
