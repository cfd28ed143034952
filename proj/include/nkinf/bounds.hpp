#pragma once

// Closed-form upper bounds on the number of asymptotic non-regular values of
// a degree-d polynomial in n variables, reduced by the positive-dimensional
// components of its singular locus.

#include <cstdint>
#include <span>

namespace nkinf {

struct SingularComponent {
  int degree = 1;
  int dimension = 1;
};

/// ((d-1)^n - 1)/(d-2) - sum d_i dim S_i, or n-1 - sum d_i dim S_i when d = 2.
std::int64_t bound_nk(int d, int n, std::span<const SingularComponent> sing = {});

/// d^(n-1) - 1 - sum d_i for n > 2; d - 2 - sum d_i for n = 2. Assumes the
/// non-trivial set is nonempty.
std::int64_t bound_superpolar(int d, int n, std::span<const SingularComponent> sing = {});

/// ((d-1)^n - 1)/(d-2) - sum d_i dim S_i + r; needs d >= 3.
std::int64_t bound_kinf(int d, int n, std::span<const SingularComponent> sing = {});

}  // namespace nkinf
