#pragma once

// Detection of a finite superset of the non-trivial Malgrange non-regular
// values of f: C^n -> C, by the super-polar curve method and by iterated
// polar curves on successive hyperplane slices. Both are probabilistic; runs
// with independent random coefficients are intersected.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkinf/bounds.hpp"
#include "nkinf/nonproper.hpp"
#include "nkinf/parallel.hpp"

namespace nkinf {

enum class Method { super_polar, iterated_polar };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// The dimension guard rejected every sample within the retry budget.
class DimensionGuardExhausted : public std::runtime_error {
 public:
  explicit DimensionGuardExhausted(std::vector<int> dimensions);
  const std::vector<int>& dimensions() const { return dimensions_; }

 private:
  std::vector<int> dimensions_;
};

struct DetectorConfig {
  std::uint64_t seed = 0;
  int runs = 3;
  std::int64_t coeff_bound = 9999;
  bool force_general_case = false;
  double tolerance = 1e-10;
  int retry_budget = 5;
  /// Entry bound of the random coordinate change used by iterated polars.
  std::int64_t matrix_bound = 9;
  std::vector<SingularComponent> singular_components;
  Execution execution = Execution::parallel;
};

/// Coefficients of g_i = sum_j a_ij df/dx_j + sum_{j,k} b_ijk x_k df/dx_j and,
/// in the general case, of h = sum_j beta_j df/dx_j.
struct SuperPolarCoefficients {
  std::vector<std::vector<std::int64_t>> a;               // (n-1) x n
  std::vector<std::vector<std::vector<std::int64_t>>> b;  // (n-1) x n x n, b[i][j][k]
  std::vector<std::int64_t> beta;                         // n, or empty
};

/// Seeded sampler of nonzero integers in [-bound, bound]. The engine is
/// std::mt19937_64 and the draw is an explicit rejection step, so the
/// sequence is identical on every platform.
class CoefficientSampler {
 public:
  CoefficientSampler(std::uint64_t seed, std::int64_t bound);
  std::int64_t next();
  std::int64_t next_in(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
  std::int64_t bound_;
};

/// Pairwise distinct seeds for the runs of one report.
std::uint64_t derive_run_seed(std::uint64_t seed, std::size_t run);

SuperPolarCoefficients sample_super_polar(std::size_t n, CoefficientSampler& sampler, bool general);

QIdeal super_polar_ideal(const QPolynomial& f, const SuperPolarCoefficients& coeffs);

bool is_singular_locus_finite(const QPolynomial& f);

ValueSet critical_values(const QPolynomial& f, double tolerance = 1e-10);

/// Canonical squarefree gcd of all inputs.
UnivariatePolynomial intersect_runs(std::span<const UnivariatePolynomial> rhos);

struct StepRecord {
  int step = 0;                            // i in f_{i-1}, 1-based
  std::vector<std::string> slice_variables;
  std::vector<std::int64_t> beta;
  int attempts = 0;
  int dimension = -1;
  ValueSet values;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::string variant;  // "special", "general" or "iterated"
  int attempts = 0;
  int dimension = -1;   // of the accepted W (max over steps for iterated)
  std::optional<SuperPolarCoefficients> coefficients;
  std::vector<std::vector<std::int64_t>> coordinate_change;
  std::vector<StepRecord> steps;
  ValueSet values;
  double millis = 0;
};

struct BoundsReport {
  std::optional<std::int64_t> nk;
  std::optional<std::int64_t> superpolar;
  std::optional<std::int64_t> kinf;
};

struct DetectionReport {
  std::string input;
  std::vector<std::string> variables;
  int degree = 0;
  Method method = Method::super_polar;
  DetectorConfig config;
  std::vector<RunRecord> runs;
  ValueSet s_final;
  ValueSet critical;
  BoundsReport bounds;
  /// Roots of s_final farther than 1e-8 from every critical value; numeric
  /// and therefore approximate.
  std::vector<std::complex<double>> approx_noncritical;
  std::vector<std::string> warnings;
};

DetectionReport run_super_polar(const QPolynomial& f, const DetectorConfig& config);

/// One iterated-polar pass with the given seed.
DetectionReport iterated_polar_run(const QPolynomial& f, std::uint64_t seed, const DetectorConfig& config = {});

/// config.runs iterated-polar passes, intersected.
DetectionReport run_iterated_polar(const QPolynomial& f, const DetectorConfig& config);

DetectionReport run_detection(const QPolynomial& f, Method method, const DetectorConfig& config);

BoundsReport compute_bounds(int d, int n, std::span<const SingularComponent> sing);

}  // namespace nkinf
