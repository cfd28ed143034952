#include "nkinf/detector.hpp"

#include <chrono>
#include <limits>

namespace nkinf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

QPolynomial integer_combination(const QPolynomial& zero, std::span<const QPolynomial> polys,
                                std::span<const std::int64_t> weights) {
  QPolynomial sum = zero;
  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (weights[j] != 0) sum += polys[j].scaled(Rational(static_cast<long>(weights[j])));
  }
  return sum;
}

std::vector<QPolynomial> gradient(const QPolynomial& f) {
  std::vector<QPolynomial> g;
  for (std::size_t j = 0; j < f.ring().size(); ++j) g.push_back(partial_derivative(f, j));
  return g;
}

void check_input(const QPolynomial& f) {
  if (f.ring().size() < 2) throw std::invalid_argument("detection needs at least two variables");
  if (f.is_constant()) throw std::invalid_argument("detection needs a non-constant polynomial");
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

RunRecord super_polar_single(const QPolynomial& f, std::uint64_t seed, bool special, const DetectorConfig& config) {
  auto start = std::chrono::steady_clock::now();
  RunRecord run;
  run.seed = seed;
  run.variant = special ? "special" : "general";
  const std::size_t n = f.ring().size();
  const auto grad = gradient(f);
  CoefficientSampler sampler(seed, config.coeff_bound);

  std::vector<int> rejected;
  std::optional<QIdeal> accepted;
  for (int attempt = 1; attempt <= config.retry_budget + 1; ++attempt) {
    auto coeffs = sample_super_polar(n, sampler, !special);
    QIdeal w = super_polar_ideal(f, coeffs);
    if (!special) {
      QPolynomial h = integer_combination(QPolynomial(f.ring_ptr()), grad, coeffs.beta);
      w = with_rabinowitsch(w, h);
    }
    int dim = ideal_dimension(buchberger(w, MonomialOrder::grevlex(w.ring().size())));
    run.attempts = attempt;
    if (dim <= 1) {
      run.dimension = dim;
      run.coefficients = std::move(coeffs);
      accepted = std::move(w);
      break;
    }
    rejected.push_back(dim);
  }
  if (!accepted) throw DimensionGuardExhausted(rejected);

  NonpropernessOptions options;
  options.execution = config.execution;
  options.tolerance = config.tolerance;
  // The localization variable t sits at index 0 in the general case.
  std::size_t offset = special ? 0 : 1;
  for (std::size_t j = 0; j < n; ++j) options.coordinates.push_back(j + offset);
  run.values = nonproperness_values(*accepted, embed(f, accepted->ring_ptr()), options);
  run.millis = millis_since(start);
  return run;
}

std::vector<std::vector<std::int64_t>> sample_invertible_matrix(std::size_t n, CoefficientSampler& sampler,
                                                                std::int64_t bound) {
  for (int tries = 0; tries < 1000; ++tries) {
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
    Matrix<Rational> q(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] = sampler.next_in(-bound, bound);
        q[r][c] = Rational(static_cast<long>(m[r][c]));
      }
    }
    if (!determinant(q, Rational(1L)).is_zero()) return m;
  }
  throw std::runtime_error("could not sample an invertible coordinate change");
}

RunRecord iterated_single(const QPolynomial& f, std::uint64_t seed, const DetectorConfig& config) {
  auto start = std::chrono::steady_clock::now();
  RunRecord run;
  run.seed = seed;
  run.variant = "iterated";
  const std::size_t n = f.ring().size();
  CoefficientSampler sampler(seed, config.coeff_bound);
  run.coordinate_change = sample_invertible_matrix(n, sampler, config.matrix_bound);
  Matrix<Rational> change(n, std::vector<Rational>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) change[r][c] = Rational(static_cast<long>(run.coordinate_change[r][c]));
  }

  QPolynomial slice = substitute_linear(f, change);
  UnivariatePolynomial product{1};
  bool vertical = false;
  for (std::size_t step = 1; step < n; ++step) {
    if (step > 1) slice = restrict_hyperplane(slice, 0);
    StepRecord rec;
    rec.step = static_cast<int>(step);
    rec.slice_variables = slice.ring().names();
    const std::size_t m = slice.ring().size();
    if (slice.is_constant()) {
      rec.values.empty_curve = true;
      run.steps.push_back(std::move(rec));
      continue;
    }
    auto grad = gradient(slice);
    std::vector<QPolynomial> polar(grad.begin() + 1, grad.end());
    QIdeal polar_ideal(slice.ring_ptr(), polar);

    std::vector<int> rejected;
    std::optional<QIdeal> accepted;
    for (int attempt = 1; attempt <= config.retry_budget + 1; ++attempt) {
      std::vector<std::int64_t> beta;
      for (std::size_t j = 0; j < m; ++j) beta.push_back(sampler.next());
      QPolynomial h = integer_combination(QPolynomial(slice.ring_ptr()), grad, beta);
      rec.attempts = attempt;
      if (h.is_zero()) {
        rejected.push_back(static_cast<int>(m));
        continue;
      }
      QIdeal w = with_rabinowitsch(polar_ideal, h);
      int dim = ideal_dimension(buchberger(w, MonomialOrder::grevlex(w.ring().size())));
      if (dim <= 1) {
        rec.dimension = dim;
        rec.beta = std::move(beta);
        accepted = std::move(w);
        break;
      }
      rejected.push_back(dim);
    }
    if (!accepted) throw DimensionGuardExhausted(rejected);
    run.attempts += rec.attempts;
    run.dimension = std::max(run.dimension, rec.dimension);

    NonpropernessOptions options;
    options.execution = config.execution;
    options.tolerance = config.tolerance;
    for (std::size_t j = 0; j < m; ++j) options.coordinates.push_back(j + 1);
    rec.values = nonproperness_values(*accepted, embed(slice, accepted->ring_ptr()), options);
    product = product * rec.values.rho;
    vertical = vertical || rec.values.vertical_component;
    run.steps.push_back(std::move(rec));
  }
  run.values = make_value_set(product, config.tolerance);
  run.values.vertical_component = vertical;
  run.values.empty_curve =
      std::all_of(run.steps.begin(), run.steps.end(), [](const StepRecord& s) { return s.values.empty_curve; });
  run.millis = millis_since(start);
  return run;
}

DetectionReport assemble(const QPolynomial& f, Method method, const DetectorConfig& config,
                         std::vector<RunRecord> runs) {
  DetectionReport report;
  report.input = f.str();
  report.variables = f.ring().names();
  report.degree = f.total_degree();
  report.method = method;
  report.config = config;
  report.runs = std::move(runs);

  std::vector<UnivariatePolynomial> rhos;
  bool any_vertical = false;
  bool all_empty = true;
  bool converged = true;
  for (const auto& r : report.runs) {
    rhos.push_back(r.values.rho);
    any_vertical = any_vertical || r.values.vertical_component;
    all_empty = all_empty && r.values.empty_curve;
    converged = converged && r.values.approx_converged;
  }
  report.s_final = make_value_set(intersect_runs(rhos), config.tolerance);
  report.s_final.vertical_component = any_vertical && !report.s_final.empty();
  report.s_final.empty_curve = all_empty;
  report.critical = critical_values(f, config.tolerance);
  report.bounds = compute_bounds(report.degree, static_cast<int>(f.ring().size()), config.singular_components);

  for (const auto& r : report.s_final.approx_roots) {
    bool near_critical = std::any_of(report.critical.approx_roots.begin(), report.critical.approx_roots.end(),
                                     [&](const auto& c) { return std::abs(r - c) <= 1e-8; });
    if (!near_critical) report.approx_noncritical.push_back(r);
  }

  auto count = report.s_final.rho.degree();
  if (report.bounds.superpolar && count > *report.bounds.superpolar) {
    report.warnings.push_back("s_final has " + std::to_string(count) + " values, above the super-polar bound " +
                              std::to_string(*report.bounds.superpolar) +
                              "; vertical components may have inflated the set");
  }
  if (any_vertical) {
    report.warnings.push_back("at least one run kept values of a component on which f is constant");
  }
  if (!converged || !report.s_final.approx_converged || !report.critical.approx_converged) {
    report.warnings.push_back("complex root approximation did not converge; approximate roots are unverified");
  }
  return report;
}

}  // namespace

std::string to_string(Method m) { return m == Method::super_polar ? "super_polar" : "iterated_polar"; }

Method method_from_string(const std::string& s) {
  if (s == "super_polar") return Method::super_polar;
  if (s == "iterated_polar") return Method::iterated_polar;
  throw std::invalid_argument("unknown method " + s);
}

DimensionGuardExhausted::DimensionGuardExhausted(std::vector<int> dimensions)
    : std::runtime_error([&] {
        std::string msg = "dimension guard exhausted its retries; sampled dimensions:";
        for (int d : dimensions) msg += " " + std::to_string(d);
        return msg;
      }()),
      dimensions_(std::move(dimensions)) {}

CoefficientSampler::CoefficientSampler(std::uint64_t seed, std::int64_t bound) : engine_(seed), bound_(bound) {
  if (bound < 1) throw std::invalid_argument("coefficient bound must be positive");
}

std::int64_t CoefficientSampler::next_in(std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t u = engine_();
  while (u >= limit) u = engine_();
  return lo + static_cast<std::int64_t>(u % span);
}

std::int64_t CoefficientSampler::next() {
  // Uniform on [-bound, -1] ∪ [1, bound].
  std::int64_t r = next_in(0, 2 * bound_ - 1);
  return r < bound_ ? -(r + 1) : r - bound_ + 1;
}

std::uint64_t derive_run_seed(std::uint64_t seed, std::size_t run) {
  return splitmix64(seed + static_cast<std::uint64_t>(run) * 0x9E3779B97F4A7C15ULL);
}

SuperPolarCoefficients sample_super_polar(std::size_t n, CoefficientSampler& sampler, bool general) {
  SuperPolarCoefficients c;
  c.a.assign(n - 1, std::vector<std::int64_t>(n));
  c.b.assign(n - 1, std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n)));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c.a[i][j] = sampler.next();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) c.b[i][j][k] = sampler.next();
    }
  }
  if (general) {
    for (std::size_t j = 0; j < n; ++j) c.beta.push_back(sampler.next());
  }
  return c;
}

QIdeal super_polar_ideal(const QPolynomial& f, const SuperPolarCoefficients& coeffs) {
  const std::size_t n = f.ring().size();
  if (n < 2) throw std::invalid_argument("super-polar curve needs at least two variables");
  if (coeffs.a.size() != n - 1 || coeffs.b.size() != n - 1) {
    throw std::invalid_argument("super-polar coefficients do not match the ring");
  }
  const auto& ring = f.ring_ptr();
  auto grad = gradient(f);
  std::vector<QPolynomial> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (coeffs.a[i].size() != n || coeffs.b[i].size() != n) {
      throw std::invalid_argument("super-polar coefficients do not match the ring");
    }
    QPolynomial g(ring);
    for (std::size_t j = 0; j < n; ++j) {
      if (coeffs.b[i][j].size() != n) throw std::invalid_argument("super-polar coefficients do not match the ring");
      QPolynomial weight = QPolynomial::constant(ring, Rational(static_cast<long>(coeffs.a[i][j])));
      for (std::size_t k = 0; k < n; ++k) {
        if (coeffs.b[i][j][k] != 0) {
          weight += QPolynomial::variable(ring, k).scaled(Rational(static_cast<long>(coeffs.b[i][j][k])));
        }
      }
      g += weight * grad[j];
    }
    gens.push_back(std::move(g));
  }
  return QIdeal(ring, std::move(gens));
}

bool is_singular_locus_finite(const QPolynomial& f) {
  QIdeal grad(f.ring_ptr(), gradient(f));
  return ideal_dimension(buchberger(grad, MonomialOrder::grevlex(f.ring().size()))) <= 0;
}

ValueSet critical_values(const QPolynomial& f, double tolerance) {
  if (f.is_constant()) throw std::invalid_argument("critical values of a constant polynomial");
  const auto& ring = f.ring();
  auto extended = extend_ring(ring, ring.size(), ring.fresh_name("z"));
  std::size_t z = ring.size();
  std::vector<QPolynomial> gens;
  for (const auto& g : gradient(f)) gens.push_back(embed(g, extended));
  gens.push_back(embed(f, extended) - QPolynomial::variable(extended, z));
  std::vector<std::size_t> keep{z};
  auto gb = buchberger(QIdeal(extended, std::move(gens)), MonomialOrder::block_elimination(extended->size(), keep));
  if (gb.is_unit()) return make_value_set(UnivariatePolynomial{1}, tolerance);
  auto elim = elimination_ideal(gb, keep);
  if (elim.empty()) throw std::logic_error("critical values are not finite");
  return make_value_set(leading_coeff_in(elim.front(), 0, z), tolerance);
}

UnivariatePolynomial intersect_runs(std::span<const UnivariatePolynomial> rhos) {
  if (rhos.empty()) throw std::invalid_argument("intersection of no runs");
  UnivariatePolynomial g = rhos.front();
  for (const auto& r : rhos.subspan(1)) {
    if (r.is_zero()) throw std::invalid_argument("zero rho in run intersection");
    g = gcd_univar(g, r);
  }
  if (g.is_zero()) throw std::invalid_argument("zero rho in run intersection");
  return squarefree_part(g);
}

BoundsReport compute_bounds(int d, int n, std::span<const SingularComponent> sing) {
  BoundsReport b;
  if (n < 2 || d < 2) return b;
  b.nk = bound_nk(d, n, sing);
  b.superpolar = bound_superpolar(d, n, sing);
  if (d >= 3) b.kinf = bound_kinf(d, n, sing);
  return b;
}

DetectionReport run_super_polar(const QPolynomial& f, const DetectorConfig& config) {
  check_input(f);
  if (config.runs < 1) throw std::invalid_argument("runs must be positive");
  bool special = !config.force_general_case && is_singular_locus_finite(f);
  std::vector<RunRecord> runs(static_cast<std::size_t>(config.runs));
  for_each_index(runs.size(), config.execution, [&](std::size_t r) {
    runs[r] = super_polar_single(f, derive_run_seed(config.seed, r), special, config);
  });
  return assemble(f, Method::super_polar, config, std::move(runs));
}

DetectionReport iterated_polar_run(const QPolynomial& f, std::uint64_t seed, const DetectorConfig& config) {
  check_input(f);
  DetectorConfig single = config;
  single.runs = 1;
  single.seed = seed;
  std::vector<RunRecord> runs;
  runs.push_back(iterated_single(f, seed, config));
  return assemble(f, Method::iterated_polar, single, std::move(runs));
}

DetectionReport run_iterated_polar(const QPolynomial& f, const DetectorConfig& config) {
  check_input(f);
  if (config.runs < 1) throw std::invalid_argument("runs must be positive");
  std::vector<RunRecord> runs(static_cast<std::size_t>(config.runs));
  for_each_index(runs.size(), config.execution,
                 [&](std::size_t r) { runs[r] = iterated_single(f, derive_run_seed(config.seed, r), config); });
  return assemble(f, Method::iterated_polar, config, std::move(runs));
}

DetectionReport run_detection(const QPolynomial& f, Method method, const DetectorConfig& config) {
  return method == Method::super_polar ? run_super_polar(f, config) : run_iterated_polar(f, config);
}

}  // namespace nkinf
