#pragma once

// Non-properness set of a polynomial map restricted to an affine curve,
// read off from leading coefficients of lex elimination bases of the graph.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkinf/groebner.hpp"
#include "nkinf/parallel.hpp"
#include "nkinf/polynomial.hpp"
#include "nkinf/univariate.hpp"

namespace nkinf {

using QIdeal = Ideal<RationalField>;
using QGroebnerBasis = GroebnerBasis<RationalField>;

/// The input ideal has a component of dimension > 1.
class NotACurve : public std::runtime_error {
 public:
  explicit NotACurve(int dimension)
      : std::runtime_error("ideal is not a curve (dimension " + std::to_string(dimension) + ")"),
        dimension_(dimension) {}
  int dimension() const { return dimension_; }

 private:
  int dimension_;
};

/// Finite subset of C given by a squarefree rho over Q (rho = 1 is empty).
struct ValueSet {
  UnivariatePolynomial rho{1};
  std::vector<Rational> rational_roots;
  std::vector<std::complex<double>> approx_roots;
  bool approx_converged = true;
  bool vertical_component = false;
  bool empty_curve = false;

  bool empty() const { return rho.degree() <= 0; }
  std::vector<std::string> flags() const;
};

/// Canonicalizes rho to its squarefree part and fills in roots.
ValueSet make_value_set(const UnivariatePolynomial& rho, double tolerance = 1e-10);

struct GraphIdeal {
  QIdeal ideal;            // curve generators plus f - z
  std::size_t z_index;     // last variable of ideal's ring
};

GraphIdeal graph_ideal(const QIdeal& curve, const QPolynomial& f);

/// Elimination of everything but (x_var, z) from a graph ideal.
struct PlaneElimination {
  std::vector<QPolynomial> basis;  // lex GB of graph ∩ Q[x_var, z]
  int dimension = 0;               // dimension of the graph (= of the curve)
  bool unit = false;
};

struct ModularOptions {
  /// Cap on the primes tried before giving up with std::runtime_error.
  std::size_t max_primes = 128;
  /// Any Groebner basis of the graph ideal over Q. When set, a lift is
  /// accepted only if every element reduces to zero modulo it.
  const QGroebnerBasis* certificate = nullptr;
};

/// Computes the plane basis modulo primes below 2^62 and lifts it to Q by
/// CRT and rational reconstruction. Without a certificate the lift is
/// accepted once the image modulo one further prime agrees with it.
PlaneElimination eliminate_to_plane(const GraphIdeal& graph, std::size_t var, const ModularOptions& options = {});

/// Same result computed directly over Q; much slower on larger inputs.
PlaneElimination eliminate_to_plane_exact(const GraphIdeal& graph, std::size_t var);

/// Element of graph ∩ Q[x_var, z] of least positive degree in x_var, or the
/// pure z element when none involves x_var. Throws NotACurve if the
/// elimination ideal is zero or the graph has dimension > 1.
QPolynomial fiber_relation(const GraphIdeal& graph, std::size_t var);

/// Coefficient of the top power of `var` in p, as a polynomial in variable
/// `z_index`. When p does not involve `var` the whole of p is returned and
/// *vertical (if given) is set.
UnivariatePolynomial leading_coeff_in(const QPolynomial& p, std::size_t var, std::size_t z_index,
                                      bool* vertical = nullptr);

struct NonpropernessOptions {
  /// Variables counted as coordinates of the ambient affine space; empty
  /// means all of them. Auxiliary variables (e.g. a localization t) must be
  /// left out.
  std::vector<std::size_t> coordinates;
  Execution execution = Execution::parallel;
  double tolerance = 1e-10;
  /// Certified multi-modular plane eliminations; false runs them over Q.
  bool modular = true;
};

/// Values y such that f(x_l) -> y along some sequence x_l -> infinity on the
/// curve V(curve), as a superset when vertical components are present.
ValueSet nonproperness_values(const QIdeal& curve, const QPolynomial& f, const NonpropernessOptions& options = {});

}  // namespace nkinf
